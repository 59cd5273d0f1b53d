"""Generation probabilities, generator-count bounds, and crown-power cutoffs.

Exact probabilities are exhaustive counts (with optional first-coordinate
conjugacy-class reduction, a class function in each argument); Monte Carlo
estimates carry 99% Wilson intervals and are deterministic per seed.  The
generator-count search certifies lower bounds by exhaustion or quotient
theory, and upper bounds by explicit witnesses re-verified by order.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .cohomology import d_p_rank
from .group import PermGroup, StabilizerChain, derived_subgroup, quotient_group
from .limits import CapExceeded, ENUMERATION_CAP, EXHAUSTION_BUDGET, INDEX_CAP
from .perm import Permutation, PermError
from .simple_groups import aut_order_of_simple, identify_simple

WILSON_Z99 = 2.5758293035489004


class ProbEstimate:
    """A generation probability: exact rational or Monte Carlo point estimate."""

    def __init__(self, value, exact, trials=None, seed=None, lower=None, upper=None):
        self.value = value
        self.exact = exact
        self.trials = trials
        self.seed = seed
        self.lower = lower if lower is not None else value
        self.upper = upper if upper is not None else value

    def midpoint(self):
        return float(self.value)

    def as_dict(self):
        d = {"exact": self.exact, "value": str(self.value) if self.exact else self.value}
        if not self.exact:
            d.update(trials=self.trials, seed=self.seed,
                     wilson99=[self.lower, self.upper])
        return d

    def __repr__(self):
        if self.exact:
            return "ProbEstimate(%s exact)" % (self.value,)
        return "ProbEstimate(%.6f in [%.6f, %.6f], %d trials)" % (
            self.value, self.lower, self.upper, self.trials)


def wilson_interval(successes, trials, z=WILSON_Z99):
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * ((phat * (1 - phat) / trials + z * z / (4 * trials * trials)) ** 0.5) / denom
    return max(0.0, center - half), min(1.0, center + half)


def _generates_raw(degree, raw_tuples, target_order, work_cap=None):
    chain = StabilizerChain(degree, raw_tuples, known_order=target_order,
                            work_cap=work_cap)
    return chain.order() == target_order


def is_generating(G: PermGroup, perms) -> bool:
    for p in perms:
        if not G.contains(p):
            raise PermError("tuple element %s outside the group" % p)
    if G.order() == 1:
        return True
    return _generates_raw(G.degree, [p.images for p in perms], G.order())


def exact_gen_probability(G: PermGroup, d: int, budget=EXHAUSTION_BUDGET,
                          method="classes") -> ProbEstimate:
    """Exact probability that d uniform elements generate G.

    method="classes" reduces the first coordinate to conjugacy class
    representatives (the count is a class function in each coordinate);
    method="naive" enumerates all |G|^d tuples.  Preconditions: |G|^d within
    the exhaustion budget.
    """
    order = G.order()
    if order ** d > budget:
        raise CapExceeded("|G|^d = %d exceeds the exhaustion budget" % order ** d)
    if order == 1:
        return ProbEstimate(Fraction(1), True)
    elems = G.elements()
    raw = [p.images for p in elems]
    degree = G.degree
    if d == 0:
        return ProbEstimate(Fraction(0), True)
    if method == "classes" and d >= 1:
        classes = G.conjugacy_classes()
        firsts = [(cls[0].images, len(cls)) for cls in classes]
    else:
        firsts = [(t, 1) for t in raw]
    count = 0
    if d == 1:
        for rep, weight in firsts:
            if _generates_raw(degree, [rep], order):
                count += weight
    else:
        def completions(prefix, remaining):
            if remaining == 1:
                return sum(1 for last in raw
                           if _generates_raw(degree, list(prefix) + [last], order))
            return sum(completions(prefix + (nxt,), remaining - 1) for nxt in raw)

        for rep, weight in firsts:
            count += weight * completions((rep,), d - 1)
    return ProbEstimate(Fraction(count, order ** d), True)


_memo_tables = {}


def mc_gen_probability(G: PermGroup, d: int, trials: int, seed: int) -> ProbEstimate:
    """Monte Carlo generation probability with a 99% Wilson interval.

    Sampling is exactly uniform: for enumerable groups, uniform element
    indices; otherwise products of uniform transversal representatives.
    Deterministic per (G, d, trials, seed).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    order = G.order()
    if order == 1:
        return ProbEstimate(1.0, False, trials=trials, seed=seed, lower=1.0, upper=1.0)
    rng = Random("mc:%s:%s:%s" % (seed, d, order))
    hits = 0
    if order <= 5000:
        key = id(G)
        elems, memo = _memo_tables.get(key, (None, None))
        if elems is None:
            elems = [p.images for p in G.elements()]
            memo = {}
            _memo_tables[key] = (elems, memo)
        n = len(elems)
        degree = G.degree
        for _ in range(trials):
            idx = frozenset(rng.randrange(n) for _ in range(d))
            got = memo.get(idx)
            if got is None:
                got = _generates_raw(degree, [elems[i] for i in idx], order)
                memo[idx] = got
            hits += got
    else:
        chain = G.chain()
        for _ in range(trials):
            tup = [chain.random_element(rng) for _ in range(d)]
            hits += _generates_raw(G.degree, tup, order)
    lo, hi = wilson_interval(hits, trials)
    return ProbEstimate(hits / trials, False, trials=trials, seed=seed,
                        lower=lo, upper=hi)


def gen_probability(G: PermGroup, d: int, budget=EXHAUSTION_BUDGET,
                    mc_trials=100_000, seed=0) -> ProbEstimate:
    """Exact when affordable, Monte Carlo fallback otherwise."""
    try:
        return exact_gen_probability(G, d, budget=budget)
    except CapExceeded:
        return mc_gen_probability(G, d, mc_trials, seed)


# -- generator-count bounds ------------------------------------------------


class DBounds:
    def __init__(self, lower, upper, witness, notes):
        self.lower = lower
        self.upper = upper
        self.exact = lower == upper
        self.witness = witness
        self.notes = notes

    def as_dict(self):
        return {"lower": self.lower, "upper": self.upper, "exact": self.exact,
                "notes": self.notes}

    def __repr__(self):
        return "DBounds(%d..%d%s)" % (self.lower, self.upper,
                                      " exact" if self.exact else "")


def _is_abelian(G):
    return all((a * b) == (b * a) for i, a in enumerate(G.generators)
               for b in G.generators[i + 1:])


def _abelianization_lower(G, notes):
    best = 0
    try:
        Gp = derived_subgroup(G)
        index = G.order() // Gp.order()
        if index > INDEX_CAP:
            raise CapExceeded("abelianization too large")
        n = index
        p = 2
        primes = []
        while n > 1:
            if n % p == 0:
                primes.append(p)
                while n % p == 0:
                    n //= p
            p += 1 if p == 2 else 2
        for p in primes:
            best = max(best, d_p_rank(G, p))
        if primes:
            notes.append("abelianization rank lower bound %d" % best)
    except CapExceeded:
        notes.append("abelianization rank unavailable (cap)")
    return best


def _exhaustive_disproof(G, k, cap=400_000):
    """True if no k-tuple generates (full enumeration); None when too big."""
    order = G.order()
    if order > 5000 or order ** k > cap:
        return None
    elems = [p.images for p in G.elements()]
    degree = G.degree
    def rec(prefix, remaining):
        if remaining == 0:
            return _generates_raw(degree, list(prefix), order)
        for e in elems:
            if rec(prefix + (e,), remaining - 1):
                return True
        return False
    return not rec((), k)


def _random_tuple_search(G, k, rng, trials, state):
    order = G.order()
    chain = G.chain()
    for _ in range(trials):
        if state["spent"] >= state["budget"]:
            return None
        state["spent"] += 1
        tup = [chain.random_element(rng) for _ in range(k)]
        if _generates_raw(G.degree, tup, order):
            return [Permutation(t) for t in tup]
    return None


def _block_lifting_search(G, k, rng, state):
    """Stage-lift a tuple across the domain orbits of G.

    Corrections at each stage come from the pointwise stabilizer of the
    already-settled orbits, so earlier restrictions are preserved; each stage
    is accepted when the restriction generates the restricted image.  The
    final stage is a full generation test, so the witness is always honest.
    """
    orbits = G.orbits()
    if len(orbits) < 2:
        return None
    points = []
    prefixes = []
    for orb in orbits:
        points.extend(p - 1 for p in orb)
        prefixes.append(list(points))
    chain = G.chain_with_base(points, known_order=G.order())
    # restriction images and their orders, one per prefix
    restricted = []
    for pref in prefixes:
        pos = {pt: i for i, pt in enumerate(pref)}
        def restrict(raw, pos=pos, pref=pref):
            return tuple(pos[raw[pt]] for pt in pref)
        gens = [restrict(g.images) for g in G.generators]
        order = StabilizerChain(len(pref), gens).order()
        restricted.append((pref, pos, restrict, order))
    # suffix level index per prefix: first level whose base lies outside it
    suffix_start = []
    for pref in prefixes:
        inside = set(pref)
        idx = 0
        while idx < len(chain.levels) and chain.levels[idx].base in inside:
            idx += 1
        suffix_start.append(idx)

    def stabilizer_sample(stage):
        acc = None
        for lvl in reversed(chain.levels[suffix_start[stage]:]):
            pt = lvl.points[rng.randrange(len(lvl.points))]
            t = lvl.transversal[pt]
            acc = t if acc is None else tuple(t[x] for x in acc)
        if acc is None:
            return tuple(range(G.degree))
        return tuple(acc[: G.degree])

    max_restarts = 40
    per_stage_tries = 80
    for _ in range(max_restarts):
        if state["spent"] >= state["budget"]:
            return None
        # stage 0: random tuple generating the first restriction
        pref, pos, restrict, order0 = restricted[0]
        tup = None
        for _ in range(per_stage_tries):
            state["spent"] += 1
            cand = [chain.random_element(rng) for _ in range(k)]
            if _generates_raw(len(pref), [restrict(c) for c in cand], order0):
                tup = cand
                break
        if tup is None:
            continue
        ok = True
        for stage in range(1, len(prefixes)):
            pref, pos, restrict, target = restricted[stage]
            advanced = None
            for _ in range(per_stage_tries):
                if state["spent"] >= state["budget"]:
                    return None
                state["spent"] += 1
                cand = [_compose(tup[j], stabilizer_sample(stage - 1))
                        for j in range(k)]
                if _generates_raw(len(pref), [restrict(c) for c in cand], target):
                    advanced = cand
                    break
            if advanced is None:
                ok = False
                break
            tup = advanced
        if ok:
            witness = [Permutation(t) for t in tup]
            if _generates_raw(G.degree, [w.images for w in witness], G.order()):
                return witness
    return None


def _compose(a, b):
    return tuple(b[x] for x in a)


def d_bounds(G: PermGroup, seed=0, budget=100_000, use_crowns=True) -> DBounds:
    """Bounds on the minimal number of generators.

    Lower bounds are theorems (p-ranks of the abelianization, non-cyclicity
    of nonabelian groups, exhaustive disproof at small sizes, h-values of
    abelian crowns); the upper bound is a witness found by seeded search and
    re-verified by order.
    """
    notes = []
    if G.order() == 1:
        return DBounds(0, 0, [], ["trivial group"])
    rng = Random("dbounds:%s:%s" % (seed, G.order()))
    lower = 1
    if not _is_abelian(G):
        lower = 2
        notes.append("nonabelian, hence not cyclic")
    lower = max(lower, _abelianization_lower(G, notes))
    state = {"spent": 0, "budget": budget}
    crowns_tried = not use_crowns
    k = lower
    while k <= lower + 64:
        disproof = _exhaustive_disproof(G, k)
        if disproof is True:
            notes.append("no generating %d-tuple exists (exhaustive)" % k)
            lower = k + 1
            k += 1
            continue
        trials = min(64 << (k - lower), max(1, state["budget"] - state["spent"]))
        witness = _random_tuple_search(G, k, rng, trials, state)
        if witness is None:
            witness = _block_lifting_search(G, k, rng, state)
        if witness is not None:
            notes.append("witness %d-tuple found after %d attempts"
                         % (k, state["spent"]))
            return DBounds(lower, k, witness, notes)
        if not crowns_tried and G.order() <= 20000:
            crowns_tried = True
            try:
                from .cohomology import h_value
                from .crowns import crown_decomposition
                _, crowns = crown_decomposition(G, seed=seed)
                best = lower
                for c in crowns:
                    if c.representative.abelian():
                        best = max(best, h_value(G, c.representative).h)
                if best > lower:
                    notes.append("crown h-value lower bound %d" % best)
                    lower = best
                    k = max(k, lower)
                    continue
            except CapExceeded:
                notes.append("crown bounds unavailable (cap)")
        if state["spent"] >= state["budget"]:
            break
        k += 1
    upper = max(len(G.generators), lower)
    notes.append("search budget exhausted; generator list gives upper bound %d" % upper)
    return DBounds(lower, upper, list(G.generators), notes)


# -- crown-power cutoff ------------------------------------------------------


class TheoremFCutoff:
    """Largest t with d(L_t) <= d, from the probability-ratio bound."""

    def __init__(self, exact, t_max=None, t_range=None, details=None):
        self.exact = exact
        self.t_max = t_max
        self.t_range = t_range
        self.details = details or {}

    def as_dict(self):
        d = dict(self.details)
        d["exact"] = self.exact
        if self.exact:
            d["t_max"] = self.t_max
        else:
            d["t_range"] = list(self.t_range)
        return d

    def __repr__(self):
        if self.exact:
            return "TheoremFCutoff(t_max=%d)" % self.t_max
        return "TheoremFCutoff(t in %s..%s)" % self.t_range


def theorem_f_max_t(L: PermGroup, N: PermGroup, d: int, caut=None,
                    budget=EXHAUSTION_BUDGET, mc_trials=100_000, seed=0,
                    caut_is_upper_bound=False, check_socle=True) -> TheoremFCutoff:
    """floor(P_L(d)/P_{L/N}(d) * |N|^d / caut) for nonabelian socle N.

    caut defaults to |Aut L| from the simple-group table when N = L is
    simple.  With Monte Carlo probabilities the conservative pair of floors
    at the interval ends is returned.  When caut is only an upper bound the
    cutoff is valid for certifying d(L_t) <= d but not the converse.
    """
    from .group import same_subgroup
    if check_socle:
        from .constructions import verify_socle
        verify_socle(L, N)
    if _is_abelian(N):
        raise ValueError("the cutoff formula needs a nonabelian socle")
    details = {"d": d}
    if caut is None:
        if not same_subgroup(N, L):
            raise ValueError("caut must be supplied unless N = L is simple")
        caut = aut_order_of_simple(L)
        details["caut_source"] = "simple-group table"
    details["caut"] = caut
    details["caut_is_upper_bound"] = bool(caut_is_upper_bound)

    db = d_bounds(L, seed=seed)
    if db.lower > d:
        raise ValueError("d = %d is below d(L) >= %d" % (d, db.lower))
    if not db.exact and db.upper > d:
        details["d_at_least_dL"] = "conditional (d(L) in %d..%d)" % (db.lower, db.upper)
    p_top = gen_probability(L, d, budget=budget, mc_trials=mc_trials, seed=seed)
    if same_subgroup(N, L):
        p_quot = ProbEstimate(Fraction(1), True)
    else:
        Q, _ = quotient_group(L, N)
        p_quot = gen_probability(Q, d, budget=budget, mc_trials=mc_trials, seed=seed)
    details["P_L"] = p_top.as_dict()
    details["P_quotient"] = p_quot.as_dict()
    scale = Fraction(N.order() ** d, caut)
    if p_top.exact and p_quot.exact:
        t = int(p_top.value / p_quot.value * scale)
        return TheoremFCutoff(True, t_max=t, details=details)
    lo = Fraction(p_top.lower) / Fraction(p_quot.upper) * scale
    hi = Fraction(p_top.upper) / Fraction(p_quot.lower) * scale
    return TheoremFCutoff(False, t_range=(int(lo), int(hi)), details=details)


# -- wreath inequalities -----------------------------------------------------


def regular_representation(G: PermGroup) -> PermGroup:
    """G acting regularly on its own cosets of the trivial subgroup."""
    from .group import coset_action
    if G.order() == 1:
        return PermGroup(1, [])
    triv = PermGroup(G.degree, [])
    return coset_action(G, triv).image_group()


def abelianization_group(G: PermGroup) -> PermGroup:
    Q, _ = quotient_group(G, derived_subgroup(G))
    return Q


def wreath_upper_bound(H: PermGroup, K: PermGroup, k0: int, seed=0, budget=100_000):
    """The bound max(d(H/H' wr K), ceil(d(H)/n) + 2); applicable once the
    top degree n satisfies 60^n >= k0."""
    from .constructions import wreath_product
    n = K.degree
    applicable = 60 ** n >= k0
    dH = d_bounds(H, seed=seed, budget=budget)
    Hab = abelianization_group(H)
    top = wreath_product(Hab, K)
    dTop = d_bounds(top, seed=seed, budget=budget)
    ceil_term_lo = -(-dH.lower // n) + 2
    ceil_term_hi = -(-dH.upper // n) + 2
    return {
        "applicable": applicable,
        "k0": k0,
        "n": n,
        "d_H": dH.as_dict(),
        "d_abelian_top_wreath": dTop.as_dict(),
        "bound_lower": max(dTop.lower, ceil_term_lo),
        "bound": max(dTop.upper, ceil_term_hi),
        "exact": dH.exact and dTop.exact,
    }


def _verdict(holds_if, violated_if):
    if holds_if:
        return "holds"
    if violated_if:
        return "violated"
    return "undecided"


def necessary_condition_check(H: PermGroup, K: PermGroup, seed=0, budget=100_000):
    """The two quotient-driven necessary inequalities for wreath generation:
    d(H) <= n * d(H wr K), and d(H wr K) >= d(H/H' x K/K')."""
    from .constructions import direct_product, wreath_product
    if not K.is_transitive():
        raise PermError("top group must be transitive")
    n = K.degree
    W = wreath_product(H, K)
    dW = d_bounds(W, seed=seed, budget=budget)
    dH = d_bounds(H, seed=seed, budget=budget)
    Hab = abelianization_group(H)
    Kab = abelianization_group(K)
    prod = direct_product(Hab, Kab)
    dProd = d_bounds(prod, seed=seed, budget=budget)
    rec = {
        "n": n,
        "d_H": dH.as_dict(),
        "d_W": dW.as_dict(),
        "d_abelianization_product": dProd.as_dict(),
        "subgroup_bound": {
            "statement": "d(H) <= n * d(H wr K)",
            "verdict": _verdict(dH.upper <= n * dW.lower, dH.lower > n * dW.upper),
        },
        "quotient_bound": {
            "statement": "d(H wr K) >= d(H/H' x K/K')",
            "verdict": _verdict(dW.lower >= dProd.upper, dW.upper < dProd.lower),
        },
    }
    return rec

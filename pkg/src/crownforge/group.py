"""Permutation groups via deterministic Schreier-Sims stabilizer chains.

Orders are exact unbounded integers (product of fundamental orbit lengths),
membership is sifting, and random elements are products of independently
uniform transversal representatives, so sampling is exactly uniform.

A PermGroup is immutable after construction; its chain is built once behind a
lock and then shared freely between threads.
"""

from __future__ import annotations

import threading
from random import Random

from .limits import CapExceeded, INDEX_CAP, ENUMERATION_CAP, max_degree
from .perm import Permutation, PermError, _identity, _inv, _mul


class _EarlyStop(Exception):
    pass


class _Level:
    __slots__ = ("base", "gens", "transversal", "inverse", "points", "_processed")

    def __init__(self, base, ident):
        self.base = base
        self.gens = []  # strong generators first placed at this level
        self.transversal = {base: ident}
        self.inverse = {base: ident}
        self.points = [base]
        self._processed = set()  # (point, generator) Schreier pairs already sifted


class StabilizerChain:
    """Base and strong generating set with explicit transversals.

    base_hint, when given, is a list of 0-based points preferred (in order) as
    base points; used to force e.g. "target block first" chains for kernels.
    known_order stops the construction as soon as the transversal product
    reaches it (sound: transversal products are distinct group elements).
    work_cap bounds the number of elementary sift steps and raises CapExceeded
    beyond it; only heuristic callers set it.

    For degrees up to 256 permutations are carried internally as 256-byte
    translation tables (identity beyond the degree) so that composition runs
    through bytes.translate; callers pass and receive degree-length
    sequences.
    """

    def __init__(self, degree, raw_gens, base_hint=None, known_order=None, work_cap=None):
        self.degree = degree
        self.levels = []
        self._bytes = degree <= 256
        self._ident = bytes(range(256)) if self._bytes else _identity(degree)
        self._hint = list(base_hint) if base_hint else []
        self._known_order = known_order
        self._work_cap = work_cap
        self._work = 0
        self._stopped = False
        # hinted base points are seeded as (initially trivial) levels up front,
        # so the pointwise stabilizer of the hint set is always a chain suffix
        for h in self._hint:
            self.levels.append(_Level(h, self._ident))
        try:
            for g in raw_gens:
                self._add(self._pack(g))
        except _EarlyStop:
            self._stopped = True
        self._compact()

    def _pack(self, p):
        if not self._bytes:
            return p if type(p) is tuple else tuple(p)
        if type(p) is bytes and len(p) == 256:
            return p
        b = bytes(p)
        return b + self._ident[len(b):]

    def _out(self, p):
        return p[: self.degree] if self._bytes else p

    def _mul(self, a, b):
        if type(a) is bytes:
            return a.translate(b)
        return tuple(b[x] for x in a)

    def _inv(self, a):
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return bytes(out) if type(a) is bytes else tuple(out)

    def extend(self, raw):
        """Add one more generator (unhinted chains only)."""
        if self._stopped:
            return
        try:
            self._add(self._pack(raw))
        except _EarlyStop:
            self._stopped = True

    # -- queries ---------------------------------------------------------

    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl.transversal)
        return n

    def base(self):
        return [lvl.base for lvl in self.levels]

    def strong_generators(self, from_level=0):
        out = []
        for lvl in self.levels[from_level:]:
            out.extend(self._out(g) for g in lvl.gens)
        return out

    def _strong_packed(self, from_level=0):
        out = []
        for lvl in self.levels[from_level:]:
            out.extend(lvl.gens)
        return out

    def _sift_packed(self, p, start=0):
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            img = p[lvl.base]
            if img == lvl.base:
                continue
            ti = lvl.inverse.get(img)
            if ti is None:
                return p, i
            p = self._mul(p, ti)
            self._tick(len(p))
        return p, len(self.levels)

    def sift(self, p, start=0):
        """Strip p through the chain from the given level; (residue, stop level)."""
        res, i = self._sift_packed(self._pack(p), start)
        return self._out(res), i

    def contains(self, p) -> bool:
        res, _ = self._sift_packed(self._pack(p))
        return res == self._ident

    def random_element(self, rng: Random):
        """Exactly uniform: product of uniform transversal reps, deepest first."""
        acc = self._ident
        for lvl in reversed(self.levels):
            pt = lvl.points[rng.randrange(len(lvl.points))]
            acc = self._mul(acc, lvl.transversal[pt])
        return self._out(acc)

    def min_coset_rep(self, x):
        """Canonical representative of the right coset (this group) * x.

        Greedily minimizes the images of the base points; unique because coset
        elements are determined by their base images.
        """
        x = self._pack(x)
        for lvl in self.levels:
            best = min(lvl.points, key=lambda o: x[o])
            if best != lvl.base:
                x = self._mul(lvl.transversal[best], x)
        return self._out(x)

    def element_with_base_images(self, required):
        """The element mapping base points per `required` (dict point->image).

        Returns None when no element matches.  All keys must be base points of
        a prefix of the chain (deeper prescribed points than unprescribed ones
        are not supported).
        """
        req = dict(required)
        ts = []
        for lvl in self.levels:
            if not req:
                break
            if lvl.base not in req:
                return None
            target_pt = req.pop(lvl.base)
            t = lvl.transversal.get(target_pt)
            if t is None:
                return None
            ti = lvl.inverse[target_pt]
            req = {b: ti[v] for b, v in req.items()}
            ts.append(t)
        if req:
            return None
        acc = self._ident
        for t in reversed(ts):
            acc = self._mul(acc, t)
        return self._out(acc)

    # -- construction ----------------------------------------------------

    def _tick(self, cost):
        if self._work_cap is not None:
            self._work += cost
            if self._work > self._work_cap:
                raise CapExceeded("stabilizer chain work cap exceeded")

    def _add(self, p):
        res, i = self._sift_packed(p)
        if res == self._ident:
            return
        self._place(res, i)
        for k in range(i, -1, -1):
            self._complete_level(k)

    def _place(self, g, i):
        """Record g as a strong generator at level i (g fixes earlier bases)."""
        if i == len(self.levels):
            base = min(k for k, x in enumerate(g) if x != k)
            self.levels.append(_Level(base, self._ident))
        self.levels[i].gens.append(g)
        if self._known_order is not None and self.order() >= self._known_order:
            raise _EarlyStop

    def _complete_level(self, i):
        """Process Schreier generators of level i until all sift to identity.

        The group at level i is generated by the strong generators of levels
        >= i, so both the orbit and the Schreier pairs range over all of them.
        Pairs (base point, deeper-level generator) are the generator itself and
        are handled when the deeper level is completed, so they are skipped.
        """
        lvl = self.levels[i]
        own = lvl.gens
        while True:
            gens = self._strong_packed(i)
            if not gens:
                return
            self._extend_orbit(i, gens)
            progressed = False
            for pt in lvl.points:
                t = lvl.transversal[pt]
                for s in gens:
                    if pt == lvl.base and s not in own:
                        continue
                    if (pt, s) in lvl._processed:
                        continue
                    lvl._processed.add((pt, s))
                    u = self._mul(t, s) if t is not self._ident else s
                    back = lvl.inverse[u[lvl.base]]
                    if back is not self._ident:
                        u = self._mul(u, back)
                    self._tick(2 * len(u))
                    res, j = self._sift_packed(u, i + 1)
                    if res != self._ident:
                        self._place(res, j)
                        for k in range(j, i, -1):
                            self._complete_level(k)
                        progressed = True
                        break
                if progressed:
                    break
            if not progressed:
                return

    def _compact(self):
        # levels that never acquired a generator have a one-point orbit and
        # contribute nothing to the decomposition; drop them
        self.levels = [lvl for lvl in self.levels if len(lvl.points) > 1]

    def _extend_orbit(self, i, gens):
        lvl = self.levels[i]
        k = 0
        while k < len(lvl.points):
            pt = lvl.points[k]
            k += 1
            t = lvl.transversal[pt]
            for s in gens:
                img = s[pt]
                if img not in lvl.transversal:
                    u = self._mul(t, s)
                    lvl.transversal[img] = u
                    lvl.inverse[img] = self._inv(u)
                    self._tick(self.degree)
                    lvl.points.append(img)


class PermGroup:
    """A finite permutation group on {1..degree} given by generators."""

    def __init__(self, degree, generators=(), name=None, _known_order=None):
        if degree < 1 or degree > max_degree():
            raise ValueError("degree %d outside 1..%d" % (degree, max_degree()))
        gens = []
        seen = set()
        for g in generators:
            if isinstance(g, str):
                g = Permutation.parse(g, degree)
            if g.degree != degree:
                raise PermError("generator degree %d != group degree %d" % (g.degree, degree))
            if not g.is_identity() and g.images not in seen:
                seen.add(g.images)
                gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self._known_order = _known_order
        self._chain = None
        self._lock = threading.Lock()
        self._elements = None

    # -- chain / order / membership --------------------------------------

    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabilizerChain(
                        self.degree,
                        [g.images for g in self.generators],
                        known_order=self._known_order,
                    )
        return self._chain

    def chain_with_base(self, points_0based, known_order=None) -> StabilizerChain:
        """A fresh chain preferring the given 0-based base points; not cached."""
        return StabilizerChain(
            self.degree,
            [g.images for g in self.generators],
            base_hint=points_0based,
            known_order=known_order,
        )

    def order(self) -> int:
        return self.chain().order()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise PermError("degree mismatch: %d vs %d" % (p.degree, self.degree))
        return self.chain().contains(p.images)

    def is_trivial(self) -> bool:
        return not self.generators

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __repr__(self):
        label = self.name or "PermGroup"
        return "<%s deg=%d gens=%d>" % (label, self.degree, len(self.generators))

    # -- orbits ----------------------------------------------------------

    def orbits(self):
        """Orbits on 1..degree as sorted lists (1-based)."""
        seen = [False] * self.degree
        out = []
        raw = [g.images for g in self.generators]
        for start in range(self.degree):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = True
            k = 0
            while k < len(orbit):
                pt = orbit[k]
                k += 1
                for g in raw:
                    img = g[pt]
                    if not seen[img]:
                        seen[img] = True
                        orbit.append(img)
            out.append(sorted(pt + 1 for pt in orbit))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    # -- elements / sampling ----------------------------------------------

    def elements(self, cap=ENUMERATION_CAP):
        """All elements by breadth-first closure (independent of the chain)."""
        if self._elements is not None:
            return self._elements
        ident = _identity(self.degree)
        seen = {ident}
        queue = [ident]
        raw = [g.images for g in self.generators]
        k = 0
        while k < len(queue):
            x = queue[k]
            k += 1
            for g in raw:
                y = _mul(x, g)
                if y not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded("enumeration cap %d exceeded" % cap)
                    seen.add(y)
                    queue.append(y)
        elems = [Permutation(t) for t in queue]
        self._elements = elems
        return elems

    def random_element(self, rng: Random) -> Permutation:
        return Permutation(self.chain().random_element(rng))

    # -- derived structures ------------------------------------------------

    def subgroup(self, perms, name=None) -> "PermGroup":
        for p in perms:
            if not self.contains(p):
                raise PermError("element %s outside the group" % p)
        return PermGroup(self.degree, perms, name=name)

    def conjugacy_classes(self, cap=ENUMERATION_CAP):
        """Conjugacy classes as lists of Permutation; identity class first."""
        elems = self.elements(cap)
        raw_gens = [g.images for g in self.generators]
        index = {p.images: i for i, p in enumerate(elems)}
        assigned = [None] * len(elems)
        classes = []
        for i, p in enumerate(elems):
            if assigned[i] is not None:
                continue
            cls = [i]
            assigned[i] = len(classes)
            k = 0
            while k < len(cls):
                x = elems[cls[k]].images
                k += 1
                for g in raw_gens:
                    y = _mul(_mul(_inv(g), x), g)
                    j = index[y]
                    if assigned[j] is None:
                        assigned[j] = len(classes)
                        cls.append(j)
            classes.append([elems[j] for j in cls])
        return classes


def uniform_random(G: PermGroup, seed: int) -> Permutation:
    """Deterministic exactly-uniform sample; stream index 0 of the seed."""
    return sample_stream(G, seed, 0)


def sample_stream(G: PermGroup, master_seed, k: int) -> Permutation:
    """k-th sample of the stream derived from master_seed.

    Each index gets its own counter-derived RNG (string seeding is stable
    across processes), so parallel sampling is order-independent.
    """
    rng = Random("%s:%d" % (master_seed, k))
    return G.random_element(rng)


def group_order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, p: Permutation) -> bool:
    return G.contains(p)


def orbit_and_transitivity(G: PermGroup):
    orbits = G.orbits()
    return orbits, len(orbits) == 1


def normal_closure(G: PermGroup, seeds) -> PermGroup:
    """Smallest normal subgroup of G containing the given elements."""
    gens = []
    for s in seeds:
        if not G.contains(s):
            raise PermError("closure seed %s outside the group" % s)
        if not s.is_identity():
            gens.append(s.images)
    ambient = [g.images for g in G.generators]
    closure_gens = []
    chain = StabilizerChain(G.degree, [])
    work = list(gens)
    while work:
        x = work.pop()
        if chain.contains(x):
            continue
        closure_gens.append(tuple(x))
        chain.extend(x)
        for g in ambient:
            work.append(_mul(_mul(_inv(g), x), g))
    return PermGroup(G.degree, [Permutation(t) for t in closure_gens],
                     _known_order=chain.order())


def derived_subgroup(G: PermGroup) -> PermGroup:
    comms = []
    for a in G.generators:
        for b in G.generators:
            comms.append(a.inverse() * b.inverse() * a * b)
    return normal_closure(G, comms)


def is_normal(G: PermGroup, N: PermGroup) -> bool:
    for n in N.generators:
        if not G.contains(n):
            return False
        for g in G.generators:
            if not N.contains(n.conjugate(g)):
                return False
    return True


def is_subgroup(G: PermGroup, H: PermGroup) -> bool:
    return all(G.contains(h) for h in H.generators)


def same_subgroup(A: PermGroup, B: PermGroup) -> bool:
    return A.order() == B.order() and is_subgroup(B, A)


# -- homomorphisms ------------------------------------------------------


class HomomorphismError(ValueError):
    pass


class Homomorphism:
    """A homomorphism between permutation groups, given on generators.

    Everything is evaluated through the "graph group" on the disjoint union
    of the two domains: its order equals |source| exactly when the generator
    images extend to a homomorphism, its source-block-first chain evaluates
    the map, and its target-block-first chain yields the kernel.
    """

    def __init__(self, source: PermGroup, target: PermGroup, images, check=False):
        if len(images) != len(source.generators):
            raise HomomorphismError("need one image per source generator")
        for im in images:
            if im.degree != target.degree:
                raise HomomorphismError("image degree mismatch")
        self.source = source
        self.target = target
        self.images = tuple(images)
        self._src_chain = None
        self._tgt_chain = None
        self._valid = None
        self._lock = threading.Lock()
        if check and not self.is_homomorphism():
            raise HomomorphismError("generator images do not define a homomorphism")

    # combined permutations act on source points 0..n-1, target points n..n+m-1
    def _combined_gens(self):
        n, m = self.source.degree, self.target.degree
        out = []
        for g, im in zip(self.source.generators, self.images):
            out.append(g.images + tuple(n + x for x in im.images))
        return out

    def _source_first(self):
        if self._src_chain is None:
            with self._lock:
                if self._src_chain is None:
                    n = self.source.degree
                    self._src_chain = StabilizerChain(
                        n + self.target.degree, self._combined_gens(),
                        base_hint=list(range(n)))
        return self._src_chain

    def _target_first(self):
        if self._tgt_chain is None:
            with self._lock:
                if self._tgt_chain is None:
                    n = self.source.degree
                    self._tgt_chain = StabilizerChain(
                        n + self.target.degree, self._combined_gens(),
                        base_hint=list(range(n, n + self.target.degree)))
        return self._tgt_chain

    def is_homomorphism(self) -> bool:
        if self._valid is None:
            self._valid = self._source_first().order() == self.source.order()
        return self._valid

    def __call__(self, p: Permutation) -> Permutation:
        if not self.is_homomorphism():
            raise HomomorphismError("generator images do not define a homomorphism")
        chain = self._source_first()
        n = self.source.degree
        req = {}
        for lvl in chain.levels:
            if lvl.base < n:
                req[lvl.base] = p.images[lvl.base]
        combined = chain.element_with_base_images(req)
        if combined is None:
            raise PermError("element outside the source group")
        return Permutation(tuple(x - n for x in combined[n:]))

    def kernel(self) -> PermGroup:
        chain = self._target_first()
        n = self.source.degree
        split = 0
        while split < len(chain.levels) and chain.levels[split].base >= n:
            split += 1
        gens = [Permutation(t[:n]) for t in chain.strong_generators(split)]
        ker = PermGroup(self.source.degree, gens)
        if self.is_homomorphism():
            assert ker.order() * self.image_order() == self.source.order()
        return ker

    def image_group(self) -> PermGroup:
        return PermGroup(self.target.degree, self.images)

    def image_order(self) -> int:
        return self.image_group().order()

    def lift(self, t: Permutation) -> Permutation:
        """Some preimage of t; raises if t is not in the image."""
        chain = self._target_first()
        n = self.source.degree
        req = {}
        for lvl in chain.levels:
            if lvl.base >= n:
                req[lvl.base] = n + t.images[lvl.base - n]
        combined = chain.element_with_base_images(req)
        if combined is None:
            raise PermError("element outside the image")
        return Permutation(combined[:n])

    def preimage(self, T: PermGroup) -> PermGroup:
        """Full preimage of a subgroup of the image."""
        gens = list(self.kernel().generators)
        gens.extend(self.lift(t) for t in T.generators)
        return PermGroup(self.source.degree, gens)


def kernel(f: Homomorphism) -> PermGroup:
    return f.kernel()


def coset_action(G: PermGroup, H: PermGroup, index_cap=INDEX_CAP) -> Homomorphism:
    """Action of G on the right cosets of H <= G, as a Homomorphism.

    Cosets are identified by canonical (lexicographically minimal-image)
    representatives computed against H's stabilizer chain.  The coset of H
    itself has index 0; hom.coset_reps[i] is a representative of coset i.
    """
    for h in H.generators:
        if not G.contains(h):
            raise PermError("H is not a subgroup of G")
    hchain = H.chain()
    ident = _identity(G.degree)
    start = hchain.min_coset_rep(ident)
    index = {start: 0}
    reps = [start]
    raw_gens = [g.images for g in G.generators]
    images = [[] for _ in raw_gens]
    k = 0
    while k < len(reps):
        rep = reps[k]
        k += 1
        for gi, g in enumerate(raw_gens):
            nxt = hchain.min_coset_rep(_mul(rep, g))
            j = index.get(nxt)
            if j is None:
                j = len(reps)
                if j >= index_cap:
                    raise CapExceeded("coset index cap %d exceeded" % index_cap)
                index[nxt] = j
                reps.append(nxt)
            images[gi].append(j)
    m = len(reps)
    target = symmetric(m) if m > 1 else PermGroup(1, [])
    hom = Homomorphism(G, target, [Permutation(im) for im in images])
    hom.coset_reps = [Permutation(r) for r in reps]
    return hom


def quotient_group(G: PermGroup, N: PermGroup, index_cap=INDEX_CAP):
    """Faithful action of G/N on the cosets of N, with the projection map."""
    if not is_normal(G, N):
        raise PermError("subgroup is not normal")
    hom = coset_action(G, N, index_cap)
    return hom.image_group(), hom


# -- named constructions -------------------------------------------------


def trivial_group(degree=1) -> PermGroup:
    return PermGroup(degree, [], name="1")


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return trivial_group(1)
    return PermGroup(n, [Permutation.from_cycles([list(range(1, n + 1))], n)],
                     name="Cyclic(%d)" % n, _known_order=n)


def symmetric(n: int) -> PermGroup:
    if n == 1:
        return trivial_group(1)
    gens = [Permutation.from_cycles([[1, 2]], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([list(range(1, n + 1))], n))
    import math
    return PermGroup(n, gens, name="Sym(%d)" % n, _known_order=math.factorial(n))


def alternating(n: int) -> PermGroup:
    if n <= 2:
        return trivial_group(max(n, 1))
    if n == 3:
        return PermGroup(3, [Permutation.from_cycles([[1, 2, 3]], 3)], name="Alt(3)",
                         _known_order=3)
    gens = [Permutation.from_cycles([[1, 2, 3]], n)]
    if n % 2:
        gens.append(Permutation.from_cycles([list(range(1, n + 1))], n))
    else:
        gens.append(Permutation.from_cycles([list(range(2, n + 1))], n))
    import math
    return PermGroup(n, gens, name="Alt(%d)" % n, _known_order=math.factorial(n) // 2)


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n acting on n points (n >= 3)."""
    if n < 3:
        raise ValueError("dihedral needs degree >= 3")
    rot = Permutation.from_cycles([list(range(1, n + 1))], n)
    refl = Permutation([(n - i) % n for i in range(n)])
    return PermGroup(n, [rot, refl], name="Dihedral(%d)" % n, _known_order=2 * n)


_BUILTIN = {"Sym": symmetric, "Alt": alternating, "Cyclic": cyclic, "Dihedral": dihedral}


def group_from_spec(spec) -> PermGroup:
    """Build a group from a builtin name like "Alt(5)" or a literal dict
    {"name": ..., "degree": n, "generators": ["(1,2,3)", ...]}."""
    if isinstance(spec, str):
        text = spec.strip()
        for key, builder in _BUILTIN.items():
            if text.startswith(key + "(") and text.endswith(")"):
                return builder(int(text[len(key) + 1:-1]))
        raise ValueError("unknown builtin group %r" % spec)
    degree = int(spec["degree"])
    gens = [Permutation.parse(s, degree) for s in spec.get("generators", [])]
    return PermGroup(degree, gens, name=spec.get("name"))

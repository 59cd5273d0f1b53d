"""Presentations from stabilizer chains and first cohomology over F_p.

The presentation on the strong generators of a chain (Schreier relators,
sifted through the deeper levels) defines the group exactly; cocycle spaces
are null spaces of the relator-induced linear systems, and an independent
complement-counting oracle cross-checks |Z^1| by exhaustive lifting.
"""

from __future__ import annotations

import weakref
from itertools import product

from .constructions import ModuleAction, module_semidirect
from .group import PermGroup, derived_subgroup, quotient_group
from .limits import CapExceeded, COMPLEMENT_CAP
from .linalg import (
    fixed_subspace_dim,
    identity_matrix,
    intertwiner_space_dim,
    mat_inv,
    mat_mul,
    proper_invariant_subspace,
    right_nullspace,
)
from .perm import Permutation, _identity, _inv, _mul


class Presentation:
    """Strong generators plus defining relators (words of signed 1-based letters)."""

    def __init__(self, group, strong_gens, relators):
        self.group = group
        self.strong_gens = strong_gens  # list of Permutation
        self.relators = relators        # list of tuples of nonzero ints

    def evaluate(self, word, images, mul, inverse, identity):
        """Evaluate a word with letter k -> images[k-1], -k -> inverse of it."""
        acc = identity
        for letter in word:
            x = images[abs(letter) - 1]
            if letter < 0:
                x = inverse(x)
            acc = mul(acc, x)
        return acc

    def evaluate_perm(self, word, perms):
        acc = Permutation.identity(perms[0].degree)
        for letter in word:
            x = perms[abs(letter) - 1]
            acc = acc * (x.inverse() if letter < 0 else x)
        return acc

    def check_relators_hold(self):
        for w in self.relators:
            if not self.evaluate_perm(w, self.strong_gens).is_identity():
                return False
        return True


_presentation_cache = weakref.WeakKeyDictionary()


def presentation_from_chain(G: PermGroup) -> Presentation:
    """Defining presentation of G on the strong generators of its chain.

    One relator per (orbit point, generator) Schreier pair per level; each
    Schreier element is rewritten as a product of deeper transversal words, so
    every relator evaluates to the identity and the presented group has order
    equal to the product of the fundamental orbit lengths.
    """
    cached = _presentation_cache.get(G)
    if cached is not None:
        return cached
    chain = G.chain()
    degree = G.degree
    sg = []          # raw strong generators in a fixed order
    level_first = []  # index into sg of the first generator at each level
    for lvl in chain.levels:
        level_first.append(len(sg))
        sg.extend(tuple(g[:degree]) for g in lvl.gens)
    level_first.append(len(sg))
    sg_inv = [_inv(g) for g in sg]

    # word-transversals per level, over generators of levels >= i
    trans = []
    for i, lvl in enumerate(chain.levels):
        gen_idx = list(range(level_first[i], len(sg)))
        tw = {lvl.base: ((), _identity(degree))}
        queue = [lvl.base]
        while queue:
            pt = queue.pop(0)
            word, perm = tw[pt]
            for j in gen_idx:
                img = sg[j][pt]
                if img not in tw:
                    tw[img] = (word + (j + 1,), _mul(perm, sg[j]))
                    queue.append(img)
        trans.append(tw)

    relators = []
    ident = _identity(degree)
    for i, lvl in enumerate(chain.levels):
        tw = trans[i]
        gen_idx = list(range(level_first[i], len(sg)))
        for pt in sorted(tw):
            wordp, permp = tw[pt]
            for j in gen_idx:
                img = sg[j][pt]
                wordq, permq = tw[img]
                word = wordp + (j + 1,) + tuple(-k for k in reversed(wordq))
                u = _mul(_mul(permp, sg[j]), _inv(permq))
                # sift through deeper levels, appending transversal words
                for k in range(i + 1, len(chain.levels)):
                    if u == ident:
                        break
                    lk = chain.levels[k]
                    q = u[lk.base]
                    if q == lk.base:
                        continue
                    wq, pq = trans[k][q]
                    u = _mul(u, _inv(pq))
                    word = word + tuple(-t for t in reversed(wq))
                assert u == ident, "chain is not a base and strong generating set"
                if word:
                    relators.append(word)
    pres = Presentation(G, [Permutation(g) for g in sg], relators)
    _presentation_cache[G] = pres
    return pres


# -- cocycle spaces ------------------------------------------------------


def _strong_gen_matrices(pres: Presentation, act: ModuleAction):
    return [tuple(tuple(r) for r in act.matrix_of(g)) for g in pres.strong_gens]


def z1_dimension(G: PermGroup, act: ModuleAction) -> int:
    """dim of the cocycle space Z^1(G, M) over F_p.

    Unknowns are the cocycle values on the strong generators; every relator
    contributes dim linear equations via the product rule
    d(uv) = d(u) rho(v) + d(v).
    """
    if act.group is not G:
        raise ValueError("action is not an action of the given group")
    pres = presentation_from_chain(G)
    mats = _strong_gen_matrices(pres, act)
    p, dim = act.prime, act.dim
    inv_cache = [mat_inv([list(r) for r in M], p) for M in mats]
    g = len(mats)
    rows = []
    zero = [[0] * dim for _ in range(dim)]
    for word in pres.relators:
        coeff = [[row[:] for row in zero] for _ in range(g)]
        for letter in word:
            j = abs(letter) - 1
            if letter > 0:
                R = mats[j]
                for k in range(g):
                    coeff[k] = mat_mul(coeff[k], R, p)
                for i in range(dim):
                    ci = list(coeff[j][i])
                    ci[i] = (ci[i] + 1) % p
                    coeff[j][i] = tuple(ci)
            else:
                Rinv = inv_cache[j]
                for k in range(g):
                    coeff[k] = mat_mul(coeff[k], Rinv, p)
                for i in range(dim):
                    coeff[j][i] = tuple((coeff[j][i][c] - Rinv[i][c]) % p
                                        for c in range(dim))
        for c in range(dim):
            row = []
            for j in range(g):
                row.extend(coeff[j][i][c] for i in range(dim))
            rows.append(tuple(row))
    if not rows:
        return g * dim
    return len(right_nullspace(rows, p))


def h1_dimension(G: PermGroup, act: ModuleAction) -> int:
    """dim_{F_p} H^1(G, M) = dim Z^1 - (dim M - dim M^G)."""
    pres = presentation_from_chain(G)
    mats = _strong_gen_matrices(pres, act)
    b1 = act.dim - fixed_subspace_dim(mats, act.prime, act.dim)
    return z1_dimension(G, act) - b1


def complement_count_oracle(G: PermGroup, act: ModuleAction) -> int:
    """Number of complements of M in M x| G, counted by exhaustive lifting.

    Independent of the cocycle linear algebra: every complement meets each
    coset (strong generator)*M exactly once, and a correction tuple yields a
    complement exactly when all relators evaluate to the identity.  The count
    equals p**dim Z^1.
    """
    sd = module_semidirect(act)
    pres = presentation_from_chain(G)
    g = len(pres.strong_gens)
    size = act.prime ** act.dim
    if size ** g > COMPLEMENT_CAP:
        raise CapExceeded("complement search space %d^%d exceeds cap" % (size, g))
    lifts = [sd.embed_acting(s) for s in pres.strong_gens]
    translations = [sd.translation(v) for v in act._codes]
    ident = Permutation.identity(sd.group.degree)
    count = 0
    for combo in product(range(size), repeat=g):
        cand = [lifts[j] * translations[combo[j]] for j in range(g)]
        inv_cache = {}
        ok = True
        for word in pres.relators:
            acc = ident
            for letter in word:
                j = abs(letter) - 1
                if letter > 0:
                    acc = acc * cand[j]
                else:
                    if j not in inv_cache:
                        inv_cache[j] = cand[j].inverse()
                    acc = acc * inv_cache[j]
            if not acc.is_identity():
                ok = False
                break
        if ok:
            count += 1
    return count


# -- module invariants ---------------------------------------------------


def end_degree(act: ModuleAction, assume_irreducible=False) -> int:
    """Degree over F_p of the endomorphism field of an irreducible module."""
    mats = act.matrices if act.matrices else [tuple(map(tuple, identity_matrix(act.dim)))]
    if not assume_irreducible:
        witness = proper_invariant_subspace(list(mats), act.prime, act.dim)
        if witness is not None:
            raise ValueError("module is reducible; invariant subspace of dim %d"
                             % len(witness))
    e = intertwiner_space_dim(list(mats), list(mats), act.prime)
    if act.dim % e:
        raise ValueError("endomorphism dimension %d does not divide %d" % (e, act.dim))
    return e


class HValueBreakdown:
    """Per-module record of the generator-count quantities."""

    def __init__(self, prime, dim, e, r, delta, s, trivial_module, h):
        self.prime = prime
        self.dim = dim
        self.e = e
        self.r = r
        self.delta = delta
        self.s = s
        self.trivial_module = trivial_module
        self.h = h

    def as_dict(self):
        return {
            "p": self.prime, "dim": self.dim, "e": self.e, "r": self.r,
            "delta": self.delta, "s": self.s, "trivial": self.trivial_module,
            "h": self.h,
        }

    def __repr__(self):
        return "HValueBreakdown(%r)" % (self.as_dict(),)


def h_from_parts(delta, s, r, trivial_module):
    """The generator-count value: delta for trivial modules, floor((s-1)/r)+2
    otherwise.  The bracket is integer floor; centralized here on purpose."""
    if trivial_module:
        return delta
    return (s - 1) // r + 2


def s_value(G: PermGroup, f) -> int:
    """s = delta + dim_End H^1(Q, M) computed on the small quotient Q = G/C_G(M)."""
    act = f.quotient_action()
    e = end_degree(act, assume_irreducible=True)
    return f.delta() + h1_dimension(act.group, act) // e


def h_value(G: PermGroup, f) -> HValueBreakdown:
    """Full breakdown for a non-Frattini abelian chief factor."""
    act = f.quotient_action()
    e = end_degree(act, assume_irreducible=True)
    r = act.dim // e
    delta = f.delta()
    trivial = act.is_trivial()
    s = delta + h1_dimension(act.group, act) // e
    h = h_from_parts(delta, s, r, trivial)
    return HValueBreakdown(act.prime, act.dim, e, r, delta, s, trivial, h)


def h_value_of_action(G: PermGroup, act: ModuleAction, delta: int) -> HValueBreakdown:
    """Breakdown for an explicitly given irreducible module with known delta."""
    e = end_degree(act)
    r = act.dim // e
    trivial = act.is_trivial()
    s = delta + h1_dimension(act.group, act) // e
    h = h_from_parts(delta, s, r, trivial)
    return HValueBreakdown(act.prime, act.dim, e, r, delta, s, trivial, h)


def d_p_rank(G: PermGroup, p: int) -> int:
    """Minimal generator count of the Sylow p-subgroup of G/G'.

    Computed as log_p of the index of the p-th powers inside the p-part of
    the abelianization.
    """
    ab, _ = quotient_group(G, derived_subgroup(G))
    if ab.order() % p:
        return 0
    powers = PermGroup(ab.degree, [g ** p for g in ab.generators])
    index = ab.order() // powers.order()
    rank = 0
    while index > 1:
        if index % p:
            raise ArithmeticError("p-power index is not a power of %d" % p)
        index //= p
        rank += 1
    return rank

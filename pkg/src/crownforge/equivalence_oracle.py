"""Independent oracle for chief-factor equivalence.

Two chief factors are equivalent iff they are G-isomorphic or some maximal
subgroup M has G/core(M) with two minimal normal subgroups G-isomorphic to
them.  The oracle brute-forces this characterization directly: it walks the
normal-subgroup lattice, and for each quotient with two candidate minimal
normals searches for a core-free maximal subgroup.  In such a quotient both
minimal normals are regular, so a core-free maximal is a common complement;
the complement search over corrected generator lifts is therefore complete.

This shares no code path with the outer-automorphism-level test in crowns.py.
"""

from __future__ import annotations

from itertools import permutations, product
from random import Random

from .crowns import ChiefFactor, g_isomorphic
from .group import PermGroup, coset_action, normal_closure, quotient_group, same_subgroup
from .limits import CapExceeded, INDEX_CAP


def normal_subgroup_lattice(G: PermGroup, cap=10000):
    """All normal subgroups: joins of normal closures of class representatives."""
    if G.order() > 10_000:
        raise CapExceeded("normal lattice enumeration capped at order 10^4")
    seeds = []
    for cls in G.conjugacy_classes():
        rep = cls[0]
        if rep.is_identity():
            continue
        seeds.append(normal_closure(G, [rep]))
    lattice = [PermGroup(G.degree, []), G]

    def push(N):
        for got in lattice:
            if got.order() == N.order() and same_subgroup(got, N):
                return False
        lattice.append(N)
        return True

    for s in seeds:
        push(s)
    changed = True
    while changed:
        changed = False
        current = list(lattice)
        for A in current:
            for B in current:
                if A.order() >= B.order():
                    continue
                join = PermGroup(G.degree, list(A.generators) + list(B.generators))
                if push(join):
                    changed = True
        if len(lattice) > cap:
            raise CapExceeded("normal lattice larger than cap")
    lattice.sort(key=lambda N: N.order())
    return lattice


def minimal_normal_subgroups(G: PermGroup):
    lattice = normal_subgroup_lattice(G)
    nontrivial = [N for N in lattice if 1 < N.order()]
    out = []
    for N in nontrivial:
        if not any(1 < M.order() < N.order() and
                   all(N.contains(g) for g in M.generators) for M in nontrivial):
            out.append(N)
    return out


def _find_union(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def is_primitive(raw_gens, n) -> bool:
    """Primitivity of a transitive action by minimal block closures."""
    if n <= 2:
        return True
    for beta in range(1, n):
        parent = list(range(n))
        ra = _find_union(parent, 0)
        parent[_find_union(parent, beta)] = ra
        queue = [(0, beta)]
        size_hint = 2
        while queue:
            a, b = queue.pop()
            for g in raw_gens:
                ga, gb = g[a], g[b]
                rga, rgb = _find_union(parent, ga), _find_union(parent, gb)
                if rga != rgb:
                    parent[rgb] = rga
                    queue.append((ga, gb))
        root0 = _find_union(parent, 0)
        block = sum(1 for x in range(n) if _find_union(parent, x) == root0)
        if block < n:
            return False
    return True


def _small_generating_tuple(Q: PermGroup, rng: Random, max_size=3):
    for size in range(2, max_size + 1):
        for _ in range(80):
            tup = [Q.random_element(rng) for _ in range(size)]
            if PermGroup(Q.degree, tup).order() == Q.order():
                return tup
    return list(Q.generators)


def _corefree_maximal_with(Gbar: PermGroup, M1: PermGroup, M2: PermGroup,
                           combo_cap=50_000) -> bool:
    """Is there a core-free maximal subgroup of Gbar complementing M1 and M2?

    Complete for the oracle's use: in a primitive group with two minimal
    normal subgroups both are regular, so the point stabilizer complements
    both and is generated by corrected lifts of any generating tuple of
    Gbar/M1.
    """
    rng = Random("oracle:%d:%d" % (Gbar.order(), M1.order()))
    Q, pi = quotient_group(Gbar, M1)
    qgens = _small_generating_tuple(Q, rng)
    lifts = [pi.lift(q) for q in qgens]
    n1 = M1.elements()
    if len(n1) ** len(qgens) > combo_cap:
        raise CapExceeded("common-complement search space exceeds cap")
    q_order = Q.order()
    m1_order = M1.order()
    m2_order = M2.order()
    deg = Gbar.degree
    for combo in product(n1, repeat=len(qgens)):
        cand = [l * c for l, c in zip(lifts, combo)]
        U = PermGroup(deg, cand)
        if U.order() != q_order:
            continue
        if PermGroup(deg, cand + list(M1.generators)).order() != q_order * m1_order:
            continue
        if PermGroup(deg, cand + list(M2.generators)).order() != q_order * m2_order:
            continue
        act = coset_action(Gbar, U)
        if act.kernel().order() != 1:
            continue
        if is_primitive([p.images for p in act.images], len(act.coset_reps)):
            return True
    return False


def equivalence_oracle(G: PermGroup, fa: ChiefFactor, fb: ChiefFactor) -> bool:
    """Decide equivalence via the maximal-subgroup characterization."""
    if fa is fb:
        return True
    if g_isomorphic(G, fa, fb):
        return True
    for N in normal_subgroup_lattice(G):
        if N.order() == G.order():
            continue
        index = G.order() // N.order()
        if index > INDEX_CAP:
            continue
        if N.order() == 1:
            Gbar, pi = G, None
        else:
            Gbar, pi = quotient_group(G, N)
        mins = minimal_normal_subgroups(Gbar)
        if len(mins) < 2:
            continue
        for M1, M2 in permutations(mins, 2):
            if pi is None:
                X1, X2 = M1, M2
            else:
                X1, X2 = pi.preimage(M1), pi.preimage(M2)
            fA = ChiefFactor(G, X1, N)
            fB = ChiefFactor(G, X2, N)
            if fA.order != fa.order or fB.order != fb.order:
                continue
            if g_isomorphic(G, fA, fa) and g_isomorphic(G, fB, fb):
                if _corefree_maximal_with(Gbar, M1, M2):
                    return True
    return False

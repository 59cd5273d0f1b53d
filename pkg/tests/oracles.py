"""Independent brute-force oracles used by the test suite.

Everything here works by exhaustive enumeration over raw image tuples and
never touches the stabilizer-chain machinery it is checking.
"""

from itertools import product


def mul(a, b):
    return tuple(b[x] for x in a)


def inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def enumerate_elements(degree, gens, cap=2_000_000):
    """Breadth-first closure of the generator set; returns a set of tuples."""
    ident = tuple(range(degree))
    seen = {ident}
    queue = [ident]
    k = 0
    while k < len(queue):
        x = queue[k]
        k += 1
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                assert len(seen) < cap, "oracle enumeration cap"
                seen.add(y)
                queue.append(y)
    return seen


def enumerate_group(G):
    return enumerate_elements(G.degree, [g.images for g in G.generators])


def naive_normal_closure(G_elements, seeds):
    """Closure of seeds under conjugation by every group element and products."""
    conj = set()
    for s in seeds:
        for g in G_elements:
            conj.add(mul(mul(inv(g), s), g))
    degree = len(next(iter(G_elements)))
    return enumerate_elements(degree, sorted(conj))


def naive_derived(G_elements):
    degree = len(next(iter(G_elements)))
    comms = set()
    for a in G_elements:
        ai = inv(a)
        for b in G_elements:
            comms.add(mul(mul(mul(ai, inv(b)), a), b))
    return enumerate_elements(degree, sorted(comms))


def naive_orbits(degree, gens):
    seen = [False] * degree
    orbits = []
    for start in range(degree):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        k = 0
        while k < len(orbit):
            pt = orbit[k]
            k += 1
            for g in gens:
                if not seen[g[pt]]:
                    seen[g[pt]] = True
                    orbit.append(g[pt])
        orbits.append(sorted(p + 1 for p in orbit))
    return orbits


def generates(degree, elements_set, tuple_of_perms):
    """Does the tuple generate the full enumerated set?"""
    gens = [p.images for p in tuple_of_perms]
    return enumerate_elements(degree, gens) == elements_set


def count_generating_pairs(G):
    """Number of ordered pairs generating G, by full enumeration."""
    elems = sorted(enumerate_group(G))
    target = set(elems)
    count = 0
    for a in elems:
        for b in elems:
            if enumerate_elements(G.degree, [a, b]) == target:
                count += 1
    return count

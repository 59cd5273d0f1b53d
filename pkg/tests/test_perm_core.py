"""Engine ground truth: parsing, orders, membership, closures, quotients.

Every structural result is checked against the exhaustive-enumeration oracles
in oracles.py.
"""

import random

import pytest

from crownforge import (
    Homomorphism,
    PermGroup,
    Permutation,
    PermError,
    alternating,
    coset_action,
    cyclic,
    derived_subgroup,
    dihedral,
    normal_closure,
    parse_permutation,
    quotient_group,
    sample_stream,
    symmetric,
    trivial_group,
)
from oracles import (
    enumerate_group,
    naive_derived,
    naive_normal_closure,
    naive_orbits,
)


def test_parse_basic():
    assert list(parse_permutation("(1,2,3)", 3).images) == [1, 2, 0]
    assert parse_permutation("()", 4).is_identity()
    assert list(parse_permutation("(1,2)(3,4)", 5).images) == [1, 0, 3, 2, 4]


def test_parse_errors():
    with pytest.raises(PermError):
        parse_permutation("(1,2", 3)
    with pytest.raises(PermError):
        parse_permutation("(1,4)", 3)
    with pytest.raises(PermError):
        parse_permutation("(1,2)(2,3)", 3)
    with pytest.raises(PermError):
        parse_permutation("(0,1)", 3)


def test_perm_arithmetic():
    a = parse_permutation("(1,2,3)", 4)
    b = parse_permutation("(3,4)", 4)
    # left-to-right composition: apply a, then b
    assert (a * b)(1) == 2
    assert (a * b)(2) == 4
    assert (a * a.inverse()).is_identity()
    assert (a ** 3).is_identity()
    assert a.order() == 3
    assert str(parse_permutation("()", 5)) == "()"
    assert str(b) == "(3,4)"


BASIC_GROUPS = [
    ("S3", symmetric(3), 6),
    ("S4", symmetric(4), 24),
    ("S5", symmetric(5), 120),
    ("A4", alternating(4), 12),
    ("A5", alternating(5), 60),
    ("A6", alternating(6), 360),
    ("C6", cyclic(6), 6),
    ("D4", dihedral(4), 8),
    ("D5", dihedral(5), 10),
    ("triv", trivial_group(3), 1),
]


@pytest.mark.parametrize("name,G,order", BASIC_GROUPS, ids=[b[0] for b in BASIC_GROUPS])
def test_order_vs_enumeration(name, G, order):
    assert G.order() == order
    assert len(enumerate_group(G)) == order


def test_spec_order_examples():
    assert PermGroup(3, ["(1,2)", "(1,2,3)"]).order() == 6
    G = PermGroup(5, ["(1,2,3,4,5)", "(3,4,5)"])
    assert G.order() == 60
    assert len(enumerate_group(G)) == 60
    W = PermGroup(4, ["(1,2)", "(3,4)", "(1,3)(2,4)"])
    assert W.order() == 8
    assert len(enumerate_group(W)) == 8


@pytest.mark.parametrize("name,G,order", BASIC_GROUPS, ids=[b[0] for b in BASIC_GROUPS])
def test_membership_vs_enumeration(name, G, order):
    elems = enumerate_group(G)
    rng = random.Random(5)
    for t in list(elems)[:50]:
        assert G.contains(Permutation(t))
    for _ in range(30):
        images = list(range(G.degree))
        rng.shuffle(images)
        p = Permutation(images)
        assert G.contains(p) == (p.images in elems)


def test_membership_examples():
    A3 = PermGroup(3, ["(1,2,3)"])
    assert not A3.contains(parse_permutation("(1,2)", 3))
    assert A3.contains(parse_permutation("()", 3))
    assert symmetric(4).contains(parse_permutation("(1,3)(2,4)", 4))


def test_degree_mismatch():
    with pytest.raises(PermError):
        symmetric(3).contains(parse_permutation("(1,2)", 4))


def test_orbits():
    G = PermGroup(3, ["(1,2,3)"])
    assert G.orbits() == [[1, 2, 3]]
    assert G.is_transitive()
    H = PermGroup(3, ["(1,2)"])
    assert H.orbits() == [[1, 2], [3]]
    assert not H.is_transitive()
    W = PermGroup(4, ["(1,2)", "(3,4)", "(1,3)(2,4)"])
    assert W.is_transitive()
    for name, G, _ in BASIC_GROUPS:
        raw = [g.images for g in G.generators]
        assert G.orbits() == naive_orbits(G.degree, raw)


def test_normal_closure_vs_oracle():
    S4 = symmetric(4)
    elems = enumerate_group(S4)
    N = normal_closure(S4, [parse_permutation("(1,2)(3,4)", 4)])
    assert N.order() == 4
    assert enumerate_group(N) == naive_normal_closure(elems, [parse_permutation("(1,2)(3,4)", 4).images])

    S3 = symmetric(3)
    N2 = normal_closure(S3, [parse_permutation("(1,2)", 3)])
    assert N2.order() == 6

    N3 = normal_closure(S4, [S4.identity()])
    assert N3.order() == 1


def test_normal_closure_outside_raises():
    A4 = alternating(4)
    with pytest.raises(PermError):
        normal_closure(A4, [parse_permutation("(1,2)", 4)])


@pytest.mark.parametrize("G,expected", [
    (symmetric(3), 3),
    (symmetric(4), 12),
    (alternating(5), 60),
    (dihedral(4), 2),
    (cyclic(6), 1),
])
def test_derived_subgroup(G, expected):
    D = derived_subgroup(G)
    assert D.order() == expected
    if G.order() <= 60:
        assert enumerate_group(D) == naive_derived(enumerate_group(G))


def test_coset_action_examples():
    S3 = symmetric(3)
    f = coset_action(S3, PermGroup(3, ["(1,2)"]))
    assert f.image_order() == 6
    assert f.kernel().order() == 1
    assert f.image_group().degree == 3

    S4 = symmetric(4)
    f2 = coset_action(S4, alternating(4))
    assert f2.image_order() == 2
    assert f2.kernel().order() == 12

    f3 = coset_action(S4, S4)
    assert f3.image_order() == 1
    assert f3.kernel().order() == 24


def test_coset_action_index_identity():
    # |G:H| * |H| = |G| whenever the action is computed
    S5 = symmetric(5)
    for hgens in (["(1,2)"], ["(1,2,3,4,5)"], ["(1,2)", "(1,2,3,4,5)"]):
        H = PermGroup(5, hgens)
        f = coset_action(S5, H)
        assert len(f.coset_reps) * H.order() == S5.order()


def test_coset_action_not_subgroup():
    with pytest.raises(PermError):
        coset_action(alternating(4), PermGroup(4, ["(1,2)"]))


def test_quotient_group():
    S4 = symmetric(4)
    V4 = PermGroup(4, ["(1,2)(3,4)", "(1,3)(2,4)"])
    Q, pi = quotient_group(S4, V4)
    assert Q.order() == 6
    assert pi.kernel().order() == 4
    Q2, _ = quotient_group(S4, S4)
    assert Q2.order() == 1
    S3 = symmetric(3)
    Q3, _ = quotient_group(S3, alternating(3))
    assert Q3.order() == 2
    with pytest.raises(PermError):
        quotient_group(S4, PermGroup(4, ["(1,2)"]))


def test_homomorphism_validity_and_law():
    S4 = symmetric(4)
    _, sgn = quotient_group(S4, alternating(4))
    assert sgn.is_homomorphism()
    rng = random.Random(11)
    for _ in range(200):
        x = S4.random_element(rng)
        y = S4.random_element(rng)
        assert sgn(x * y) == sgn(x) * sgn(y)
    # an invalid assignment: send a 4-cycle to a 3-cycle
    C4 = cyclic(4)
    bad = Homomorphism(C4, cyclic(3), [parse_permutation("(1,2,3)", 3)])
    assert not bad.is_homomorphism()


def test_homomorphism_kernel_order_identity():
    # |source| = |kernel| * |image| for conjugation-style quotients
    S4 = symmetric(4)
    V4 = PermGroup(4, ["(1,2)(3,4)", "(1,3)(2,4)"])
    _, pi = quotient_group(S4, V4)
    assert pi.kernel().order() * pi.image_order() == S4.order()


def test_homomorphism_lift_and_preimage():
    S4 = symmetric(4)
    V4 = PermGroup(4, ["(1,2)(3,4)", "(1,3)(2,4)"])
    Q, pi = quotient_group(S4, V4)
    for q in Q.generators:
        g = pi.lift(q)
        assert pi(g) == q
    # preimage of the full image is the whole group
    P = pi.preimage(Q)
    assert P.order() == 24
    # preimage of the trivial subgroup is the kernel
    P0 = pi.preimage(PermGroup(Q.degree, []))
    assert P0.order() == 4


def test_uniform_sampling_statistics():
    # 10^5 samples from S3: each element within the 99% Wilson band of 1/6
    S3 = symmetric(3)
    counts = {}
    n = 100_000
    for k in range(n):
        p = sample_stream(S3, 20240817, k)
        counts[p.images] = counts.get(p.images, 0) + 1
    assert len(counts) == 6
    z = 2.5758293035489004
    for c in counts.values():
        phat = c / n
        center = (phat + z * z / (2 * n)) / (1 + z * z / n)
        half = z * ((phat * (1 - phat) / n + z * z / (4 * n * n)) ** 0.5) / (1 + z * z / n)
        assert center - half <= 1 / 6 <= center + half

    triv = trivial_group(2)
    assert sample_stream(triv, 1, 0).is_identity()


def test_sampling_deterministic_per_seed():
    A5 = alternating(5)
    a = [sample_stream(A5, 99, k) for k in range(20)]
    b = [sample_stream(A5, 99, k) for k in range(20)]
    assert a == b
    c = [sample_stream(A5, 100, k) for k in range(20)]
    assert a != c

"""Products, towers, crown-based powers and module semidirect products,
with enumeration oracles at small orders."""

import pytest

from crownforge import (
    PermGroup,
    PermError,
    alternating,
    cyclic,
    derived_subgroup,
    normal_closure,
    symmetric,
    trivial_group,
)
from crownforge.constructions import (
    GroupSequence,
    ModuleAction,
    crown_based_power,
    direct_product,
    iterated_wreath,
    module_semidirect,
    trivial_action,
    wreath_product,
)
from oracles import enumerate_group


def test_direct_product():
    GH = direct_product(symmetric(3), cyclic(2))
    assert GH.degree == 5
    assert GH.order() == 12
    assert len(enumerate_group(GH)) == 12

    G = symmetric(3)
    GT = direct_product(G, trivial_group(1))
    assert GT.order() == 6

    AA = direct_product(alternating(5), alternating(5))
    assert AA.degree == 10
    assert AA.order() == 3600


def test_wreath_c2_c2():
    W = wreath_product(cyclic(2), cyclic(2))
    assert W.degree == 4
    assert W.order() == 8
    elems = enumerate_group(W)
    assert len(elems) == 8
    # dihedral of order 8: nonabelian with an element of order 4
    orders = sorted(p.order() for p in W.elements())
    assert orders == [1, 2, 2, 2, 2, 2, 4, 4]
    a, b = W.generators[0], W.generators[1]
    assert a * b != b * a or len(W.generators) > 2


def test_wreath_order_identity():
    W = wreath_product(symmetric(3), cyclic(3))
    assert W.degree == 9
    assert W.order() == 6 ** 3 * 3 == 648

    H = symmetric(3)
    W1 = wreath_product(H, trivial_group(1))
    assert W1.order() == H.order()

    # |H wr K| = |H|^n |K| across a few instances
    for H, K in [(cyclic(2), cyclic(3)), (symmetric(3), symmetric(3)),
                 (alternating(4), cyclic(2))]:
        W = wreath_product(H, K)
        assert W.order() == H.order() ** K.degree * K.order()
        assert W.is_transitive() == H.is_transitive()


def test_wreath_needs_transitive_top():
    with pytest.raises(PermError):
        wreath_product(cyclic(2), PermGroup(3, ["(1,2)"]))


def test_wreath_base_group():
    W = wreath_product(symmetric(3), cyclic(3))
    B = W.base_group()
    assert B.order() == 6 ** 3
    assert all(W.contains(g) for g in B.generators)
    Bp = W.base_derived_subgroup()
    assert Bp.order() == 3 ** 3


def test_iterated_wreath_tower():
    seq = GroupSequence([cyclic(2), cyclic(2), cyclic(2)])
    W3 = iterated_wreath(seq, 3)
    assert W3.degree == 8
    assert W3.order() == 2 ** 7 == 128
    assert iterated_wreath(seq, 1).order() == 2

    seq2 = GroupSequence([alternating(5), alternating(5)])
    W2 = iterated_wreath(seq2, 2)
    assert W2.degree == 25
    assert W2.order() == 60 ** 5 * 60


def test_intransitive_sequence_rejected():
    with pytest.raises(PermError):
        GroupSequence([PermGroup(3, ["(1,2)"])])


def test_crown_based_power_s3():
    L = symmetric(3)
    A = alternating(3)
    G = crown_based_power(L, A, 2)
    assert G.degree == 6
    assert G.order() == 9 * 2 == 18
    assert len(enumerate_group(G)) == 18
    # the two component projections are onto: restriction to block points
    for block in (0, 1):
        imgs = set()
        for g in G.elements():
            imgs.add(tuple(g.images[block * 3 + i] - block * 3 for i in range(3)))
        assert len(imgs) == 6


def test_crown_based_power_edges():
    L = symmetric(3)
    assert crown_based_power(L, alternating(3), 1) is L
    AA = crown_based_power(alternating(5), alternating(5), 2)
    assert AA.order() == 3600
    with pytest.raises(Exception):
        crown_based_power(L, PermGroup(3, ["(1,2)"]), 2)  # not normal
    with pytest.raises(Exception):
        crown_based_power(symmetric(4), symmetric(4).subgroup(
            [PermGroup(4, ["(1,2)(3,4)", "(1,3)(2,4)"]).generators[0]]), 2)


def test_crown_power_congruence_structure():
    # members of (S3)_2 are exactly the pairs congruent mod A3
    G = crown_based_power(symmetric(3), alternating(3), 2)
    A3 = alternating(3)
    for g in G.elements():
        left = tuple(g.images[i] for i in range(3))
        right = tuple(g.images[3 + i] - 3 for i in range(3))
        from crownforge import Permutation
        quot = Permutation(left) * Permutation(right).inverse()
        assert A3.contains(quot)


def test_module_semidirect_inversion():
    # C2 acting by -1 on F_3: the order-6 nonabelian group with normal C3
    C2 = cyclic(2)
    act = ModuleAction(C2, 3, [[(2,)]])
    sd = module_semidirect(act)
    E = sd.group
    assert E.order() == 6
    M = sd.module_subgroup()
    assert M.order() == 3
    assert normal_closure(E, M.generators).order() == 3
    assert derived_subgroup(E).order() == 3  # nonabelian, S3-like


def test_module_semidirect_trivial():
    G = symmetric(3)
    sd = module_semidirect(trivial_action(G, 5))
    assert sd.group.order() == 5 * 6
    assert derived_subgroup(sd.group).order() == 3  # direct product S3 x C5


def test_module_semidirect_gl22():
    # S3 ~ GL(2,2) natural: F_2^2 x| S3 has order 24 with a normal Klein four
    S3 = symmetric(3)
    swap = [(0, 1), (1, 0)]
    rot = [(0, 1), (1, 1)]
    act = ModuleAction(S3, 2, [swap, rot])
    sd = module_semidirect(act)
    assert sd.group.order() == 24
    V = sd.module_subgroup()
    assert V.order() == 4
    assert normal_closure(sd.group, V.generators).order() == 4
    Q, _ = __import__("crownforge").quotient_group(sd.group, V)
    assert Q.order() == 6


def test_module_action_rejects_bad_matrices():
    C2 = cyclic(2)
    with pytest.raises(ValueError):
        ModuleAction(C2, 3, [[(0,)]])  # singular
    with pytest.raises(ValueError):
        # order-3 matrix assigned to an involution violates the relations
        ModuleAction(C2, 2, [[(0, 1), (1, 1)]])


def test_module_matrix_of_products():
    S3 = symmetric(3)
    act = ModuleAction(S3, 2, [[(0, 1), (1, 0)], [(0, 1), (1, 1)]])
    a, b = S3.generators
    from crownforge.linalg import mat_mul
    Mab = act.matrix_of(a * b)
    assert [list(r) for r in Mab] == [list(r) for r in
                                      mat_mul(act.matrices[0], act.matrices[1], 2)]

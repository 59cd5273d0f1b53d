"""Presentations, Z^1/H^1, the complement-count oracle, and p-ranks."""

import pytest

from crownforge import (
    PermGroup,
    alternating,
    cyclic,
    dihedral,
    quotient_group,
    symmetric,
)
from crownforge.cohomology import (
    complement_count_oracle,
    d_p_rank,
    end_degree,
    h1_dimension,
    presentation_from_chain,
    z1_dimension,
)
from crownforge.constructions import (
    GroupSequence,
    ModuleAction,
    iterated_wreath,
    trivial_action,
)


def test_presentation_c2():
    C2 = cyclic(2)
    pres = presentation_from_chain(C2)
    assert len(pres.strong_gens) == 1
    assert pres.check_relators_hold()
    # the only relator is x^2
    assert any(len(w) == 2 for w in pres.relators)


@pytest.mark.parametrize("G", [symmetric(3), PermGroup(4, ["(1,2)", "(3,4)"]),
                               symmetric(4), alternating(4), dihedral(4)],
                         ids=["S3", "C2xC2", "S4", "A4", "D4"])
def test_presentation_relators_hold(G):
    pres = presentation_from_chain(G)
    assert pres.check_relators_hold()


@pytest.mark.parametrize("G,p,expected", [
    (symmetric(3), 2, 1), (symmetric(3), 3, 0),
    (dihedral(4), 2, 2),
    (symmetric(4), 2, 1), (alternating(4), 3, 1), (alternating(4), 2, 0),
    (cyclic(12), 2, 1), (cyclic(12), 3, 1),
    (alternating(5), 2, 0), (alternating(5), 5, 0),
])
def test_d_p_rank(G, p, expected):
    assert d_p_rank(G, p) == expected


def test_d_p_rank_c2_tower():
    seq = GroupSequence([cyclic(2)] * 3)
    W3 = iterated_wreath(seq, 3)
    assert d_p_rank(W3, 2) == 3


def test_presentation_consistency_via_trivial_z1():
    # dim Z^1(G, trivial F_p) = dim Hom(G, F_p) = d_p(G/G')
    for G, p in [(symmetric(3), 2), (symmetric(3), 3), (dihedral(4), 2),
                 (symmetric(4), 2), (alternating(4), 3)]:
        act = trivial_action(G, p)
        assert z1_dimension(G, act) == d_p_rank(G, p)


def test_h1_trivial_module_c2():
    C2 = cyclic(2)
    act = trivial_action(C2, 2)
    assert z1_dimension(C2, act) == 1
    assert h1_dimension(C2, act) == 1


def test_h1_sign_action():
    # C2 acting by -1 on F_3: H^1 = 0, Z^1 has dimension 1
    C2 = cyclic(2)
    act = ModuleAction(C2, 3, [[(2,)]])
    assert h1_dimension(C2, act) == 0
    assert z1_dimension(C2, act) == 1
    assert complement_count_oracle(C2, act) == 3


def test_h1_gl22_natural():
    # S3 = GL(2,2) on its natural module: H^1 = 0 and exactly 4 complements
    S3 = symmetric(3)
    act = ModuleAction(S3, 2, [[(0, 1), (1, 0)], [(0, 1), (1, 1)]])
    assert h1_dimension(S3, act) == 0
    assert complement_count_oracle(S3, act) == 3 ** 0 * 2 ** z1_dimension(S3, act)


ORACLE_CASES = []


def _oracle_case(name, G, p, mats):
    ORACLE_CASES.append((name, G, ModuleAction(G, p, mats)))


_oracle_case("C2 sign on F3", cyclic(2), 3, [[(2,)]])
_oracle_case("S3 natural F2^2", symmetric(3), 2, [[(0, 1), (1, 0)], [(0, 1), (1, 1)]])
_oracle_case("C3 irreducible F2^2", cyclic(3), 2, [[(0, 1), (1, 1)]])
# alternating(4) has generators (1,2,3) and (2,3,4) with
# (1,2,3)(2,3,4) in V4, so the second generator maps to the inverse matrix
_oracle_case("A4 natural F2^2", alternating(4), 2,
             [[(0, 1), (1, 1)], [(1, 1), (1, 0)]])
_oracle_case("C2 trivial F2", cyclic(2), 2, [[(1,)]])
_oracle_case("S3 trivial F3", symmetric(3), 3, [identity := [(1,)], identity])


@pytest.mark.parametrize("name,G,act", ORACLE_CASES, ids=[c[0] for c in ORACLE_CASES])
def test_complement_oracle_matches_z1(name, G, act):
    # |Z^1| = p^dim from the linear system must equal the exhaustive count
    count = complement_count_oracle(G, act)
    assert count == act.prime ** z1_dimension(G, act)


def test_end_degree():
    C2 = cyclic(2)
    assert end_degree(trivial_action(C2, 5)) == 1
    S3 = symmetric(3)
    nat = ModuleAction(S3, 2, [[(0, 1), (1, 0)], [(0, 1), (1, 1)]])
    assert end_degree(nat) == 1
    C3 = cyclic(3)
    irr = ModuleAction(C3, 2, [[(0, 1), (1, 1)]])
    assert end_degree(irr) == 2
    # reducible modules are rejected
    red = trivial_action(C3, 2, dim=2)
    with pytest.raises(ValueError):
        end_degree(red)


def test_a4_natural_klein_count():
    # A4 on F_2^2 through A4/V4 = C3 inside GL(2,2)
    A4 = alternating(4)
    act = ModuleAction(A4, 2, [[(0, 1), (1, 1)], [(1, 1), (1, 0)]])
    n = complement_count_oracle(A4, act)
    assert n == 2 ** z1_dimension(A4, act)
    sd_order = 4 * 12
    from crownforge.constructions import module_semidirect
    assert module_semidirect(act).group.order() == sd_order

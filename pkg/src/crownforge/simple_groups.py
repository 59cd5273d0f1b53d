"""Lookup data for small nonabelian simple groups.

Keyed by group order; covers alternating groups of degree 5..9 and the small
projective groups up to order 10^6.  The order-20160 collision (Alt(8) vs
L3(4)) is resolved by element-order probing: Alt(8) contains elements of
order 15, L3(4) does not.

Each entry: (name, |Aut|, minimal faithful transitive degree).
"""

from .limits import CapExceeded, ENUMERATION_CAP

_ENTRIES = {
    60: ("Alt(5)", 120, 5),
    168: ("PSL(2,7)", 336, 7),
    360: ("Alt(6)", 1440, 6),
    504: ("PSL(2,8)", 1512, 9),
    660: ("PSL(2,11)", 1320, 11),
    1092: ("PSL(2,13)", 2184, 14),
    2448: ("PSL(2,17)", 4896, 18),
    2520: ("Alt(7)", 5040, 7),
    3420: ("PSL(2,19)", 6840, 20),
    4080: ("PSL(2,16)", 16320, 17),
    5616: ("PSL(3,3)", 11232, 13),
    6048: ("PSU(3,3)", 12096, 28),
    6072: ("PSL(2,23)", 12144, 24),
    7800: ("PSL(2,25)", 31200, 26),
    7920: ("M11", 7920, 11),
    9828: ("PSL(2,27)", 58968, 28),
    12180: ("PSL(2,29)", 24360, 30),
    14880: ("PSL(2,31)", 29760, 32),
    25920: ("PSU(4,2)", 51840, 27),
    29120: ("Sz(8)", 87360, 65),
    32736: ("PSL(2,32)", 163680, 33),
    62400: ("PSU(3,4)", 249600, 65),
    95040: ("M12", 190080, 12),
    126000: ("PSU(3,5)", 756000, 50),
    175560: ("J1", 175560, 266),
    181440: ("Alt(9)", 362880, 9),
    443520: ("M22", 887040, 22),
    604800: ("J2", 1209600, 100),
}

_A8 = ("Alt(8)", 40320, 8)
_L34 = ("PSL(3,4)", 241920, 21)


class UnknownSimpleType(LookupError):
    pass


def _has_element_of_order_15(G):
    if G.order() > ENUMERATION_CAP:
        raise CapExceeded("type probe needs element enumeration")
    for cls in G.conjugacy_classes():
        if cls[0].order() == 15:
            return True
    return False


def identify_simple(G):
    """(name, aut_order, min_transitive_degree) for a simple group.

    The caller is responsible for simplicity; unknown orders raise
    UnknownSimpleType (reported, never guessed).
    """
    n = G.order()
    if n == 20160:
        return _A8 if _has_element_of_order_15(G) else _L34
    try:
        return _ENTRIES[n]
    except KeyError:
        raise UnknownSimpleType("no table entry for simple group of order %d" % n)


def aut_order_of_simple(G) -> int:
    return identify_simple(G)[1]


def min_faithful_transitive_degree(G) -> int:
    return identify_simple(G)[2]


def wreath_caut_upper_bound(n: int, a: int, s_order: int, s_aut_order: int) -> int:
    """Pessimistic upper bound n*a*|S|^(na-1)*|Aut S| for the centralizer
    constant of L wr K with socle S^(na); only valid as an upper bound."""
    return n * a * s_order ** (n * a - 1) * s_aut_order

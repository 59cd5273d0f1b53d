"""crownforge: exact permutation-group engine, crown/cohomology generator
counting, and a wreath-tower verification harness."""

from .perm import Permutation, PermError, parse_permutation
from .group import (
    Homomorphism,
    PermGroup,
    alternating,
    coset_action,
    contains,
    cyclic,
    derived_subgroup,
    dihedral,
    group_from_spec,
    group_order,
    kernel,
    normal_closure,
    orbit_and_transitivity,
    quotient_group,
    sample_stream,
    symmetric,
    trivial_group,
    uniform_random,
)
from .limits import CapExceeded

__all__ = [
    "Permutation", "PermError", "parse_permutation",
    "PermGroup", "Homomorphism", "CapExceeded",
    "alternating", "cyclic", "dihedral", "symmetric", "trivial_group",
    "group_from_spec",
    "group_order", "contains", "orbit_and_transitivity", "uniform_random",
    "sample_stream", "normal_closure", "derived_subgroup", "coset_action",
    "kernel", "quotient_group",
]

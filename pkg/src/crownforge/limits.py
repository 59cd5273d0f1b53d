"""Global size caps.

Everything here exists so that expensive verifications fail loudly instead of
silently returning unverified structure.  The degree cap can be overridden
with the CROWNFORGE_MAX_DEGREE environment variable.
"""

import os


def max_degree() -> int:
    value = os.environ.get("CROWNFORGE_MAX_DEGREE")
    return int(value) if value else 10_000


# maximal index for coset actions / quotient realizations
INDEX_CAP = 100_000

# maximal chief-factor size for which minimality / centralizers / equivalence
# are computed (the factor is realized on its own element set)
FACTOR_CAP = 100_000

# cap on the complement-lifting search space |X/Y|**g
COMPLEMENT_CAP = 10_000_000

# cap on |G|**d for exhaustive generation-probability counts
EXHAUSTION_BUDGET = 200_000_000

# group order up to which full element enumeration is considered cheap
ENUMERATION_CAP = 1_000_000


class CapExceeded(RuntimeError):
    """A configured size cap would be exceeded; nothing was computed."""

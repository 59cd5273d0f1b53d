"""Exact linear algebra over prime fields.

Matrices are lists of row tuples with entries reduced mod p.  Modules use the
row-vector convention throughout the package: a group element g acts as
v -> v * M(g), so M(gh) = M(g) M(h).
"""

from __future__ import annotations


def identity_matrix(n):
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def mat_mul(A, B, p):
    cols = list(zip(*B))
    return [tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols) for row in A]


def vec_mat(v, A, p):
    cols = list(zip(*A))
    return tuple(sum(x * a for x, a in zip(v, col)) % p for col in cols)


def mat_inv(A, p):
    """Inverse by Gauss-Jordan; raises ValueError on singular input."""
    n = len(A)
    aug = [list(row) + list(ident) for row, ident in zip(A, identity_matrix(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] % p), None)
        if pivot is None:
            raise ValueError("matrix is singular mod %d" % p)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [x * inv % p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [(x - factor * y) % p for x, y in zip(aug[r], aug[col])]
    return [tuple(row[n:]) for row in aug]


def rref(rows, p):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] % p), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [x * inv % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def rank(rows, p):
    return len(rref(rows, p)[0])


def right_nullspace(rows, p):
    """Basis of {v : A v = 0} (column vectors, returned as tuples)."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(tuple(v))
    return basis


def left_nullspace(rows, p):
    return right_nullspace([tuple(col) for col in zip(*rows)], p) if rows else []


class RowSpace:
    """Incrementally reduced row space; supports membership and extension."""

    def __init__(self, p, width):
        self.p = p
        self.width = width
        self.rows = []  # kept in echelon form
        self.pivots = []

    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        v = list(v)
        p = self.p
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                f = v[c]
                v = [(x - f * y) % p for x, y in zip(v, row)]
        return v

    def add(self, v):
        """Add vector to the space; returns True if the dimension grew."""
        v = self.reduce(v)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            return False
        inv = pow(v[c], -1, self.p)
        v = [x * inv % self.p for x in v]
        # keep echelon ordering by pivot column
        idx = 0
        while idx < len(self.pivots) and self.pivots[idx] < c:
            idx += 1
        self.rows.insert(idx, v)
        self.pivots.insert(idx, c)
        # back-substitute to keep reduced form
        for i in range(len(self.rows)):
            if i == idx:
                continue
            f = self.rows[i][c]
            if f:
                self.rows[i] = [(x - f * y) % self.p for x, y in zip(self.rows[i], v)]
        return True

    def contains(self, v):
        return all(x == 0 for x in self.reduce(v))


def spin(vectors, mats, p):
    """Smallest subspace containing the vectors and closed under v -> v*M."""
    width = len(vectors[0])
    space = RowSpace(p, width)
    queue = []
    for v in vectors:
        if space.add(v):
            queue.append(tuple(space.rows[-1]))
    # re-read basis rows since add() keeps them reduced
    queue = [tuple(r) for r in space.rows]
    k = 0
    while k < len(queue):
        v = queue[k]
        k += 1
        for M in mats:
            w = vec_mat(v, M, p)
            if space.add(w):
                queue.append(w)
    return space


def intertwiner_space_dim(mats_a, mats_b, p):
    """dim of {T : A_g T = T B_g for all g} over F_p.

    With the row-vector convention a nonzero intertwiner is a module
    homomorphism from the first module to the second.
    """
    da = len(mats_a[0]) if mats_a else 0
    db = len(mats_b[0]) if mats_b else 0
    if not mats_a:
        return da * db
    rows = []
    for A, B in zip(mats_a, mats_b):
        # (i,j) entry of A T - T B, linear in the da*db unknowns T[k][l]
        for i in range(da):
            for j in range(db):
                row = [0] * (da * db)
                for k in range(da):
                    row[k * db + j] = (row[k * db + j] + A[i][k]) % p
                for l in range(db):
                    row[i * db + l] = (row[i * db + l] - B[l][j]) % p
                rows.append(tuple(row))
    return len(right_nullspace(rows, p))


def fixed_subspace_dim(mats, p, dim):
    """dim of {v : v M = v for all M}."""
    if not mats:
        return dim
    # stack (M - I)^T blocks: right-nullspace vectors then satisfy v M = v
    rows = []
    for M in mats:
        MT = list(zip(*M))
        for i in range(dim):
            rows.append(tuple((MT[i][j] - (1 if i == j else 0)) % p for j in range(dim)))
    return len(right_nullspace(rows, p))


def proper_invariant_subspace(mats, p, dim, exhaustive_cap=65536, rng=None, rounds=40):
    """Search for a proper nonzero invariant subspace.

    Returns a witness basis (list of vectors) or None.  Exhaustive over all
    spin closures of single vectors when p**dim <= exhaustive_cap (sound and
    complete: any proper invariant subspace contains the spin of each of its
    nonzero vectors); otherwise a seeded randomized search on both the module
    and its dual (sound when it finds a witness, probabilistic otherwise).
    """
    if dim <= 1:
        return None
    if p ** dim <= exhaustive_cap:
        for code in range(1, p ** dim):
            v = _decode(code, p, dim)
            space = spin([v], mats, p)
            if 0 < space.dim() < dim:
                return [tuple(r) for r in space.rows]
        return None
    import random as _random
    rng = rng or _random.Random(0xC0FFEE)
    duals = [mat_inv([tuple(col) for col in zip(*M)], p) for M in mats]
    for _ in range(rounds):
        v = tuple(rng.randrange(p) for _ in range(dim))
        if any(v):
            space = spin([v], mats, p)
            if space.dim() < dim:
                return [tuple(r) for r in space.rows]
        w = tuple(rng.randrange(p) for _ in range(dim))
        if any(w):
            dspace = spin([w], duals, p)
            if dspace.dim() < dim:
                # orthogonal complement of a dual-invariant space is invariant
                comp = right_nullspace([tuple(r) for r in dspace.rows], p)
                if 0 < len(comp) < dim:
                    return comp
    return None


def _decode(code, p, dim):
    v = []
    for _ in range(dim):
        v.append(code % p)
        code //= p
    return tuple(v)


def encode_vector(v, p):
    code = 0
    for x in reversed(v):
        code = code * p + x
    return code


def decode_vector(code, p, dim):
    return _decode(code, p, dim)

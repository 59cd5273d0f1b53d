"""Exact F_p linear algebra, checked against hand or numpy-free brute force."""

from itertools import product

from crownforge.linalg import (
    fixed_subspace_dim,
    identity_matrix,
    intertwiner_space_dim,
    mat_inv,
    mat_mul,
    proper_invariant_subspace,
    rank,
    right_nullspace,
    spin,
    vec_mat,
)


def brute_rank(rows, p):
    """Rank as the log_p of the number of vectors in the row span."""
    if not rows:
        return 0
    span = {tuple([0] * len(rows[0]))}
    for row in rows:
        new = set()
        for v in span:
            for c in range(1, p):
                new.add(tuple((x + c * y) % p for x, y in zip(v, row)))
        span |= new
        # close under addition
        changed = True
        while changed:
            changed = False
            cur = list(span)
            for a in cur:
                for b in rows:
                    for c in range(p):
                        w = tuple((x + c * y) % p for x, y in zip(a, b))
                        if w not in span:
                            span.add(w)
                            changed = True
    k = 0
    while p ** k < len(span):
        k += 1
    assert p ** k == len(span)
    return k


def test_rank_vs_bruteforce():
    rows = [(1, 2, 0), (2, 4, 0), (0, 0, 1)]
    assert rank(rows, 5) == 2 == brute_rank(rows, 5)
    rows2 = [(1, 1), (1, 2)]
    assert rank(rows2, 3) == 2 == brute_rank(rows2, 3)
    assert rank([(0, 0)], 2) == 0


def test_nullspace():
    rows = [(1, 2, 3), (0, 1, 1)]
    basis = right_nullspace(rows, 5)
    assert len(basis) == 1
    v = basis[0]
    for row in rows:
        assert sum(a * b for a, b in zip(row, v)) % 5 == 0


def test_nullspace_exhaustive_small():
    # compare against brute enumeration of all vectors in F_3^3
    rows = [(1, 0, 2), (2, 0, 1)]
    basis = right_nullspace(rows, 3)
    brute = [v for v in product(range(3), repeat=3)
             if all(sum(a * b for a, b in zip(r, v)) % 3 == 0 for r in rows)]
    assert 3 ** len(basis) == len(brute)


def test_mat_inverse():
    A = [(1, 2), (3, 4)]
    Ai = mat_inv(A, 7)
    assert mat_mul(A, Ai, 7) == identity_matrix(2)
    try:
        mat_inv([(1, 2), (2, 4)], 7)
        assert False
    except ValueError:
        pass


def test_spin_and_invariant_subspace():
    p = 2
    # S3 ~ GL(2,2) natural module: irreducible
    a = [(0, 1), (1, 0)]      # swap
    b = [(0, 1), (1, 1)]      # order 3
    assert proper_invariant_subspace([a, b], p, 2) is None
    # single swap matrix: fixed vector (1,1) spans an invariant line
    witness = proper_invariant_subspace([a], p, 2)
    assert witness is not None
    space = spin([witness[0]], [a], p)
    assert space.dim() == 1


def test_intertwiners_schur():
    p = 2
    nat = [[(0, 1), (1, 0)], [(0, 1), (1, 1)]]   # GL(2,2) natural
    # self-intertwiners of an absolutely irreducible module: scalars only
    assert intertwiner_space_dim(nat[:], nat[:], p) == 1
    # C3 on F2^2 irreducible (but not absolutely): End = F4, dim 2
    c3 = [[(0, 1), (1, 1)]]
    assert intertwiner_space_dim(c3, c3, p) == 2
    # inequivalent: trivial 1-dim vs natural 2-dim has no nonzero map
    triv = [identity_matrix(1), identity_matrix(1)]
    assert intertwiner_space_dim(triv, nat, p) == 0


def test_fixed_subspace():
    p = 3
    neg = [[(p - 1,)]]
    assert fixed_subspace_dim(neg, p, 1) == 0
    assert fixed_subspace_dim([identity_matrix(2)], p, 2) == 2
    swap = [[(0, 1), (1, 0)]]
    assert fixed_subspace_dim(swap, p, 2) == 1


def test_vec_mat_convention():
    # row-vector action: e_i * M is row i of M
    M = [(1, 2), (3, 4)]
    assert vec_mat((1, 0), M, 5) == (1, 2)
    assert vec_mat((0, 1), M, 5) == (3, 4)

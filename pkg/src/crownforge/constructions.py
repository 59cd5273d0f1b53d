"""Builders for product-style groups: direct and wreath products, iterated
towers, crown-based powers, and module semidirect products.

Wreath layout: for W = wreath_product(H, K) with deg(H) = m, deg(K) = n,
block j (1-based) is the point range {(j-1)m+1 .. jm}; copies of H act inside
blocks and K permutes blocks.  The tower convention is W_i = G_i wr W_{i-1},
i.e. the later entries are the bottom copies of the next wreath.
"""

from __future__ import annotations

from .group import Homomorphism, PermGroup, is_normal, normal_closure, symmetric
from .limits import CapExceeded, ENUMERATION_CAP, FACTOR_CAP, max_degree
from .linalg import identity_matrix, vec_mat
from .perm import Permutation, PermError


def direct_product(G: PermGroup, H: PermGroup, name=None) -> PermGroup:
    """G x H acting on the disjoint union of the two domains."""
    n, m = G.degree, H.degree
    gens = [Permutation(g.images + tuple(range(n, n + m))) for g in G.generators]
    gens += [Permutation(tuple(range(n)) + tuple(n + x for x in h.images)) for h in H.generators]
    return PermGroup(n + m, gens, name=name or "(%s x %s)" % (G.name, H.name),
                     _known_order=G.order() * H.order())


class WreathProduct(PermGroup):
    """H wr K with K transitive of degree n: the base H^n extended by K."""

    def __init__(self, H: PermGroup, K: PermGroup):
        if not K.is_transitive():
            raise PermError("top group of a wreath product must be transitive")
        m, n = H.degree, K.degree
        if m * n > max_degree():
            raise CapExceeded("wreath degree %d exceeds cap" % (m * n))
        gens = [self._block_perm(h, 0, m, n) for h in H.generators]
        gens += [self._top_perm(k, m, n) for k in K.generators]
        super().__init__(m * n, gens, name="(%s wr %s)" % (H.name, K.name),
                         _known_order=H.order() ** n * K.order())
        self.H = H
        self.K = K
        self.block_size = m
        self.num_blocks = n

    @staticmethod
    def _block_perm(h, block, m, n):
        images = list(range(m * n))
        off = block * m
        for i, x in enumerate(h.images):
            images[off + i] = off + x
        return Permutation(images)

    @staticmethod
    def _top_perm(k, m, n):
        images = [0] * (m * n)
        for j in range(n):
            tgt = k.images[j]
            for i in range(m):
                images[j * m + i] = tgt * m + i
        return Permutation(images)

    def embed_block(self, h: Permutation, block: int) -> Permutation:
        """Copy of an H-element inside 1-based block number `block`."""
        return self._block_perm(h, block - 1, self.block_size, self.num_blocks)

    def embed_top(self, k: Permutation) -> Permutation:
        return self._top_perm(k, self.block_size, self.num_blocks)

    def base_group(self) -> PermGroup:
        """The base subgroup H^n (one copy of H per block)."""
        gens = []
        for j in range(self.num_blocks):
            gens += [self._block_perm(h, j, self.block_size, self.num_blocks)
                     for h in self.H.generators]
        return PermGroup(self.degree, gens,
                         _known_order=self.H.order() ** self.num_blocks)

    def base_derived_subgroup(self) -> PermGroup:
        """(H')^n, the derived subgroup of the base when H' is known."""
        from .group import derived_subgroup
        Hp = derived_subgroup(self.H)
        gens = []
        for j in range(self.num_blocks):
            gens += [self._block_perm(h, j, self.block_size, self.num_blocks)
                     for h in Hp.generators]
        return PermGroup(self.degree, gens,
                         _known_order=Hp.order() ** self.num_blocks)


def wreath_product(H: PermGroup, K: PermGroup) -> WreathProduct:
    return WreathProduct(H, K)


class GroupSequence:
    """An ordered list of transitive permutation groups."""

    def __init__(self, groups):
        self.groups = list(groups)
        for i, g in enumerate(self.groups):
            if not g.is_transitive():
                raise PermError("sequence entry %d is not transitive" % (i + 1))

    def __len__(self):
        return len(self.groups)

    def __getitem__(self, i):
        return self.groups[i]

    def degrees(self):
        return [g.degree for g in self.groups]


def iterated_wreath(seq: GroupSequence, m: int) -> PermGroup:
    """W_m = G_m wr ... wr G_2 wr G_1, built as W_i = G_i wr W_{i-1}."""
    if not 1 <= m <= len(seq):
        raise ValueError("tower height %d outside 1..%d" % (m, len(seq)))
    W = seq[0]
    for i in range(1, m):
        W = wreath_product(seq[i], W)
    return W


def _conjugation_action(G: PermGroup, elements) -> Homomorphism:
    """Action of G by conjugation on a conjugation-closed element list."""
    index = {p.images: i for i, p in enumerate(elements)}
    images = []
    for g in G.generators:
        gi = g.inverse()
        im = [index[(gi * p * g).images] for p in elements]
        images.append(Permutation(im))
    target = symmetric(len(elements)) if len(elements) > 1 else PermGroup(1, [])
    return Homomorphism(G, target, images)


def verify_socle(L: PermGroup, A: PermGroup, cap=FACTOR_CAP):
    """Check that A is the unique minimal normal subgroup of L (or A = L simple).

    Exhaustive: every nontrivial element of A must have normal closure A, and
    every nontrivial element of the centralizer C_L(A) must have a normal
    closure containing A (elements outside C_L(A) are covered by minimality:
    their closure meets A nontrivially).  Sizes are capped; larger inputs are
    refused rather than left unverified.
    """
    if A.is_trivial():
        raise PermError("socle candidate is trivial")
    if not is_normal(L, A):
        raise PermError("socle candidate is not normal")
    try:
        a_elems = A.elements(cap)
    except CapExceeded:
        raise CapExceeded("socle verification refuses |A| > %d" % cap)
    a_order = A.order()
    seen_classes = set()
    for a in a_elems:
        if a.is_identity() or a.images in seen_classes:
            continue
        # the closure is conjugation-invariant, so mark the whole L-class
        cls = {a.images}
        queue = [a.images]
        while queue:
            x = queue.pop()
            for g in L.generators:
                y = (Permutation(x).conjugate(g)).images
                if y not in cls:
                    cls.add(y)
                    queue.append(y)
        seen_classes |= cls
        if normal_closure(L, [a]).order() != a_order:
            raise PermError("socle candidate is not a minimal normal subgroup")
    conj = _conjugation_action(L, a_elems)
    C = conj.kernel()
    if C.order() > 1:
        c_elems = C.elements(cap)
        for c in c_elems:
            if c.is_identity():
                continue
            ncl = normal_closure(L, [c])
            if not all(ncl.contains(a) for a in A.generators):
                raise PermError("socle candidate is not the unique minimal normal subgroup")
    return True


def crown_based_power(L: PermGroup, A: PermGroup, k: int) -> PermGroup:
    """Subgroup of L^k of tuples congruent modulo the socle A.

    Acts on k disjoint copies of L's domain; generated by the diagonal image
    of L together with one copy of A's generators per component.
    """
    if k < 1:
        raise ValueError("crown-based power size must be >= 1")
    verify_socle(L, A)
    if k == 1:
        return L
    d = L.degree
    deg = d * k
    if deg > max_degree():
        raise CapExceeded("crown-based power degree %d exceeds cap" % deg)
    gens = []
    for g in L.generators:
        images = []
        for j in range(k):
            images.extend(j * d + x for x in g.images)
        gens.append(Permutation(images))
    for j in range(k):
        for a in A.generators:
            images = list(range(deg))
            for i, x in enumerate(a.images):
                images[j * d + i] = j * d + x
            gens.append(Permutation(images))
    order = A.order() ** k * (L.order() // A.order())
    return PermGroup(deg, gens, name="(%s)_%d" % (L.name or "L", k), _known_order=order)


class ModuleAction:
    """An F_p-module structure for a group, one invertible matrix per generator.

    Row-vector convention: g sends v to v*M(g).  The action is realized as a
    permutation representation on the p^dim vectors, which both validates the
    assignment (the graph-group order check) and evaluates matrices of
    arbitrary elements, including strong generators.
    """

    def __init__(self, group: PermGroup, prime: int, matrices, check=True):
        self.group = group
        self.prime = prime
        self.matrices = [tuple(tuple(x % prime for x in row) for row in M) for M in matrices]
        if len(self.matrices) != len(group.generators):
            raise ValueError("need one matrix per group generator")
        self.dim = len(self.matrices[0]) if self.matrices else 1
        for M in self.matrices:
            if len(M) != self.dim or any(len(r) != self.dim for r in M):
                raise ValueError("matrices must share one square shape")
        size = prime ** self.dim
        if size > FACTOR_CAP:
            raise CapExceeded("module with %d vectors exceeds cap" % size)
        self._codes = _vector_codes(prime, self.dim)
        perms = []
        for M in self.matrices:
            try:
                perms.append(Permutation([_code(vec_mat(v, M, prime), prime)
                                          for v in self._codes]))
            except PermError:
                raise ValueError("matrix is not invertible mod %d" % prime)
        target = symmetric(size) if size > 1 else PermGroup(1, [])
        self._hom = Homomorphism(group, target, perms)
        if check and not self._hom.is_homomorphism():
            raise ValueError("matrices violate the group relations")

    def validate(self) -> bool:
        return self._hom.is_homomorphism()

    def is_trivial(self) -> bool:
        ident = identity_matrix(self.dim)
        return all(list(map(list, M)) == [list(r) for r in ident] for M in self.matrices)

    def matrix_of(self, g: Permutation):
        """Action matrix of an arbitrary group element."""
        pi = self._hom(g)
        rows = []
        for i in range(self.dim):
            e = tuple(1 if j == i else 0 for j in range(self.dim))
            rows.append(self._codes[pi.images[_code(e, self.prime)]])
        return rows

    def vector_permutation(self, g: Permutation) -> Permutation:
        return self._hom(g)

    def kernel(self) -> PermGroup:
        return self._hom.kernel()


def _vector_codes(p, dim):
    out = []
    for code in range(p ** dim):
        v = []
        c = code
        for _ in range(dim):
            v.append(c % p)
            c //= p
        out.append(tuple(v))
    return out


def _code(v, p):
    c = 0
    for x in reversed(v):
        c = c * p + x
    return c


class SemidirectProduct:
    """M ⋊ G on the disjoint union of the p^dim module points and G's domain."""

    def __init__(self, act: ModuleAction):
        if not act.validate():
            raise ValueError("matrices violate the group relations")
        self.action = act
        G = act.group
        p, dim = act.prime, act.dim
        size = p ** dim
        self.module_offset = 0
        self.group_offset = size
        deg = size + G.degree
        if deg > max_degree():
            raise CapExceeded("semidirect degree %d exceeds cap" % deg)
        codes = act._codes
        gens = []
        # module translations, one per basis vector
        for i in range(dim):
            e = tuple(1 if j == i else 0 for j in range(dim))
            images = [_code(tuple((a + b) % p for a, b in zip(v, e)), p) for v in codes]
            images += list(range(size, deg))
            gens.append(Permutation(images))
        # acting-group generators, twisting the module
        for g, M in zip(G.generators, act.matrices):
            images = [_code(vec_mat(v, M, p), p) for v in codes]
            images += [size + x for x in g.images]
            gens.append(Permutation(images))
        self.group = PermGroup(deg, gens, name="(F_%d^%d x| %s)" % (p, dim, G.name),
                               _known_order=size * G.order())
        self._dim = dim
        self._p = p
        self._codes = codes

    def translation(self, vector) -> Permutation:
        """The module element adding `vector`."""
        p = self._p
        deg = self.group.degree
        size = len(self._codes)
        images = [_code(tuple((a + b) % p for a, b in zip(v, vector)), p)
                  for v in self._codes]
        images += list(range(size, deg))
        return Permutation(images)

    def module_subgroup(self) -> PermGroup:
        gens = [self.group.generators[i] for i in range(self._dim)]
        return PermGroup(self.group.degree, gens, _known_order=self._p ** self._dim)

    def embed_acting(self, g: Permutation) -> Permutation:
        """Image of an acting-group element inside the product."""
        M = self.action.matrix_of(g)
        p = self._p
        size = len(self._codes)
        images = [_code(vec_mat(v, M, p), p) for v in self._codes]
        images += [size + x for x in g.images]
        return Permutation(images)


def module_semidirect(act: ModuleAction) -> SemidirectProduct:
    return SemidirectProduct(act)


def trivial_action(G: PermGroup, prime: int, dim: int = 1) -> ModuleAction:
    return ModuleAction(G, prime, [identity_matrix(dim) for _ in G.generators])

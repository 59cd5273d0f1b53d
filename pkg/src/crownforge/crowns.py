"""Chief series, Frattini detection, equivalence of chief factors, and crowns.

A chief factor X/Y is realized on its own element set: elements are canonical
right-coset representatives against Y's stabilizer chain, the ambient group
acts by conjugation, and everything else (centralizers, module structure,
equivalence tests) is computed on that realization.

Equivalence of nonabelian factors is decided at the outer-automorphism level:
factors are equivalent iff they have the same inner-inducer subgroup and some
isomorphism between them carries one induced outer action to the other.  The
maximal-subgroup characterization is kept as an independent oracle in
equivalence_oracle.py.
"""

from __future__ import annotations

from random import Random

from .cohomology import presentation_from_chain
from .constructions import ModuleAction, module_semidirect
from .group import (
    Homomorphism,
    PermGroup,
    is_normal,
    is_subgroup,
    normal_closure,
    quotient_group,
    same_subgroup,
    symmetric,
)
from .limits import CapExceeded, FACTOR_CAP
from .linalg import intertwiner_space_dim, right_nullspace, rref
from .perm import Permutation, _identity, _inv, _mul


class ChiefVerificationError(RuntimeError):
    pass


class ChiefFactor:
    """A factor X/Y of consecutive normal subgroups of an ambient group."""

    def __init__(self, ambient: PermGroup, X: PermGroup, Y: PermGroup):
        self.ambient = ambient
        self.X = X
        self.Y = Y
        self.order = X.order() // Y.order()
        self.synthetic_trivial = False
        self._elements = None
        self._index = None
        self._conj_images = None  # per ambient generator, list of image indices
        self._mult_cache = {}
        self._inv_cache = {}
        self._elt_order = None
        self._abelian = None
        self._prime = None
        self._dim = None
        self._coords = None
        self._basis = None
        self._conj_hom = None
        self._centralizer = None
        self._frattini = None
        self._module_action = None
        self._quot = None
        self._delta = None
        self._own_gens = None

    # -- realization -------------------------------------------------------

    def _realize(self):
        if self._elements is not None:
            return
        if self.order > FACTOR_CAP:
            raise CapExceeded("chief factor of order %d exceeds cap %d"
                              % (self.order, FACTOR_CAP))
        ychain = self.Y.chain()
        canon = ychain.min_coset_rep
        start = canon(_identity(self.ambient.degree))
        elements = [start]
        index = {start: 0}
        xgens = [g.images for g in self.X.generators]
        k = 0
        while k < len(elements):
            r = elements[k]
            k += 1
            for g in xgens:
                nxt = canon(_mul(r, g))
                if nxt not in index:
                    index[nxt] = len(elements)
                    elements.append(nxt)
        assert len(elements) == self.order, "coset enumeration does not match the order"
        self._elements = elements
        self._index = index
        self._canon = canon
        gens = [g.images for g in self.ambient.generators]
        self._conj_images = [
            [index[canon(_mul(_mul(_inv(g), r), g))] for r in elements] for g in gens
        ]
        # images of X's generators inside the factor generate it
        self._own_gens = sorted({index[canon(g)] for g in xgens} - {0})

    def elements(self):
        self._realize()
        return self._elements

    def size(self):
        return self.order

    def mult(self, i, j):
        key = (i, j)
        got = self._mult_cache.get(key)
        if got is None:
            got = self._index[self._canon(_mul(self._elements[i], self._elements[j]))]
            self._mult_cache[key] = got
        return got

    def inv(self, i):
        got = self._inv_cache.get(i)
        if got is None:
            got = self._index[self._canon(_inv(self._elements[i]))]
            self._inv_cache[i] = got
        return got

    def element_order(self, i):
        if self._elt_order is None:
            self._elt_order = {}
        got = self._elt_order.get(i)
        if got is None:
            n, j = 1, i
            while j != 0:
                j = self.mult(j, i)
                n += 1
            got = n
            self._elt_order[i] = got
        return got

    def own_generators(self):
        """Indices generating the factor as a group."""
        self._realize()
        return self._own_gens

    def conj_images(self):
        self._realize()
        return self._conj_images

    def conj_perm_of(self, g: Permutation):
        """Index permutation induced by conjugation with an arbitrary element."""
        self._realize()
        if len(self._elements) == 1:
            return Permutation.identity(1)
        return self.conj_hom()(g)

    def conj_hom(self) -> Homomorphism:
        self._realize()
        if self._conj_hom is None:
            m = len(self._elements)
            target = symmetric(m) if m > 1 else PermGroup(1, [])
            self._conj_hom = Homomorphism(
                self.ambient, target, [Permutation(im) for im in self._conj_images])
        return self._conj_hom

    def conjugation_orbit_reps(self):
        """One element index per orbit of the ambient conjugation action."""
        self._realize()
        n = len(self._elements)
        seen = [False] * n
        reps = []
        for i in range(n):
            if seen[i]:
                continue
            reps.append(i)
            stack = [i]
            seen[i] = True
            while stack:
                x = stack.pop()
                for im in self._conj_images:
                    if not seen[im[x]]:
                        seen[im[x]] = True
                        stack.append(im[x])
        return reps

    # -- structure -----------------------------------------------------------

    def abelian(self) -> bool:
        if self._abelian is None:
            self._realize()
            gens = self.own_generators()
            self._abelian = all(
                self.mult(a, b) == self.mult(b, a) for a in gens for b in gens)
        return self._abelian

    def prime(self) -> int:
        if self._prime is None:
            n = self.order
            p = 2
            while n % p:
                p += 1
            self._prime = p
        return self._prime

    def dim(self) -> int:
        if self._dim is None:
            p = self.prime()
            n, d = self.order, 0
            while n > 1:
                assert n % p == 0, "abelian chief factor is not of prime-power order"
                n //= p
                d += 1
            self._dim = d
        return self._dim

    def _linearize(self):
        """Choose a basis of the elementary abelian factor and coordinates."""
        if self._coords is not None:
            return
        assert self.abelian()
        p, dim = self.prime(), self.dim()
        coords = {0: ()}
        basis = []
        for i in range(len(self._elements)):
            if i in coords:
                continue
            basis.append(i)
            pos = len(basis) - 1
            new = {}
            for idx, vec in coords.items():
                cur = idx
                for c in range(1, p):
                    cur = self.mult(cur, i)
                    new[cur] = vec + ((pos, c),)
            coords.update(new)
        def expand(vec):
            out = [0] * dim
            for pos, c in vec:
                out[pos] = c
            return tuple(out)
        self._coords = {idx: expand(v) for idx, v in coords.items()}
        self._basis = basis
        assert len(self._coords) == self.order

    def coordinates(self, i):
        self._linearize()
        return self._coords[i]

    def element_of_coords(self, vec):
        self._linearize()
        idx = 0
        for pos, c in enumerate(vec):
            for _ in range(c):
                idx = self.mult(idx, self._basis[pos])
        return idx

    def matrices(self):
        """Conjugation matrices, one per ambient generator (row convention)."""
        self._linearize()
        out = []
        for im in self._conj_images:
            rows = [self._coords[im[b]] for b in self._basis]
            out.append(tuple(rows))
        return out

    def matrix_of(self, g: Permutation):
        self._linearize()
        pi = self.conj_perm_of(g)
        return tuple(self._coords[pi.images[b]] for b in self._basis)

    def module_action(self) -> ModuleAction:
        if self._module_action is None:
            self._module_action = ModuleAction(self.ambient, self.prime(), self.matrices())
        return self._module_action

    def centralizer(self) -> PermGroup:
        """C_G(X/Y) as the stabilizer of the tuple of generator cosets.

        An element centralizes the factor iff it fixes each generator coset
        under conjugation (the commutator condition on generators extends to
        products since Y is normal); orbit-stabilizer gives the exact order
        and the Schreier generators generate the stabilizer.
        """
        if self._centralizer is None:
            self._realize()
            gens_idx = self.own_generators()
            if not gens_idx:
                self._centralizer = self.ambient
                return self._centralizer
            from .group import StabilizerChain
            amb = [g.images for g in self.ambient.generators]
            conj = self._conj_images
            degree = self.ambient.degree
            start = tuple(gens_idx)
            transversal = {start: _identity(degree)}
            queue = [start]
            while queue:
                tup = queue.pop()
                t = transversal[tup]
                for gi, arr in enumerate(conj):
                    img = tuple(arr[x] for x in tup)
                    if img not in transversal:
                        transversal[img] = _mul(t, amb[gi])
                        queue.append(img)
            target = self.ambient.order() // len(transversal)
            chain = StabilizerChain(degree, [], known_order=target)
            cgens = []
            done = False
            for tup, t in transversal.items():
                if done:
                    break
                for gi, arr in enumerate(conj):
                    img = tuple(arr[x] for x in tup)
                    u = _mul(_mul(t, amb[gi]), _inv(transversal[img]))
                    if not chain.contains(u):
                        cgens.append(Permutation(u))
                        chain.extend(u)
                        if chain.order() == target:
                            done = True
                            break
            assert chain.order() == target, "Schreier stabilizer generation failed"
            self._centralizer = PermGroup(degree, cgens, _known_order=target)
        return self._centralizer

    def quotient_action(self):
        """The induced module action of G/C_G(factor); cached."""
        if self._quot is None:
            C = self.centralizer()
            Q, pi = quotient_group(self.ambient, C)
            mats = []
            for q in Q.generators:
                rep = pi.coset_reps[q.images[0]]
                mats.append(self.matrix_of(rep))
            act = ModuleAction(Q, self.prime(), mats)
            self._quot = (Q, pi, act)
        return self._quot[2]

    def quotient_projection(self):
        self.quotient_action()
        return self._quot[0], self._quot[1]

    def inner_inducer(self) -> PermGroup:
        """Elements inducing inner automorphisms on the factor: X * C_G(factor)."""
        if self.synthetic_trivial:
            return self.ambient
        gens = list(self.X.generators) + list(self.centralizer().generators)
        return PermGroup(self.ambient.degree, gens)

    def delta(self) -> int:
        """Multiplicity of this crown; computed through a chief series on demand."""
        if self._delta is None:
            ser = chief_series(self.ambient, through=(self.X, self.Y))
            self._delta = delta(self.ambient, ser, self)
        return self._delta

    def trivial_twin(self) -> "ChiefFactor":
        """Same group with the trivial ambient action (for equivalence tests)."""
        self._realize()
        twin = ChiefFactor.__new__(ChiefFactor)
        twin.__dict__.update({k: None for k in self.__dict__})
        twin.ambient = self.ambient
        twin.X, twin.Y = self.X, self.Y
        twin.order = self.order
        twin.synthetic_trivial = True
        twin._elements = self._elements
        twin._index = self._index
        twin._canon = self._canon
        twin._own_gens = self._own_gens
        twin._mult_cache = self._mult_cache
        twin._inv_cache = self._inv_cache
        twin._elt_order = self._elt_order
        twin._abelian = self._abelian
        twin._conj_images = [list(range(self.order))
                             for _ in self.ambient.generators]
        twin._conj_hom = None
        twin._centralizer = self.ambient
        twin._delta = None
        twin._frattini = None
        twin._coords = None
        twin._quot = None
        twin._module_action = None
        twin._prime = self._prime
        twin._dim = self._dim
        twin._basis = None
        return twin

    # -- Frattini / complements ---------------------------------------------

    def is_frattini(self) -> bool:
        if self._frattini is None:
            if not self.abelian():
                self._frattini = False
            else:
                self._frattini = self._complement_search(want_all=False) is None
        return self._frattini

    def complements(self, cap=256):
        """Complements to the factor in the ambient group (a list, capped)."""
        found = self._complement_search(want_all=True, cap=cap)
        return found or []

    def _complement_search(self, want_all, cap=256):
        """Complement lifting through G/X: corrections to the lifted strong
        generators of G/X range over the factor; since the factor is an
        abelian G-module the relator conditions are affine in the corrections,
        with coefficients derived from honest in-group relator evaluations and
        cross-checked against direct evaluation on sample tuples."""
        G, X, Y = self.ambient, self.X, self.Y
        self._linearize()
        p, dim = self.prime(), self.dim()
        Q2, pi2 = quotient_group(G, X)
        pres = presentation_from_chain(Q2)
        g = len(pres.strong_gens)
        lifts = [pi2.lift(s) for s in pres.strong_gens]
        basis_reps = [Permutation(self._elements[b]) for b in self._basis]

        def evaluate(word, gens):
            acc = Permutation.identity(G.degree)
            for letter in word:
                x = gens[abs(letter) - 1]
                acc = acc * (x.inverse() if letter < 0 else x)
            return acc

        def factor_coords(perm):
            idx = self._index.get(self._canon(perm.images))
            assert idx is not None, "relator value escaped the factor"
            return self._coords[idx]

        base_vals = [factor_coords(evaluate(w, lifts)) for w in pres.relators]
        # affine coefficients: effect of a single basis correction at slot j
        coeff = []  # coeff[w][j] is a dim x dim matrix (rows per basis vector)
        for wi, w in enumerate(pres.relators):
            per_slot = []
            for j in range(g):
                rows = []
                for b in range(dim):
                    mod = list(lifts)
                    mod[j] = lifts[j] * basis_reps[b]
                    val = factor_coords(evaluate(w, mod))
                    rows.append(tuple((val[c] - base_vals[wi][c]) % p
                                      for c in range(dim)))
                per_slot.append(rows)
            coeff.append(per_slot)

        # affinity self-check on a couple of random correction tuples
        rng = Random("frattini:%d:%d" % (self.order, g))
        for _ in range(2):
            combo = [tuple(rng.randrange(p) for _ in range(dim)) for _ in range(g)]
            mod = [lifts[j] * Permutation(self._elements[self.element_of_coords(combo[j])])
                   for j in range(g)]
            for wi, w in enumerate(pres.relators[: min(len(pres.relators), 12)]):
                honest = factor_coords(evaluate(w, mod))
                pred = list(base_vals[wi])
                for j in range(g):
                    for b in range(dim):
                        for c in range(dim):
                            pred[c] = (pred[c] + combo[j][b] * coeff[wi][j][b][c]) % p
                assert tuple(pred) == honest, "relator map is not affine"

        # solve: base + sum_j m_j . A_wj = 0
        unknowns = g * dim
        rows = []
        rhs = []
        for wi in range(len(pres.relators)):
            for c in range(dim):
                row = [0] * unknowns
                for j in range(g):
                    for b in range(dim):
                        row[j * dim + b] = coeff[wi][j][b][c]
                rows.append(tuple(row))
                rhs.append((-base_vals[wi][c]) % p)
        solutions = _affine_solutions(rows, rhs, unknowns, p, cap)
        if solutions is None:
            return None
        out = []
        for sol in solutions:
            corrected = [lifts[j] * Permutation(
                self._elements[self.element_of_coords(tuple(sol[j * dim: (j + 1) * dim]))])
                for j in range(g)]
            U = PermGroup(G.degree, list(Y.generators) + corrected)
            expect = G.order() // self.order
            assert U.order() == expect, "lifted subgroup has the wrong order"
            join = PermGroup(G.degree, list(U.generators) + list(X.generators))
            assert join.order() == G.order(), "lifted subgroup does not supplement"
            if not want_all:
                return U
            out.append(U)
        return out if out else None


def _affine_solutions(rows, rhs, unknowns, p, cap):
    """Solutions of rows . m = rhs over F_p, None if inconsistent; capped list."""
    if not rows:
        rows = [tuple([0] * unknowns)]
        rhs = [0]
    aug = [tuple(list(r) + [b]) for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, p)
    if unknowns in pivots:
        return None
    particular = [0] * unknowns
    for row, c in zip(red, pivots):
        particular[c] = row[-1]
    null = right_nullspace([r[:-1] for r in red] or [tuple([0] * unknowns)], p)
    sols = [tuple(particular)]
    for v in null:
        fresh = []
        for s in sols:
            for c in range(1, p):
                cand = tuple((x + c * y) % p for x, y in zip(s, v))
                fresh.append(cand)
        sols.extend(fresh)
        if len(sols) >= cap:
            break
    return sols[:cap]


# -- chief series ---------------------------------------------------------


class ChiefSeries:
    """Descending maximal chain of normal subgroups with its factors."""

    def __init__(self, group, normals):
        self.group = group
        self.normals = normals  # [G, ..., 1]
        self.factors = [ChiefFactor(group, normals[i], normals[i + 1])
                        for i in range(len(normals) - 1)]

    def factor_orders(self):
        """Bottom-up list of chief factor orders."""
        return [f.order for f in reversed(self.factors)]


def chief_series(G: PermGroup, through=(), seed=0) -> ChiefSeries:
    """Randomized descent refined to a maximal chain of normal subgroups.

    Descent inserts normal closures of random elements; a factor is accepted
    as chief only after exhaustive minimality verification (over conjugation
    orbit representatives of its element set, capped at FACTOR_CAP).
    """
    rng = Random("chief:%s:%s" % (seed, G.order()))
    if G.order() == 1:
        return ChiefSeries(G, [G])
    chain = [G]
    for N in sorted(through, key=lambda n: -n.order()):
        if N.order() == G.order() or N.order() == 1:
            continue
        if not is_normal(G, N):
            raise ChiefVerificationError("prescribed subgroup is not normal")
        if not is_subgroup(chain[-1], N):
            raise ChiefVerificationError("prescribed subgroups are not nested")
        if N.order() != chain[-1].order():
            chain.append(N)
    chain.append(PermGroup(G.degree, []))
    i = 0
    while i < len(chain) - 1:
        X, Y = chain[i], chain[i + 1]
        N = _intermediate_normal(G, X, Y, rng)
        if N is None:
            i += 1
        else:
            chain.insert(i + 1, N)
    return ChiefSeries(G, chain)


def _intermediate_normal(G, X, Y, rng, tries=3):
    """A normal subgroup strictly between Y and X, or None if X/Y is chief
    (verified exhaustively on the realized factor)."""
    xorder, yorder = X.order(), Y.order()
    for _ in range(tries):
        x = None
        for _ in range(40):
            cand = X.random_element(rng)
            if not Y.contains(cand):
                x = cand
                break
        if x is None:
            raise ChiefVerificationError("could not sample outside the lower term")
        N = normal_closure(G, list(Y.generators) + [x])
        if N.order() < xorder:
            return N
    factor = ChiefFactor(G, X, Y)
    for rep in factor.conjugation_orbit_reps():
        if rep == 0:
            continue
        N = normal_closure(G, list(Y.generators) + [Permutation(factor.elements()[rep])])
        if N.order() < xorder:
            return N
    return None


# -- equivalence ----------------------------------------------------------


def factor_same(a: ChiefFactor, b: ChiefFactor) -> bool:
    return (a.order == b.order and not a.synthetic_trivial and not b.synthetic_trivial
            and same_subgroup(a.X, b.X) and same_subgroup(a.Y, b.Y))


def g_equivalent(G: PermGroup, a: ChiefFactor, b: ChiefFactor) -> bool:
    """Equivalence of irreducible factors as G-groups.

    Abelian pairs: same prime and a nonzero intertwiner between the two
    conjugation modules (any nonzero map between irreducibles is invertible).
    Nonabelian pairs: equal inner-inducer subgroups plus an isomorphism
    carrying one induced outer action to the other.
    """
    if a is b:
        return True
    if a.ambient is not G or b.ambient is not G:
        raise ValueError("factors must share the ambient group")
    if a.order != b.order:
        return False
    if a.abelian() != b.abelian():
        return False
    if not a.synthetic_trivial and not b.synthetic_trivial and factor_same(a, b):
        return True
    if a.abelian():
        if a.prime() != b.prime():
            return False
        return intertwiner_space_dim(list(a.matrices()), list(b.matrices()),
                                     a.prime()) > 0
    if not same_subgroup(a.inner_inducer(), b.inner_inducer()):
        return False
    return _compatible_iso_exists(a, b, mod_inner=True)


def g_isomorphic(G: PermGroup, a: ChiefFactor, b: ChiefFactor) -> bool:
    """Strict G-isomorphism (the action diagrams commute exactly)."""
    if a is b or (not a.synthetic_trivial and not b.synthetic_trivial
                  and factor_same(a, b)):
        return True
    if a.order != b.order or a.abelian() != b.abelian():
        return False
    if a.abelian():
        if a.prime() != b.prime():
            return False
        return intertwiner_space_dim(list(a.matrices()), list(b.matrices()),
                                     a.prime()) > 0
    return _compatible_iso_exists(a, b, mod_inner=False)


def _factor_generating_pair(f: ChiefFactor):
    """Indices (i, j) generating the factor; small factors only."""
    n = f.size()
    candidates = sorted(range(1, n), key=lambda i: (-f.element_order(i), i))
    for i in candidates[: min(len(candidates), 60)]:
        for j in candidates:
            if _closure_size(f, (i, j)) == n:
                return i, j
    raise CapExceeded("no generating pair found for the factor")


def _closure_size(f, gens):
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for g in gens:
            y = f.mult(x, g)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen)


def _factor_classes(f: ChiefFactor):
    """Conjugacy classes of the factor as a group (not the ambient action)."""
    n = f.size()
    gens = f.own_generators()
    cls = [None] * n
    out = []
    for i in range(n):
        if cls[i] is not None:
            continue
        members = [i]
        cls[i] = len(out)
        stack = [i]
        while stack:
            x = stack.pop()
            for g in gens:
                y = f.mult(f.mult(f.inv(g), x), g)
                if cls[y] is None:
                    cls[y] = len(out)
                    members.append(y)
                    stack.append(y)
        out.append(members)
    return out, cls


def _hom_from_pair(f_a, gens_a, f_b, imgs_b):
    """Extend gens_a -> imgs_b to a homomorphism by spanning the Cayley graph;
    returns the image array or None if any closure edge breaks."""
    n = f_a.size()
    phi = [None] * n
    phi[0] = 0
    order = [0]
    k = 0
    while k < len(order):
        x = order[k]
        k += 1
        for g, gb in zip(gens_a, imgs_b):
            y = f_a.mult(x, g)
            fy = f_b.mult(phi[x], gb)
            if phi[y] is None:
                phi[y] = fy
                order.append(y)
            elif phi[y] != fy:
                return None
    if len(order) != n or len(set(phi)) != n:
        return None
    return phi


def _compatible_iso_exists(a: ChiefFactor, b: ChiefFactor, mod_inner: bool) -> bool:
    n = a.size()
    if n != b.size():
        return False
    if n > 5000:
        raise CapExceeded("nonabelian equivalence capped at factor size 5000")
    ga1, ga2 = _factor_generating_pair(a)
    classes_b, class_of_b = _factor_classes(b)
    ord1, ord2 = a.element_order(ga1), a.element_order(ga2)
    ord12 = a.element_order(a.mult(ga1, ga2))
    class_sizes_a, _ = _factor_classes(a)
    size1 = next(len(c) for c in class_sizes_a if ga1 in c)
    size2 = next(len(c) for c in class_sizes_a if ga2 in c)

    if mod_inner:
        cand1 = [c[0] for c in classes_b
                 if b.element_order(c[0]) == ord1 and len(c) == size1]
    else:
        cand1 = [i for i in range(n) if b.element_order(i) == ord1
                 and len(classes_b[class_of_b[i]]) == size1]
    cand2 = [i for i in range(n) if b.element_order(i) == ord2
             and len(classes_b[class_of_b[i]]) == size2]

    inn_b = None
    if mod_inner:
        m = b.size()
        inn_gens = []
        for g in b.own_generators():
            gi = b.inv(g)
            inn_gens.append(Permutation([b.mult(b.mult(gi, x), g) for x in range(m)]))
        inn_b = PermGroup(m, inn_gens, _known_order=m)

    amb_gens = a.ambient.generators
    ca = a.conj_images()
    cb = b.conj_images()

    for x1 in cand1:
        for x2 in cand2:
            if b.element_order(b.mult(x1, x2)) != ord12:
                continue
            phi = _hom_from_pair(a, (ga1, ga2), b, (x1, x2))
            if phi is None:
                continue
            phi_inv = [0] * n
            for i, v in enumerate(phi):
                phi_inv[v] = i
            ok = True
            for gi in range(len(amb_gens)):
                # psi = phi o c_a(g) o phi^{-1} on b's element set
                psi = [phi[ca[gi][phi_inv[j]]] for j in range(n)]
                if mod_inner:
                    test = Permutation(psi) * Permutation(cb[gi]).inverse()
                    if not inn_b.contains(test):
                        ok = False
                        break
                else:
                    if psi != list(cb[gi]):
                        ok = False
                        break
            if ok:
                return True
    return False


# -- crown-level operations -------------------------------------------------


def is_frattini_factor(G: PermGroup, f: ChiefFactor) -> bool:
    return f.is_frattini()


def factor_centralizer(G: PermGroup, f: ChiefFactor) -> PermGroup:
    return f.centralizer()


def inner_inducer(G: PermGroup, f: ChiefFactor) -> PermGroup:
    return f.inner_inducer()


def delta(G: PermGroup, series: ChiefSeries, f: ChiefFactor) -> int:
    """Number of non-Frattini factors of the series equivalent to f."""
    if f.is_frattini():
        raise ValueError("multiplicity is defined for non-Frattini factors")
    count = 0
    for other in series.factors:
        if other.is_frattini():
            continue
        if g_equivalent(G, f, other):
            count += 1
    return count


def monolithic_group(G: PermGroup, f: ChiefFactor) -> PermGroup:
    return monolithic_with_socle(G, f)[0]


def monolithic_with_socle(G: PermGroup, f: ChiefFactor):
    """The monolithic primitive group of a non-Frattini factor, with its socle."""
    if f.abelian():
        act = f.quotient_action()
        sd = module_semidirect(act)
        return sd.group, sd.module_subgroup()
    C = f.centralizer()
    L, pi = quotient_group(G, C)
    soc = PermGroup(L.degree, [pi(x) for x in f.X.generators])
    return L, soc


def _intersect_normals(G: PermGroup, A: PermGroup, B: PermGroup) -> PermGroup:
    """Intersection of two normal subgroups via the coset action of one."""
    from .group import coset_action
    f = coset_action(G, B)
    sub_images = [f(a) for a in A.generators]
    hom = Homomorphism(A, f.target, sub_images)
    return hom.kernel()


def crown_radical(G: PermGroup, f: ChiefFactor, seeds=(0, 1, 2)) -> PermGroup:
    """Intersection of the kernels of all discovered projections onto the
    monolithic group; verified against |G/R| = |soc|^delta * |L/soc| and never
    silently accepted."""
    L, soc = monolithic_with_socle(G, f)
    dlt = f.delta()
    target_index = soc.order() ** dlt * (L.order() // soc.order())
    R = None
    for seed in seeds:
        ser = chief_series(G, through=(f.X, f.Y), seed=seed)
        for other in ser.factors:
            if other.is_frattini() or not g_equivalent(G, f, other):
                continue
            for N in _projection_kernels(G, other):
                R = N if R is None else _intersect_normals(G, R, N)
        if R is not None and G.order() // R.order() == target_index:
            return R
    raise ChiefVerificationError(
        "crown radical verification failed: |G/R| = %s, expected %s"
        % (G.order() // R.order() if R else None, target_index))


def _projection_kernels(G: PermGroup, f: ChiefFactor):
    """Kernels of maps G -> L_f attached to one equivalent factor."""
    if not f.abelian():
        return [f.centralizer()]
    out = []
    m = f.size()
    for U in f.complements():
        images = [f.conj_perm_of(u) for u in U.generators]
        target = symmetric(m) if m > 1 else PermGroup(1, [])
        hom = Homomorphism(U, target, images)
        out.append(hom.kernel())
    return out


class Crown:
    """An equivalence class of chief factors with its crown data."""

    def __init__(self, representative, dlt, monolithic, socle, frattini_count):
        self.representative = representative
        self.delta = dlt
        self.monolithic = monolithic
        self.socle = socle
        self.frattini_count = frattini_count
        self.radical = None
        self.inducer = None

    def record(self):
        f = self.representative
        rec = {
            "factor_order": f.order,
            "abelian": f.abelian(),
            "delta": self.delta,
            "monolithic_order": self.monolithic.order(),
            "socle_order": self.socle.order(),
            "frattini_count": self.frattini_count,
        }
        if f.abelian():
            rec["prime"] = f.prime()
            rec["dim"] = f.dim()
        return rec


def crown_decomposition(G: PermGroup, seed=0, through=(), series=None):
    """Crowns of G from one chief series; deterministic ordering."""
    ser = series if series is not None else chief_series(G, through=through, seed=seed)
    classes = []
    frattini = []
    for f in ser.factors:
        if f.is_frattini():
            frattini.append(f)
            continue
        for cls in classes:
            if g_equivalent(G, cls[0], f):
                cls.append(f)
                break
        else:
            classes.append([f])
    crowns = []
    for cls in classes:
        rep = cls[0]
        dlt = len(cls)
        for f in cls:
            f._delta = dlt
        fratt = 0
        if rep.abelian():
            for f in frattini:
                if f.abelian() and f.order == rep.order and f.prime() == rep.prime() \
                        and intertwiner_space_dim(list(rep.matrices()),
                                                  list(f.matrices()), rep.prime()) > 0:
                    fratt += 1
        L, soc = monolithic_with_socle(G, rep)
        crowns.append(Crown(rep, dlt, L, soc, fratt))
    crowns.sort(key=lambda c: (c.representative.order,
                               c.representative.abelian(), c.delta))
    return ser, crowns

"""Permutations of {1..n}, stored as 0-based image tuples.

Composition is left-to-right: (p * q) sends x to q(p(x)), i.e. "apply p,
then q".  Points are 1-based in cycle notation and in every public API that
talks about points; internally images[i] is the 0-based image of point i+1.
"""

from __future__ import annotations

import re
from math import gcd


class PermError(ValueError):
    pass


def _mul(a: tuple, b: tuple) -> tuple:
    # raw composition on image tuples, a first then b
    return tuple(b[x] for x in a)


def _inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _identity(n: int) -> tuple:
    return tuple(range(n))


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise PermError("images are not a bijection on 0..%d" % (len(images) - 1))
        object.__setattr__(self, "images", images)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    @staticmethod
    def from_cycles(cycles, degree: int) -> "Permutation":
        """Build from 1-based disjoint cycles, unmentioned points fixed."""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for pt in cycle:
                if not 1 <= pt <= degree:
                    raise PermError("point %r out of range 1..%d" % (pt, degree))
                if pt in seen:
                    raise PermError("point %r repeated" % (pt,))
                seen.add(pt)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b - 1
        return Permutation(images)

    @staticmethod
    def parse(text: str, degree: int) -> "Permutation":
        """Parse disjoint-cycle notation like "(1,2,3)(4,5)"; "()" is the identity."""
        stripped = text.replace(" ", "")
        if stripped in ("", "()"):
            return Permutation.identity(degree)
        if not re.fullmatch(r"(\((\d+(,\d+)*)?\))+", stripped):
            raise PermError("malformed cycle notation: %r" % (text,))
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", stripped):
            if body:
                cycles.append([int(t) for t in body.split(",")])
        return Permutation.from_cycles(cycles, degree)

    # -- arithmetic ------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self.images) != len(other.images):
            raise PermError("degree mismatch: %d vs %d" % (self.degree, other.degree))
        p = Permutation.__new__(Permutation)
        object.__setattr__(p, "images", _mul(self.images, other.images))
        return p

    def inverse(self) -> "Permutation":
        p = Permutation.__new__(Permutation)
        object.__setattr__(p, "images", _inv(self.images))
        return p

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = _identity(len(self.images))
        base = self.images
        while n:
            if n & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            n >>= 1
        p = Permutation.__new__(Permutation)
        object.__setattr__(p, "images", result)
        return p

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def conjugate(self, g: "Permutation") -> "Permutation":
        """self ** g = g^-1 * self * g."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        n = 1
        for cycle in self.cycles():
            n = n * len(cycle) // gcd(n, len(cycle))
        return n

    # -- structure -------------------------------------------------------

    def cycles(self):
        """Nontrivial cycles as 1-based tuples, smallest point first."""
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i] or self.images[i] == i:
                continue
            cycle = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cycle.append(j)
                j = self.images[j]
            out.append(tuple(pt + 1 for pt in cycle))
        return out

    def moved_points(self):
        return [i + 1 for i, x in enumerate(self.images) if x != i]

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Permutation(%r)" % (list(self.images),)

    def __str__(self):
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(%s)" % ",".join(map(str, c)) for c in cs)


def parse_permutation(text: str, degree: int) -> Permutation:
    """Module-level alias for Permutation.parse."""
    return Permutation.parse(text, degree)

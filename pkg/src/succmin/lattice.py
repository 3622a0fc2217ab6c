"""Lattices, subgroups, adapted bases and lattice point enumeration.

Lattice points are handled in lattice coordinates (integer tuples) and only
converted to ambient coordinates at the geometry boundary.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional, Sequence

from . import exact
from .polytope import Polytope


class NotIndependent(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    """The lattice spanned by ``vectors`` (basis vectors in ambient
    coordinates)."""

    vectors: tuple

    def __post_init__(self):
        vs = tuple(exact.vec(v) for v in self.vectors)
        d = len(vs)
        if d == 0 or any(len(v) != d for v in vs):
            raise ValueError("a lattice basis needs d vectors of length d")
        if exact.det(exact.transpose(vs)) == 0:
            raise ValueError("lattice basis is singular")
        object.__setattr__(self, "vectors", vs)

    @classmethod
    def standard(cls, d: int) -> "Lattice":
        return cls(exact.identity(d))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @cached_property
    def matrix(self) -> tuple:
        """Basis matrix with the basis vectors as columns."""
        return exact.transpose(self.vectors)

    @cached_property
    def inverse(self) -> tuple:
        return exact.inverse(self.matrix)

    @cached_property
    def det(self) -> Fraction:
        return abs(exact.det(self.matrix))

    @cached_property
    def is_standard(self) -> bool:
        return self.vectors == exact.identity(self.dim)

    def to_coords(self, x) -> tuple:
        return exact.matvec(self.inverse, exact.vec(x))

    def from_coords(self, y) -> tuple:
        return exact.matvec(self.matrix, exact.vec(y))

    def body_in_coords(self, p: Polytope) -> Polytope:
        if p.dim != self.dim:
            raise ValueError("body and lattice dimensions differ")
        if self.is_standard:
            return p
        return p.linear_image(self.inverse)

    def sublattice(self, gens: Sequence[Sequence[int]]) -> "Lattice":
        """The full-rank sublattice spanned by integer combinations ``gens``
        (lattice coordinates) of this basis."""
        return Lattice(tuple(self.from_coords(g) for g in gens))


def to_lattice_coords(lat: Lattice, x) -> tuple:
    return lat.to_coords(x)


def from_lattice_coords(lat: Lattice, y) -> tuple:
    return lat.from_coords(y)


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------

def integer_points(p: Polytope) -> list:
    """All integer points of P, sorted lexicographically."""
    return list(iter_integer_points(p))


def iter_integer_points(p: Polytope) -> Iterator[tuple]:
    lows, highs = p.bounding_box()
    ranges = [range(exact.ceil(lo), exact.floor(hi) + 1) for lo, hi in zip(lows, highs)]
    if any(len(r) == 0 for r in ranges):
        return
    h = p.hrep
    if h is None:
        for z in itertools.product(*ranges):
            if p.contains_lp(z):
                yield z
        return
    last = ranges[-1]
    for prefix in itertools.product(*ranges[:-1]):
        span = h.last_coordinate_range(prefix)
        if span is None:
            continue
        lo, hi = span
        lo = last.start if lo is None else max(last.start, exact.ceil(lo))
        hi = last.stop - 1 if hi is None else min(last.stop - 1, exact.floor(hi))
        for v in range(lo, hi + 1):
            yield prefix + (v,)


def enumerate_in_body(p: Polytope, lat: Lattice) -> list:
    """Lattice coordinates of the points of ``lat`` inside P, sorted."""
    return integer_points(lat.body_in_coords(p))


def raster_points(p: Polytope, lat: Lattice) -> list:
    """Reference enumeration: every point of the coordinate bounding box is
    tested with the LP membership route, nothing is pruned."""
    q = lat.body_in_coords(p)
    lows, highs = q.bounding_box()
    ranges = [range(exact.ceil(lo), exact.floor(hi) + 1) for lo, hi in zip(lows, highs)]
    return [z for z in itertools.product(*ranges) if p.contains_lp(lat.from_coords(z))]


def points_of_coset(lat: Lattice, scale, offset, inside: Polytope) -> list:
    """Lattice coordinates u with offset + scale * (basis u) in ``inside``."""
    scale = exact.rat(scale)
    if scale <= 0:
        raise ValueError("coset scale must be positive")
    moved = inside.translate(tuple(-v for v in exact.vec(offset))).scale(1 / scale)
    return enumerate_in_body(moved, lat)


# --------------------------------------------------------------------------
# subgroups and adapted bases
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    """Subgroup of Z^d (lattice coordinates) generated by ``gens``."""

    dim: int
    gens: tuple = ()

    def __post_init__(self):
        gens = tuple(tuple(int(v) for v in g) for g in self.gens)
        if any(len(g) != self.dim for g in gens):
            raise ValueError("generator length differs from ambient dimension")
        object.__setattr__(self, "gens", gens)

    @cached_property
    def rank(self) -> int:
        return exact.rank(self.gens) if self.gens else 0

    @cached_property
    def _hnf(self):
        if not self.gens:
            return (), []
        h, _ = exact.hnf(exact.transpose(self.gens))
        return h, exact.hnf_pivots(h)

    def scaled(self, r: int) -> "Subgroup":
        return Subgroup(self.dim, tuple(tuple(r * v for v in g) for g in self.gens))

    def reduce(self, x) -> tuple:
        """Canonical representative of x modulo this subgroup."""
        x = list(x)
        h, pivots = self._hnf
        for row, col in pivots:
            piv = h[row][col]
            q = x[row] // piv
            if q:
                for i in range(row, self.dim):
                    x[i] -= q * h[i][col]
        return tuple(x)

    def contains(self, x) -> bool:
        return not any(self.reduce(x))

    @property
    def index(self) -> Optional[int]:
        """[Z^d : S] for full-rank S, else None."""
        if self.rank != self.dim:
            return None
        h, pivots = self._hnf
        out = 1
        for row, col in pivots:
            out *= h[row][col]
        return out


def canonical_residue(s: Subgroup, r: int, x) -> tuple:
    """Canonical representative of x + r*S."""
    if r <= 0:
        raise ValueError("r must be a positive integer")
    return s.scaled(r).reduce(x)


@dataclass(frozen=True)
class AdaptedBasis:
    """Lattice basis e (columns, lattice coordinates) whose prefix spans agree
    with those of the source vectors a."""

    e: tuple
    source_a: tuple

    @property
    def dim(self) -> int:
        return len(self.e)

    @cached_property
    def inverse(self) -> tuple:
        return exact.inverse(exact.transpose(self.e))

    def coords(self, z) -> tuple:
        """Coordinates of the lattice vector z with respect to e."""
        return exact.matvec(self.inverse, z)

    def in_prefix(self, z, i: int) -> bool:
        """z in Z e^1 + ... + Z e^i."""
        return all(c == 0 for c in self.coords(z)[i:])


def adapted_basis(a: Sequence[Sequence[int]]) -> AdaptedBasis:
    """Unimodular basis e with lin(a^1..a^i) = lin(e^1..e^i) for all i.

    Writes A = E T with T upper triangular: the column HNF of A^T gives
    A^T V = H, so V^T A = H^T and E = (V^T)^{-1}.
    """
    a = tuple(tuple(int(v) for v in x) for x in a)
    d = len(a)
    if d == 0 or any(len(x) != d for x in a):
        raise ValueError("need d vectors of length d")
    if exact.rank(a) != d:
        raise NotIndependent("witness vectors are linearly dependent")
    _, v = exact.hnf(a)  # rows of `a` are the a^i, i.e. this is A^T
    e_matrix = exact.to_int_matrix(exact.inverse(exact.transpose(v)))
    e = exact.transpose(e_matrix)
    return AdaptedBasis(tuple(tuple(x) for x in e), a)


def check_adapted(basis: AdaptedBasis) -> bool:
    e, a = basis.e, basis.source_a
    if abs(exact.det(e)) != 1:
        return False
    for i in range(1, len(e) + 1):
        ri = exact.rank(a[:i])
        if exact.rank(e[:i]) != ri or exact.rank(a[:i] + e[:i]) != ri:
            return False
    return True


def subgroup_prefix(basis: AdaptedBasis, i: int) -> Subgroup:
    if not 0 <= i <= basis.dim:
        raise ValueError("prefix length out of range")
    return Subgroup(basis.dim, basis.e[:i])

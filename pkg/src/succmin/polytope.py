"""Rational polytopes given as convex hulls of finitely many points.

The generator list is the only stored representation.  For bodies whose
affine hull has dimension at most 3 an exact facet description is derived
on demand and cached; it is used to speed up membership and gauge queries.
Every query also has a pure linear-programming route (``*_lp``) that works
in any dimension and is what the fast path is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Optional, Sequence

from . import exact

INFINITE = math.inf


class NotFullDimensional(ValueError):
    pass


class UnsupportedDimension(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


# --------------------------------------------------------------------------
# integer hull machinery
# --------------------------------------------------------------------------

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull2(points):
    """Counter-clockwise hull of integer points (no collinear vertices)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _normalize(normal, rhs):
    g = 0
    for v in normal:
        g = math.gcd(g, v)
    g = math.gcd(g, rhs) if g else 0
    if g > 1:
        normal = tuple(v // g for v in normal)
        rhs //= g
    return tuple(normal), rhs


def _sub3(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _hull3(points):
    """Incremental 3-D hull of integer points in general (full) position.

    Returns outward-oriented triangles as index triples into ``points``.
    """
    n = len(points)
    i0 = 0
    i1 = next(i for i in range(n) if points[i] != points[i0])
    d01 = _sub3(points[i1], points[i0])
    i2 = next(i for i in range(n) if any(_cross3(d01, _sub3(points[i], points[i0]))))
    nrm = _cross3(d01, _sub3(points[i2], points[i0]))
    i3 = next(i for i in range(n) if _dot(nrm, _sub3(points[i], points[i0])) != 0)
    if _dot(nrm, _sub3(points[i3], points[i0])) > 0:
        i1, i2 = i2, i1
    faces = {(i0, i1, i2), (i0, i3, i1), (i1, i3, i2), (i2, i3, i0)}
    normals = {}

    def face_normal(f):
        got = normals.get(f)
        if got is None:
            a, b, c = (points[k] for k in f)
            got = _cross3(_sub3(b, a), _sub3(c, a))
            normals[f] = got
        return got

    done = {i0, i1, i2, i3}
    for idx in range(n):
        if idx in done:
            continue
        p = points[idx]
        visible = [f for f in faces if _dot(face_normal(f), _sub3(p, points[f[0]])) > 0]
        if not visible:
            continue
        edges = set()
        for a, b, c in visible:
            edges.update(((a, b), (b, c), (c, a)))
        for f in visible:
            faces.discard(f)
        for a, b in edges:
            if (b, a) not in edges:
                faces.add((a, b, idx))
    return sorted(faces)


@dataclass(frozen=True)
class HRep:
    """Inequalities ``n . (scale * x) <= c`` with integer ``n`` and ``c``."""

    normals: tuple
    offsets: tuple
    scale: int
    full_dimensional: bool

    def contains(self, x) -> bool:
        s = self.scale
        for nrm, c in zip(self.normals, self.offsets):
            if s * sum(a * b for a, b in zip(nrm, x)) > c:
                return False
        return True

    def interior_contains(self, x) -> bool:
        s = self.scale
        for nrm, c in zip(self.normals, self.offsets):
            if s * sum(a * b for a, b in zip(nrm, x)) >= c:
                return False
        return True

    def gauge(self, x):
        s = self.scale
        best = Fraction(0)
        for nrm, c in zip(self.normals, self.offsets):
            v = s * sum(a * b for a, b in zip(nrm, x))
            if c > 0:
                if v > best * c:
                    best = Fraction(v, c)
            elif c == 0:
                if v > 0:
                    return INFINITE
            else:
                raise ValueError("gauge requires the origin in the body")
        return best

    def last_coordinate_range(self, prefix):
        """Exact real interval of the last coordinate given the others, as
        (lo, hi) Fractions, or None when empty.  ``None`` bounds mean
        unbounded (never the case for polytopes with a full facet list)."""
        s = self.scale
        lo = hi = None
        for nrm, c in zip(self.normals, self.offsets):
            rest = c - s * sum(a * b for a, b in zip(nrm, prefix))
            a = s * nrm[-1]
            if a > 0:
                v = Fraction(rest, a)
                if hi is None or v < hi:
                    hi = v
            elif a < 0:
                v = Fraction(rest, a)
                if lo is None or v > lo:
                    lo = v
            elif rest < 0:
                return None
        if lo is not None and hi is not None and lo > hi:
            return None
        return lo, hi


def _hrep_int(points, dim):
    """Facet description and vertex indices of conv(points) for integer
    points whose affine hull has dimension <= 3.  Returns (normals, offsets,
    affine_dim, vertex_points) or None when the affine hull is too big."""
    points = sorted(set(points))
    p0 = points[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in points[1:]]
    if diffs:
        rows, pivots, _ = exact._echelon(diffs)
    else:
        rows, pivots = [], []
    k = len(pivots)
    if k > 3:
        return None
    normals, offsets = [], []
    if k < dim:
        # reduced row echelon rows of the difference space
        rref = [list(r) for r in rows[:k]]
        for r in range(k - 1, -1, -1):
            c = pivots[r]
            piv = rref[r][c]
            rref[r] = [v / piv for v in rref[r]]
            for q in range(r):
                f = rref[q][c]
                if f:
                    rref[q] = [a - f * b for a, b in zip(rref[q], rref[r])]
        for m in range(dim):
            if m in pivots:
                continue
            coeffs = [Fraction(0)] * dim
            coeffs[m] = Fraction(1)
            for r, c in enumerate(pivots):
                coeffs[c] -= rref[r][m]
            den = exact.lcm_denominators(coeffs)
            nrm = tuple(int(v * den) for v in coeffs)
            c0 = _dot(nrm, p0)
            nrm, c0 = _normalize(nrm, c0)
            normals += [nrm, tuple(-v for v in nrm)]
            offsets += [c0, -c0]
    proj = [tuple(p[c] for c in pivots) for p in points]
    if k == 0:
        verts = [p0]
    elif k == 1:
        lo = min(range(len(points)), key=lambda i: proj[i])
        hi = max(range(len(points)), key=lambda i: proj[i])
        for i, sgn in ((hi, 1), (lo, -1)):
            nrm = [0] * dim
            nrm[pivots[0]] = sgn
            normals.append(tuple(nrm))
            offsets.append(sgn * proj[i][0])
        verts = [points[lo], points[hi]]
    elif k == 2:
        index = {}
        for p, q in zip(points, proj):
            index.setdefault(q, p)
        hull = _hull2(list(index))
        for a, b in zip(hull, hull[1:] + hull[:1]):
            n2 = (b[1] - a[1], a[0] - b[0])
            nrm = [0] * dim
            nrm[pivots[0]], nrm[pivots[1]] = n2
            nrm, c0 = _normalize(tuple(nrm), _dot(n2, a))
            normals.append(nrm)
            offsets.append(c0)
        verts = [index[q] for q in hull]
    else:
        index = {}
        for p, q in zip(points, proj):
            index.setdefault(q, p)
        keys = list(index)
        faces = _hull3(keys)
        seen = set()
        used = set()
        for f in faces:
            used.update(f)
            a, b, c = (keys[i] for i in f)
            n3 = _cross3(_sub3(b, a), _sub3(c, a))
            nrm = [0] * dim
            for pos, v in zip(pivots, n3):
                nrm[pos] = v
            nrm, c0 = _normalize(tuple(nrm), _dot(n3, a))
            if (nrm, c0) not in seen:
                seen.add((nrm, c0))
                normals.append(nrm)
                offsets.append(c0)
        verts = [index[keys[i]] for i in sorted(used)]
        return normals, offsets, k, verts, (keys, faces)
    return normals, offsets, k, verts, None


# --------------------------------------------------------------------------
# Polytope
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Polytope:
    """conv(generators) in Q^dim."""

    generators: tuple
    dim: int = field(default=0)

    def __post_init__(self):
        gens = tuple(exact.vec(g) for g in self.generators)
        if not gens:
            raise ValueError("a polytope needs at least one generator")
        d = len(gens[0])
        if any(len(g) != d for g in gens):
            raise DimensionMismatch("generators of different lengths")
        if self.dim and self.dim != d:
            raise DimensionMismatch(f"declared dimension {self.dim}, generators have {d}")
        if d == 0:
            raise ValueError("ambient dimension must be positive")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "dim", d)

    @classmethod
    def box(cls, lows, highs) -> "Polytope":
        ranges = list(zip(lows, highs))
        gens = []
        for mask in range(2 ** len(ranges)):
            gens.append(tuple(hi if mask >> i & 1 else lo for i, (lo, hi) in enumerate(ranges)))
        return cls(tuple(gens))

    @classmethod
    def cube(cls, d: int, lo=-1, hi=1) -> "Polytope":
        return cls.box([lo] * d, [hi] * d)

    @classmethod
    def simplex(cls, d: int, scale=1) -> "Polytope":
        gens = [tuple(0 for _ in range(d))]
        for i in range(d):
            gens.append(tuple(scale if j == i else 0 for j in range(d)))
        return cls(tuple(gens))

    # -- derived data ------------------------------------------------------

    @cached_property
    def _scale(self) -> int:
        return exact.lcm_denominators(v for g in self.generators for v in g)

    @cached_property
    def _scaled(self) -> list:
        s = self._scale
        return [tuple(int(v * s) for v in g) for g in self.generators]

    @cached_property
    def _hull_data(self):
        return _hrep_int(self._scaled, self.dim)

    @cached_property
    def hrep(self) -> Optional[HRep]:
        data = self._hull_data
        if data is None:
            return None
        normals, offsets, k, _, _ = data
        return HRep(tuple(normals), tuple(offsets), self._scale, k == self.dim)

    @cached_property
    def affine_dim(self) -> int:
        g0 = self.generators[0]
        diffs = [exact.sub(g, g0) for g in self.generators[1:]]
        return exact.rank(diffs) if diffs else 0

    @property
    def full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    @cached_property
    def vertices(self) -> tuple:
        """Generators with interior and duplicate points removed (exact
        extreme points for affine dimension <= 2; for 3-dimensional hulls some
        boundary points lying inside facets or edges may remain)."""
        data = self._hull_data
        if data is not None:
            s = self._scale
            return tuple(tuple(Fraction(v, s) for v in p) for p in sorted(data[3]))
        return tuple(sorted(set(self.generators)))

    def reduced(self) -> "Polytope":
        return Polytope(self.vertices)

    # -- queries -----------------------------------------------------------

    def _check(self, x):
        if len(x) != self.dim:
            raise DimensionMismatch(f"point of length {len(x)} in dimension {self.dim}")

    def contains(self, x) -> bool:
        self._check(x)
        h = self.hrep
        if h is not None:
            return h.contains(x)
        return self.contains_lp(x)

    def contains_lp(self, x) -> bool:
        """Membership decided by LP feasibility of a convex combination."""
        self._check(x)
        gens = self.generators
        a_eq = [[g[i] for g in gens] for i in range(self.dim)]
        a_eq.append([1] * len(gens))
        b_eq = list(x) + [1]
        return exact.lp_min([0] * len(gens), a_eq, b_eq).feasible

    def gauge(self, x):
        """min{lam >= 0 : x in lam P}; ``math.inf`` if x is outside the cone.

        The origin must lie in P.
        """
        self._check(x)
        h = self.hrep
        if h is not None:
            return h.gauge(x)
        return self.gauge_lp(x)

    def gauge_lp(self, x):
        self._check(x)
        gens = self.generators
        a_eq = [[g[i] for g in gens] for i in range(self.dim)]
        res = exact.lp_min([1] * len(gens), a_eq, list(x))
        if res.status == exact.INFEASIBLE:
            return INFINITE
        return res.optimum

    def interior_contains(self, x) -> bool:
        self._check(x)
        if not self.full_dimensional:
            raise NotFullDimensional("interior test on a lower-dimensional body")
        h = self.hrep
        if h is not None:
            return h.interior_contains(x)
        return self.interior_contains_lp(x)

    def interior_contains_lp(self, x) -> bool:
        """x is interior iff it can be pushed a positive distance inside P
        along each of the 2d axis directions."""
        self._check(x)
        if not self.full_dimensional:
            raise NotFullDimensional("interior test on a lower-dimensional body")
        gens = self.generators
        n = len(gens)
        for axis in range(self.dim):
            for sgn in (1, -1):
                # sum mu g - t * (sgn e_axis) = x, sum mu = 1, maximize t
                a_eq = []
                for i in range(self.dim):
                    a_eq.append([g[i] for g in gens] + [-sgn if i == axis else 0])
                a_eq.append([1] * n + [0])
                res = exact.lp_max([0] * n + [1], a_eq, list(x) + [1])
                if res.status == exact.INFEASIBLE or res.optimum <= 0:
                    return False
        return True

    def is_symmetric(self) -> bool:
        """P = -P, tested on the generators of -P."""
        return all(self.contains(tuple(-v for v in g)) for g in self.vertices)

    def bounding_box(self):
        lows = tuple(min(g[i] for g in self.generators) for i in range(self.dim))
        highs = tuple(max(g[i] for g in self.generators) for i in range(self.dim))
        return lows, highs

    # -- transformations ---------------------------------------------------

    def translate(self, v) -> "Polytope":
        v = exact.vec(v)
        return Polytope(tuple(exact.add(g, v) for g in self.generators))

    def scale(self, c) -> "Polytope":
        c = exact.rat(c)
        return Polytope(tuple(exact.smul(c, g) for g in self.generators))

    def negate(self) -> "Polytope":
        return Polytope(tuple(tuple(-v for v in g) for g in self.generators))

    def linear_image(self, m) -> "Polytope":
        """Image under x -> m x (m a square matrix, rows as tuples)."""
        return Polytope(tuple(exact.matvec(m, g) for g in self.generators))

    def hull_with(self, points) -> "Polytope":
        return Polytope(self.generators + tuple(exact.vec(p) for p in points))

    # -- volume ------------------------------------------------------------

    def volume(self) -> Fraction:
        if self.dim > 3:
            raise UnsupportedDimension("volume is implemented for dimension <= 3")
        data = self._hull_data
        normals, offsets, k, verts, faces = data
        if k < self.dim:
            return Fraction(0)
        s = self._scale
        if k == 1:
            return Fraction(max(v[0] for v in verts) - min(v[0] for v in verts), s)
        if k == 2:
            area2 = 0
            for a, b in zip(verts, verts[1:] + verts[:1]):
                area2 += a[0] * b[1] - a[1] * b[0]
            return Fraction(abs(area2), 2 * s * s)
        keys, tris = faces
        o = keys[tris[0][0]]
        vol6 = 0
        for a, b, c in tris:
            u, v, w = (_sub3(keys[i], o) for i in (a, b, c))
            vol6 += _dot(u, _cross3(v, w))
        return Fraction(vol6, 6 * s ** 3)


def difference_body(p: Polytope) -> Polytope:
    """K - K."""
    return minkowski_diff_bodies(p, p)


def minkowski_diff_bodies(p: Polytope, q: Polytope) -> Polytope:
    """P + (-Q), generated by all pairwise differences of vertices."""
    if p.dim != q.dim:
        raise DimensionMismatch("bodies of different dimension")
    pts = {exact.sub(a, b) for a in p.vertices for b in q.vertices}
    return Polytope(tuple(sorted(pts))).reduced()


def half_difference_body(p: Polytope) -> Polytope:
    return difference_body(p).scale(Fraction(1, 2))


def slice_body(p: Polytope, level, axis_basis: Sequence) -> Optional[Polytope]:
    """The section {x in P : x_d = level}, with x_d the last coordinate in
    ``axis_basis``, expressed in the first d-1 basis coordinates.  Returns
    None for an empty section."""
    level = exact.rat(level)
    d = p.dim
    if d < 2:
        raise UnsupportedDimension("slicing needs dimension >= 2")
    basis = exact.transpose([exact.vec(b) for b in axis_basis])
    inv = exact.inverse(basis)
    coords = sorted({exact.matvec(inv, g) for g in p.vertices})
    found = set()
    for c in coords:
        if c[-1] == level:
            found.add(c[:-1])
    for u, w in combinations(coords, 2):
        if u[-1] > w[-1]:
            u, w = w, u
        if u[-1] < level < w[-1]:
            s = (level - u[-1]) / (w[-1] - u[-1])
            found.add(tuple(a + s * (b - a) for a, b in zip(u[:-1], w[:-1])))
    if not found:
        return None
    return Polytope(tuple(sorted(found))).reduced()


def lift_slice_point(y, level, axis_basis) -> tuple:
    """Ambient point with basis coordinates (y, level)."""
    coords = tuple(exact.vec(y)) + (exact.rat(level),)
    basis = [exact.vec(b) for b in axis_basis]
    out = [Fraction(0)] * len(coords)
    for c, b in zip(coords, basis):
        for i, v in enumerate(b):
            out[i] += c * v
    return tuple(out)


def intersection_point(p: Polytope, q: Polytope):
    """A point of P cap Q (found by LP), or None if disjoint."""
    if p.dim != q.dim:
        raise DimensionMismatch("bodies of different dimension")
    gp, gq = p.generators, q.generators
    n, m = len(gp), len(gq)
    a_eq = []
    for i in range(p.dim):
        a_eq.append([g[i] for g in gp] + [-g[i] for g in gq])
    a_eq.append([1] * n + [0] * m)
    a_eq.append([0] * n + [1] * m)
    res = exact.lp_min([0] * (n + m), a_eq, [0] * p.dim + [1, 1])
    if not res.feasible:
        return None
    mu = res.solution[:n]
    return tuple(sum(c * g[i] for c, g in zip(mu, gp)) for i in range(p.dim))

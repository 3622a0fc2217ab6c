"""Executable versions of the constructive lemmas.

All inputs and outputs that are lattice vectors use lattice coordinates.
Each construction re-checks its defining emptiness conditions by a fresh
enumeration before returning; a failed re-check raises AssertionError.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exact
from .lattice import Lattice, integer_points, points_of_coset
from .polytope import NotFullDimensional, Polytope, intersection_point, minkowski_diff_bodies
from .verifiers import PreconditionViolated

log = logging.getLogger(__name__)


def _round(x: Fraction) -> int:
    return exact.floor(x + Fraction(1, 2))


# --------------------------------------------------------------------------
# descent for K cap (v + t Lambda) = empty
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Descent:
    v: tuple
    steps: int
    counts: tuple  # #(conv(v, K) cap Lambda) along the descent


def _descend(body: Polytope, start, points_in):
    """Walk v -> w in conv(v, K) until conv(v, K) meets the point set only
    in v.  ``points_in(P)`` lists the relevant points of P."""
    v = tuple(start)
    counts = []
    while True:
        hull = body.hull_with([v])
        pts = points_in(hull)
        counts.append(len(pts))
        if len(counts) > 1 and counts[-1] >= counts[-2]:
            raise AssertionError("descent did not decrease the point count")
        others = [w for w in pts if w != v]
        if not others:
            if v not in pts:
                raise AssertionError("descent lost its own vertex")
            return v, counts
        v = others[0]


def lemma23_descent(k: Polytope, lat: Lattice, t) -> Descent:
    """Find v in Lambda with K cap (v + t Lambda) empty, given K cap Lambda
    empty and t > 1."""
    t = exact.rat(t)
    if t <= 1:
        raise PreconditionViolated("t must exceed 1")
    body = lat.body_in_coords(k)
    inside = integer_points(body)
    if inside:
        raise PreconditionViolated("K contains a lattice point", {"point": list(inside[0])})
    start = tuple(_round(x) for x in body.generators[0])
    v, counts = _descend(body, start, integer_points)
    if points_of_coset(Lattice.standard(k.dim), t, v, body):
        raise AssertionError("descent output failed re-verification")
    log.debug("lemma23 descent: %d steps, counts %s", len(counts) - 1, counts)
    return Descent(v, len(counts) - 1, tuple(counts))


def lemma23_translate(k: Polytope, lat: Lattice, t) -> tuple:
    return lemma23_descent(k, lat, t).v


# --------------------------------------------------------------------------
# moving a finite point set off the body modulo t
# --------------------------------------------------------------------------

def _coset_hits(body: Polytope, s, r: int) -> list:
    """Integer points u with s + r u in the body (integer coordinates)."""
    return integer_points(body.translate(tuple(-v for v in s)).scale(Fraction(1, r)))


def lemma24_conditions(body: Polytope, s_set, r: int):
    """First failing hypothesis of (K - S) cap r Z^d = empty and
    (S - S) cap r (Z^d minus 0) = empty, as (name, witness) or None."""
    for s in s_set:
        hits = _coset_hits(body, s, r)
        if hits:
            return "(K-S) cap rL", {"s": list(s), "point": [a + r * b for a, b in zip(s, hits[0])]}
    for x, y in itertools.combinations(s_set, 2):
        if all((a - b) % r == 0 for a, b in zip(x, y)):
            return "DS cap r(L-0)", {"pair": [list(x), list(y)]}
    return None


def _lemma24_rec(body: Polytope, s_list, r: int, t: int, depth: int, trace: list) -> dict:
    """Return {source index: translated point}."""
    if len(s_list) == 1:
        idx, v = s_list[0]
        moved = body.translate(tuple(-a for a in v)).scale(Fraction(1, r))
        w = lemma23_descent(moved, Lattice.standard(body.dim), Fraction(t, r))
        trace.append(("base", depth, w.steps))
        return {idx: tuple(a + r * b for a, b in zip(v, w.v))}

    def coset_points(hull):
        out = []
        for _, s in s_list:
            out.extend(tuple(a + r * b for a, b in zip(s, u)) for u in _coset_hits(hull, s, r))
        return sorted(out)

    i0, s0 = s_list[0]
    g = body.generators[0]
    start = tuple(a + r * _round((x - a) / r) for a, x in zip(s0, g))
    v, counts = _descend(body, start, coset_points)
    trace.append(("descent", depth, len(counts) - 1))
    src = next(i for i, s in s_list if all((a - b) % r == 0 for a, b in zip(s, v)))
    rest = [(i, s) for i, s in s_list if i != src]
    out = _lemma24_rec(body.hull_with([v]), rest, r, t, depth + 1, trace)
    out[src] = v
    return out


@dataclass(frozen=True)
class Lemma24Result:
    translated: tuple  # aligned with the input S
    trace: tuple


def lemma24_run(k: Polytope, s_set: Sequence, lat: Lattice, r: int, t: int) -> Lemma24Result:
    r, t = int(r), int(t)
    if not (r >= 1 and t > r):
        raise PreconditionViolated("need integers t > r >= 1")
    s_list = [tuple(int(v) for v in s) for s in s_set]
    if not s_list:
        raise PreconditionViolated("S must be nonempty")
    if len(set(s_list)) != len(s_list):
        raise PreconditionViolated("S has repeated points")
    body = lat.body_in_coords(k)
    failed = lemma24_conditions(body, s_list, r)
    if failed:
        raise PreconditionViolated(f"hypothesis {failed[0]} fails", failed[1])
    trace = []
    mapping = _lemma24_rec(body, list(enumerate(s_list)), r, t, 0, trace)
    out = tuple(mapping[i] for i in range(len(s_list)))
    for s, v in zip(s_list, out):
        if any((a - b) % r for a, b in zip(s, v)):
            raise AssertionError("translate is not congruent to its source mod r")
    failed = lemma24_conditions(body, out, t)
    if failed:
        raise AssertionError(f"point-set translation failed re-verification: {failed[0]}")
    log.debug("lemma24 trace: %s", trace)
    return Lemma24Result(out, tuple(trace))


def lemma24_translate(k: Polytope, s_set: Sequence, lat: Lattice, r: int, t: int) -> tuple:
    return lemma24_run(k, s_set, lat, r, t).translated


# --------------------------------------------------------------------------
# covering parallelogram boundaries in the plane
# --------------------------------------------------------------------------

def _edge_interval(k: Polytope, a, direction, mu):
    """{s in R : a + s * direction - mu in K} as (lo, hi) or None."""
    h = k.hrep
    lo = hi = None
    for nrm, c in zip(h.normals, h.offsets):
        base = h.scale * sum(n * (x - m) for n, x, m in zip(nrm, a, mu))
        slope = h.scale * sum(n * dv for n, dv in zip(nrm, direction))
        if slope > 0:
            v = Fraction(c - base) / slope
            hi = v if hi is None or v < hi else hi
        elif slope < 0:
            v = Fraction(c - base) / slope
            lo = v if lo is None or v > lo else lo
        elif base > c:
            return None
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def edge_covered(k: Polytope, lat: Lattice, a, direction) -> bool:
    """Is the segment [a, a + direction] contained in K + lat?"""
    a = exact.vec(a)
    direction = exact.vec(direction)
    b = exact.add(a, direction)
    # lattice vectors mu with (K + mu) meeting the segment lie in segment - K
    region = Polytope(tuple(exact.sub(p, g) for p in (a, b) for g in k.vertices))
    pieces = []
    for u in integer_points(lat.body_in_coords(region)):
        mu = lat.from_coords(u)
        span = _edge_interval(k, a, direction, mu)
        if span is None:
            continue
        lo, hi = span
        lo = Fraction(0) if lo is None else max(lo, Fraction(0))
        hi = Fraction(1) if hi is None else min(hi, Fraction(1))
        if lo <= hi:
            pieces.append((lo, hi))
    pieces.sort()
    reach = Fraction(0)
    started = False
    for lo, hi in pieces:
        if lo > reach:
            return False
        if hi >= reach:
            reach = hi
            started = True
        if reach >= 1 and started:
            return True
    return started and reach >= 1


def parallelogram_boundary_covered(k: Polytope, x, v1, v2) -> bool:
    lat = Lattice((v1, v2))
    corners = [exact.vec(x), exact.add(x, v1), exact.add(x, v2)]
    edges = [(corners[0], v1), (corners[0], v2), (corners[2], v1), (corners[1], v2)]
    return all(edge_covered(k, lat, a, dv) for a, dv in edges)


def lemma321_parallelogram(k: Polytope, v1, v2) -> tuple:
    """A point x of K whose parallelogram x, x+v1, x+v2, x+v1+v2 has its
    boundary inside K + (Z v1 + Z v2)."""
    if k.dim != 2:
        raise PreconditionViolated("the parallelogram construction is planar")
    if not k.full_dimensional:
        raise NotFullDimensional("K must be a convex body")
    v1, v2 = exact.vec(v1), exact.vec(v2)
    if exact.det((v1, v2)) == 0:
        raise PreconditionViolated("v1, v2 must be linearly independent")
    p1 = intersection_point(k, k.translate(v1))
    if p1 is None:
        raise PreconditionViolated("K and K + v1 are disjoint")
    p2 = intersection_point(k, k.translate(v2))
    if p2 is None:
        raise PreconditionViolated("K and K + v2 are disjoint")
    # p1 + s v1 = p2 + u v2
    s, _ = exact.solve(exact.transpose((v1, tuple(-c for c in v2))), exact.sub(p2, p1))
    y = exact.add(p1, exact.smul(s, v1))
    lat = Lattice((v1, v2))
    cands = integer_points(lat.body_in_coords(k.negate().translate(y)))
    if not cands:
        raise AssertionError("no lattice translate of the crossing point lies in K")
    x = exact.sub(y, lat.from_coords(cands[0]))
    if not k.contains(x) or not parallelogram_boundary_covered(k, x, v1, v2):
        raise AssertionError("parallelogram output failed re-verification")
    return x


# --------------------------------------------------------------------------
# simultaneous translation problem
# --------------------------------------------------------------------------

FOUND = "found"
NO_SOLUTION = "no_solution_exhaustive"
BUDGET = "budget_exhausted"


@dataclass(frozen=True)
class TranslationCertificate:
    vectors: tuple
    verified: bool

    def to_json(self) -> dict:
        return {"vectors": [list(v) for v in self.vectors], "verified": self.verified}


@dataclass(frozen=True)
class SearchOutcome:
    status: str
    certificate: Optional[TranslationCertificate] = None
    nodes: int = 0

    def to_json(self) -> dict:
        return {"status": self.status, "nodes": self.nodes,
                "certificate": self.certificate.to_json() if self.certificate else None}


def pair_hits(bi: Polytope, bj: Polytope, t: int) -> list:
    """Lattice points u with t u in Bi - Bj (bodies in lattice coordinates)."""
    return integer_points(minkowski_diff_bodies(bi, bj).scale(Fraction(1, t)))


def translation_valid(bodies_coords, shifts, t: int) -> bool:
    moved = [b.translate(s) for b, s in zip(bodies_coords, shifts)]
    for i, j in itertools.permutations(range(len(moved)), 2):
        if pair_hits(moved[i], moved[j], t):
            return False
    return True


def translation_problem_search(bodies: Sequence[Polytope], lat: Lattice, r: int, t: int,
                               budget: int = 10 ** 6) -> SearchOutcome:
    """Exhaustive search for lattice shifts w_j (mod t) with
    (K_i + w_i - K_j - w_j) cap t Lambda empty for i != j; body 0 is fixed.

    ``budget`` caps the number of search nodes visited."""
    r, t = int(r), int(t)
    if r < 1 or t < r:
        raise PreconditionViolated("need integers t >= r >= 1")
    coords = [lat.body_in_coords(b) for b in bodies]
    d = lat.dim
    for i, j in itertools.permutations(range(len(coords)), 2):
        hits = pair_hits(coords[i], coords[j], r)
        if hits:
            raise PreconditionViolated("(K_i - K_j) meets r Lambda",
                                       {"pair": [i, j], "point": [r * v for v in hits[0]]})
    n = len(coords)
    # bad[i][j]: residues delta = w_i - w_j (mod t) that are forbidden
    bad = {}
    for i, j in itertools.combinations(range(n), 2):
        diff = minkowski_diff_bodies(coords[i], coords[j])
        bad[i, j] = {tuple((-z) % t for z in p) for p in integer_points(diff)}
    residues = list(itertools.product(range(t), repeat=d))
    chosen = [tuple([0] * d)]
    nodes = 0

    def ok(j, w):
        for i in range(j):
            delta = tuple((a - b) % t for a, b in zip(chosen[i], w))
            if delta in bad[i, j]:
                return False
        return True

    def rec(j):
        nonlocal nodes
        if j == n:
            return True
        for w in residues:
            nodes += 1
            if nodes > budget:
                raise _Budget
            if ok(j, w):
                chosen.append(w)
                if rec(j + 1):
                    return True
                chosen.pop()
        return False

    try:
        found = rec(1)
    except _Budget:
        return SearchOutcome(BUDGET, None, nodes)
    if not found:
        return SearchOutcome(NO_SOLUTION, None, nodes)
    shifts = tuple(chosen)
    if not translation_valid(coords, shifts, t):
        raise AssertionError("translation certificate failed re-verification")
    return SearchOutcome(FOUND, TranslationCertificate(shifts, True), nodes)


class _Budget(Exception):
    pass

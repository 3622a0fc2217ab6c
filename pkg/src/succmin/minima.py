"""Successive minima of (not necessarily symmetric) bodies.

The minima of K are those of the symmetric body B = (K - K) / 2.  They are
found by listing every nonzero lattice point of gauge at most mu, ordering
by gauge and picking points greedily while they raise the rank; mu starts at
the smallest gauge of a unit vector and doubles until the pick has full
rank (the largest unit-vector gauge always suffices).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .lattice import AdaptedBasis, Lattice, adapted_basis, integer_points, subgroup_prefix
from .polytope import NotFullDimensional, Polytope, half_difference_body


@dataclass(frozen=True)
class MinimaProfile:
    lam: tuple
    a: tuple
    adapted: AdaptedBasis
    q: tuple

    @property
    def dim(self) -> int:
        return len(self.lam)

    @property
    def e(self) -> tuple:
        return self.adapted.e

    def to_json(self) -> dict:
        return {
            "lambda": [exact.fmt(v) for v in self.lam],
            "a": [list(v) for v in self.a],
            "e": [list(v) for v in self.e],
            "q": list(self.q),
        }


def q_from_lambda(lam) -> int:
    """floor(2 / lam) + 1, the smallest integer strictly above 2 / lam."""
    return exact.floor(Fraction(2) / lam) + 1


def symmetric_body(k: Polytope, lat: Lattice) -> Polytope:
    """(K - K) / 2 in lattice coordinates."""
    return half_difference_body(lat.body_in_coords(k))


def _positive_leading(z) -> bool:
    for v in z:
        if v:
            return v > 0
    return False


def _greedy(cands, d):
    chosen, lam = [], []
    for g, z in cands:
        if exact.rank(chosen + [z]) > len(chosen):
            chosen.append(z)
            lam.append(g)
            if len(chosen) == d:
                break
    return chosen, lam


def _candidates(body: Polytope, bound):
    pts = integer_points(body.scale(bound))
    out = []
    for z in pts:
        if _positive_leading(z):
            out.append((body.gauge(z), z))
    out.sort()
    return out


def successive_minima(k: Polytope, lat: Lattice | None = None) -> MinimaProfile:
    if lat is None:
        lat = Lattice.standard(k.dim)
    if not k.full_dimensional:
        raise NotFullDimensional("successive minima need a full-dimensional body")
    d = k.dim
    body = symmetric_body(k, lat)
    unit = exact.int_identity(d)
    top = max(body.gauge(u) for u in unit)
    mu = min(body.gauge(u) for u in unit)
    while True:
        # every point of gauge <= mu is listed, so a full-rank greedy pick
        # inside mu * B is already the answer
        chosen, lam = _greedy(_candidates(body, mu), d)
        if len(chosen) == d:
            break
        if mu >= top:
            raise AssertionError("basis vectors were not all found below their own gauge")
        mu = min(2 * mu, top)
    # certification: the box of lam_d * B holds every candidate that matters
    again, lam2 = _greedy(_candidates(body, lam[-1]), d)
    if lam2 != lam:
        raise AssertionError("minima certification failed")
    a = tuple(tuple(z) for z in chosen)
    return MinimaProfile(tuple(lam), a, adapted_basis(a), tuple(q_from_lambda(v) for v in lam))


def minima_oracle(k: Polytope, lat: Lattice, radius: int) -> tuple:
    """Minima straight from the definition: the gauge of every lattice point
    with coordinates in [-radius, radius] is computed by LP, then lam_i is
    the least gauge value whose sublevel set spans dimension i.  Only valid
    when the box contains lam_d * B."""
    body = symmetric_body(k, lat)
    d = k.dim
    pts = [z for z in itertools.product(range(-radius, radius + 1), repeat=d) if any(z)]
    gauges = sorted({body.gauge_lp(z) for z in pts})
    with_g = [(body.gauge_lp(z), z) for z in pts]
    out = []
    for i in range(1, d + 1):
        for g in gauges:
            if exact.rank([z for h, z in with_g if h <= g]) >= i:
                out.append(g)
                break
    return tuple(out)


def property5_violations(k: Polytope, lat: Lattice, profile: MinimaProfile) -> list:
    """Lattice points z with gauge(B, z) < lam_i outside Lambda^{i-1}, as
    (i, z) pairs."""
    body = symmetric_body(k, lat)
    bad = []
    for i in range(1, profile.dim + 1):
        lam = profile.lam[i - 1]
        sub = subgroup_prefix(profile.adapted, i - 1)
        for z in integer_points(body.scale(lam)):
            if body.gauge(z) < lam and not sub.contains(z):
                bad.append((i, z))
    return bad

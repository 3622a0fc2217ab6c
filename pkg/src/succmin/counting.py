"""Lattice point enumerator G and the residue-class counter D."""

from __future__ import annotations

from .lattice import Lattice, Subgroup, canonical_residue, enumerate_in_body
from .polytope import Polytope


def count_G(k: Polytope, lat: Lattice | None = None):
    """Return (#(K cap lat), points in lattice coordinates)."""
    if lat is None:
        lat = Lattice.standard(k.dim)
    pts = enumerate_in_body(k, lat)
    return len(pts), pts


def count_D(k: Polytope, lat: Lattice, sub: Subgroup, r: int) -> int:
    """Number of classes of K cap lat modulo r * sub."""
    _, pts = count_G(k, lat)
    return count_D_points(pts, sub, r)


def count_D_points(points, sub: Subgroup, r: int) -> int:
    return len({canonical_residue(sub, r, z) for z in points})

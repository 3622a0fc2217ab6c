import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import box, full_polytopes, points, polytopes, rationals, symmetric_polytopes
from succmin import exact
from succmin.polytope import (INFINITE, DimensionMismatch, NotFullDimensional, Polytope,
                              UnsupportedDimension, difference_body, half_difference_body,
                              intersection_point, lift_slice_point, minkowski_diff_bodies,
                              slice_body)

F = Fraction
SQUARE = box((0, 0), (1, 1))
TRIANGLE = Polytope(((0, 0), (1, 0), (0, 1)))
CROSS = Polytope(((1, 0), (-1, 0), (0, 1), (0, -1)))


def same_hull(p, q):
    return all(q.contains_lp(v) for v in p.vertices) and all(p.contains_lp(v) for v in q.vertices)


# -- membership -----------------------------------------------------------------

@pytest.mark.parametrize("body,x,expected", [
    (SQUARE, (F(1, 2), F(1, 2)), True),
    (TRIANGLE, (1, 1), False),
    (TRIANGLE, (1, 0), True),
])
def test_contains_examples(body, x, expected):
    x = exact.vec(x)
    assert body.contains(x) is expected
    assert body.contains_lp(x) is expected


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        SQUARE.contains((1,))
    with pytest.raises(DimensionMismatch):
        Polytope(((1, 2), (3,)))


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(polytopes(d), points(d))))
def test_contains_agrees_with_lp(args):
    p, x = args
    assert p.contains(x) == p.contains_lp(x)


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(polytopes(d), points(d), points(d))))
def test_redundant_generators_do_not_change_membership(args):
    p, x, y = args
    inside = tuple((a + b) / 2 for a, b in zip(p.generators[0], p.generators[-1]))
    bigger = Polytope(p.generators + (inside, p.generators[0]))
    assert bigger.contains(x) == p.contains(x)
    assert bigger.contains(y) == p.contains(y)


# -- gauge ----------------------------------------------------------------------

def test_gauge_examples():
    cube = Polytope.cube(2)
    assert cube.gauge((0, 0)) == 0
    assert cube.gauge((2, 0)) == 2
    assert CROSS.gauge((1, 1)) == 2
    assert CROSS.gauge_lp((1, 1)) == 2


def test_gauge_outside_cone_is_infinite():
    assert SQUARE.gauge((-1, 0)) == INFINITE
    assert SQUARE.gauge_lp((-1, 0)) == INFINITE
    assert SQUARE.gauge((1, 1)) == 1


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(symmetric_polytopes(d), points(d))),
       rationals(3, 4).filter(lambda c: c >= 0))
def test_gauge_positive_homogeneity_and_lp(args, c):
    p, x = args
    g = p.gauge(x)
    assert g == p.gauge_lp(x)
    assert p.gauge(tuple(c * v for v in x)) == c * g


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(symmetric_polytopes(d), points(d))))
def test_interior_iff_gauge_below_one(args):
    p, x = args
    interior = p.interior_contains(x)
    assert interior == (p.gauge(x) < 1)
    assert interior == p.interior_contains_lp(x)
    if interior:
        assert p.contains(x)


def test_interior_examples():
    assert SQUARE.interior_contains((F(1, 2), F(1, 2)))
    assert not SQUARE.interior_contains((0, F(1, 2)))
    assert not SQUARE.interior_contains((2, 0))
    with pytest.raises(NotFullDimensional):
        Polytope(((0, 0), (1, 1))).interior_contains((0, 0))


# -- difference bodies ----------------------------------------------------------

def test_difference_body_examples():
    assert same_hull(difference_body(SQUARE), Polytope.cube(2))
    hexagon = Polytope(((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)))
    assert same_hull(difference_body(TRIANGLE), hexagon)
    cube = Polytope.cube(3)
    assert same_hull(difference_body(cube), cube.scale(2))


def test_minkowski_difference_examples():
    pt = Polytope(((F(1, 3), 2),))
    assert minkowski_diff_bodies(pt, pt).vertices == ((0, 0),)
    seg = minkowski_diff_bodies(Polytope(((0,), (1,))), Polytope(((1,), (F(3, 2),))))
    assert seg.vertices == ((F(-3, 2),), (0,))


@given(st.integers(1, 3).flatmap(lambda d: polytopes(d, max_size=5)))
def test_difference_body_is_symmetric(p):
    dk = difference_body(p)
    assert dk.is_symmetric()
    assert same_hull(dk, minkowski_diff_bodies(p, p))


# -- slices ---------------------------------------------------------------------

def test_slice_examples():
    e = exact.identity(3)
    sq = slice_body(Polytope.cube(3, 0, 1), F(1, 2), e)
    assert same_hull(sq, SQUARE)
    seg = slice_body(TRIANGLE, F(1, 2), exact.identity(2))
    assert seg.vertices == ((0,), (F(1, 2),))
    assert slice_body(Polytope.cube(3, 0, 1), 2, e) is None


@given(st.integers(2, 3).flatmap(lambda d: st.tuples(full_polytopes(d), rationals(2, 3))))
def test_slice_points_lift_into_body(args):
    p, level = args
    section = slice_body(p, level, exact.identity(p.dim))
    lows, highs = p.bounding_box()
    if section is None:
        assert not (lows[-1] <= level <= highs[-1])
        return
    for y in section.vertices:
        assert p.contains(lift_slice_point(y, level, exact.identity(p.dim)))


@given(st.integers(2, 3).flatmap(lambda d: st.tuples(full_polytopes(d), st.integers(-3, 3))))
def test_slice_matches_lattice_points(args):
    p, level = args
    section = slice_body(p, level, exact.identity(p.dim))
    for z in itertools.product(range(-3, 4), repeat=p.dim - 1):
        x = tuple(Fraction(v) for v in z) + (Fraction(level),)
        in_slice = section is not None and section.contains(tuple(Fraction(v) for v in z))
        assert p.contains(x) == in_slice


def test_slice_in_a_skew_basis():
    basis = ((1, 0), (1, 1))
    sec = slice_body(SQUARE, F(1, 2), basis)
    # points y * (1,0) + 1/2 * (1,1) in the unit square: y in [-1/2, 1/2]
    assert sec.vertices == ((F(-1, 2),), (F(1, 2),))


# -- volume ---------------------------------------------------------------------

def test_volume_examples():
    assert Polytope.cube(3, 0, 1).volume() == 1
    assert TRIANGLE.volume() == F(1, 2)
    assert half_difference_body(TRIANGLE).volume() == F(3, 4)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_difference_body_of_simplex_is_extremal(d):
    # simplices attain vol(K - K) = binom(2d, d) vol(K)
    t = Polytope.simplex(d)
    assert difference_body(t).volume() == math.comb(2 * d, d) * t.volume()


def test_volume_degenerate_is_zero():
    assert Polytope(((0, 0, 0), (1, 1, 1), (2, 0, 1))).volume() == 0
    assert Polytope(((0, 0), (1, 1))).volume() == 0


def test_volume_unsupported_dimension():
    with pytest.raises(UnsupportedDimension):
        Polytope.cube(4).volume()


@given(st.lists(st.tuples(rationals(), rationals()).map(sorted), min_size=1, max_size=3))
def test_volume_of_boxes(sides):
    p = box([lo for lo, _ in sides], [hi for _, hi in sides])
    expected = Fraction(1)
    for lo, hi in sides:
        expected *= hi - lo
    assert p.volume() == expected


@given(st.lists(st.tuples(rationals(), rationals()).filter(lambda s: s[0] < s[1]).map(sorted),
                min_size=2, max_size=3), st.data())
def test_volume_additive_under_a_cut(sides, data):
    lows = [lo for lo, _ in sides]
    highs = [hi for _, hi in sides]
    lo, hi = lows[-1], highs[-1]
    cut = data.draw(st.fractions(lo, hi, max_denominator=6))
    whole = box(lows, highs).volume()
    lower = box(lows, highs[:-1] + [cut]).volume()
    upper = box(lows[:-1] + [cut], highs).volume()
    assert whole == lower + upper


@given(st.integers(1, 3).flatmap(lambda d: full_polytopes(d, max_size=6)))
def test_brunn_minkowski_instances(p):
    assert p.volume() <= half_difference_body(p).volume()


@given(st.integers(2, 3).flatmap(lambda d: full_polytopes(d, max_size=6)), st.data())
def test_volume_invariant_under_unimodular_maps(p, data):
    d = p.dim
    i, j = data.draw(st.permutations(range(d)))[:2]
    c = data.draw(st.integers(-2, 2))
    m = [[int(r == s) for s in range(d)] for r in range(d)]
    m[i][j] = c
    assert p.linear_image(m).volume() == p.volume()
    assert p.translate(tuple(range(d))).volume() == p.volume()


# -- transformations ------------------------------------------------------------

def test_transform_examples():
    assert Polytope(((0,), (1,))).translate((1,)).vertices == ((1,), (2,))
    assert same_hull(Polytope.cube(2).scale(F(1, 2)), box((F(-1, 2),) * 2, (F(1, 2),) * 2))
    assert Polytope(((0, 0), (1, 0))).negate().vertices == ((-1, 0), (0, 0))


def test_intersection_point():
    p = intersection_point(SQUARE, SQUARE.translate((1, 0)))
    assert SQUARE.contains(p) and SQUARE.translate((1, 0)).contains(p)
    assert intersection_point(SQUARE, SQUARE.translate((2, 0))) is None


@given(st.integers(1, 3).flatmap(lambda d: polytopes(d, max_size=6)))
def test_vertices_are_extreme_enough(p):
    # every generator stays inside the hull of the reported vertices
    r = p.reduced()
    assert all(r.contains_lp(g) for g in p.generators)
    assert set(r.vertices) <= set(p.generators)
    assume(p.affine_dim <= 2 and len(r.vertices) > 1)
    for v in r.vertices:
        others = Polytope(tuple(w for w in r.vertices if w != v))
        assert not others.contains_lp(v)

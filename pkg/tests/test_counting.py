from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conftest import box, lattices, polytopes, unimodular
from succmin.counting import count_D, count_G
from succmin.lattice import Lattice, Subgroup, raster_points
from succmin.polytope import Polytope

F = Fraction
Z2 = Lattice.standard(2)


def test_count_G_examples():
    assert count_G(Polytope.cube(2))[0] == 9
    assert count_G(Polytope.cube(3, 0, 1))[0] == 8
    assert count_G(Polytope.simplex(2, 3))[0] == 10


def test_count_D_examples():
    seg = Polytope(((0, 0), (3, 0)))
    assert count_D(seg, Z2, Subgroup(2, ((1, 0),)), 2) == 2
    assert count_D(box((0, 0), (3, 3)), Z2, Subgroup(2, ((1, 0), (0, 1))), 1) == 1
    assert count_D(Polytope.cube(2), Z2, Subgroup(2, ((1, 0),)), 3) == 9


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(polytopes(d, max_size=5), lattices(d))))
def test_count_G_matches_raster(args):
    k, lat = args
    assert count_G(k, lat)[0] == len(raster_points(k, lat))


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(
    polytopes(d, max_size=5), st.integers(1, 4),
    st.lists(st.lists(st.integers(-3, 3), min_size=d, max_size=d).map(tuple), max_size=d))))
def test_count_D_bounds(args):
    k, r, gens = args
    d = k.dim
    lat = Lattice.standard(d)
    sub = Subgroup(d, tuple(gens))
    g = count_G(k, lat)[0]
    dr = count_D(k, lat, sub, r)
    assert dr <= g
    if sub.index is not None:
        full_one = count_D(k, lat, Subgroup(d, tuple(tuple(int(i == j) for j in range(d)) for i in range(d))), 1)
        assert full_one == min(g, 1)
    if not sub.gens or sub.rank == 0:
        assert dr == g


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(
    polytopes(d, max_size=5), unimodular(d),
    st.lists(st.integers(-3, 3), min_size=d, max_size=d))))
def test_count_G_invariances(args):
    k, u, shift = args
    d = k.dim
    g = count_G(k)[0]
    assert count_G(k.translate(shift))[0] == g
    # the same point set described through a unimodular change of basis
    cols = tuple(tuple(u[r][c] for r in range(d)) for c in range(d))
    assert count_G(k, Lattice(cols))[0] == g

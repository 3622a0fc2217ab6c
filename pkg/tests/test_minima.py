from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import box, full_polytopes, lattices, symmetric_polytopes
from succmin import exact
from succmin.lattice import Lattice, check_adapted
from succmin.minima import (minima_oracle, property5_violations, q_from_lambda, successive_minima,
                            symmetric_body)
from succmin.polytope import NotFullDimensional, Polytope
from succmin.verifiers import check_property5

F = Fraction


@pytest.mark.parametrize("d", [1, 2, 3])
def test_symmetric_cube(d):
    prof = successive_minima(Polytope.cube(d))
    assert prof.lam == (1,) * d
    assert prof.q == (3,) * d


@pytest.mark.parametrize("d", [1, 2, 3])
def test_unit_cube(d):
    prof = successive_minima(Polytope.cube(d, 0, 1))
    assert prof.lam == (2,) * d
    assert prof.q == (2,) * d


def test_flat_box():
    prof = successive_minima(box((-2, F(-1, 2)), (2, F(1, 2))))
    assert prof.lam == (F(1, 2), 2)
    assert prof.q == (5, 2)
    assert prof.a[0] in ((1, 0), (-1, 0))


def test_profile_json():
    prof = successive_minima(Polytope.cube(3, 0, 1))
    js = prof.to_json()
    assert js["lambda"] == ["2", "2", "2"]
    assert js["q"] == [2, 2, 2]
    assert set(js) == {"lambda", "a", "e", "q"}


def test_lower_dimensional_rejected():
    with pytest.raises(NotFullDimensional):
        successive_minima(Polytope(((0, 0), (1, 1))))


def test_q_strictly_above():
    assert q_from_lambda(F(2, 3)) == 4
    assert q_from_lambda(1) == 3
    assert q_from_lambda(F(5, 2)) == 1


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(full_polytopes(d, max_size=5), lattices(d))))
def test_profile_invariants(args):
    k, lat = args
    prof = successive_minima(k, lat)
    body = symmetric_body(k, lat)
    assert list(prof.lam) == sorted(prof.lam) and prof.lam[0] > 0
    assert exact.rank(prof.a) == k.dim
    for lam, a, q in zip(prof.lam, prof.a, prof.q):
        assert body.gauge(a) == lam
        assert q == exact.floor(2 / lam) + 1 and q > 2 / lam
    assert list(prof.q) == sorted(prof.q, reverse=True)
    assert check_adapted(prof.adapted)
    assert not property5_violations(k, lat, prof)


@given(full_polytopes(2, max_size=5, magnitude=2))
def test_minima_match_definition_oracle(k):
    prof = successive_minima(k)
    # the oracle box must hold lam_d * B; B lies in the box of the difference body
    lows, highs = symmetric_body(k, Lattice.standard(2)).bounding_box()
    radius = exact.ceil(prof.lam[-1] * max(max(abs(v) for v in lows), max(abs(v) for v in highs)))
    assert minima_oracle(k, Lattice.standard(2), max(radius, 1)) == prof.lam


@given(full_polytopes(2, max_size=5), st.sampled_from([F(1, 2), F(2), F(3, 2), F(1, 3)]))
def test_scaling_law(k, c):
    a = successive_minima(k)
    b = successive_minima(k.scale(c))
    assert b.lam == tuple(v / c for v in a.lam)
    assert b.q == tuple(q_from_lambda(v) for v in b.lam)


@given(st.integers(1, 3).flatmap(lambda d: symmetric_polytopes(d, max_size=4)))
def test_symmetric_witnesses(k):
    prof = successive_minima(k)
    for lam, a in zip(prof.lam, prof.a):
        # a in (lam / 2) (K - K) = lam K for symmetric K
        assert k.contains(tuple(F(v) / lam for v in a))
        assert k.gauge(a) == lam


def test_property5_on_examples():
    cube = Polytope.cube(2)
    assert check_property5(cube, Lattice.standard(2), successive_minima(cube)).holds
    flat = box((-2, F(-1, 2)), (2, F(1, 2)))
    rep = check_property5(flat, Lattice.standard(2), successive_minima(flat))
    assert rep.holds

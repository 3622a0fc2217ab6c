from fractions import Fraction
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from succmin.lattice import Lattice
from succmin.polytope import Polytope

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "data"


def rationals(magnitude=3, denom=4):
    return st.builds(Fraction, st.integers(-magnitude * denom, magnitude * denom),
                     st.integers(1, denom))


def points(dim, magnitude=3, denom=4):
    return st.tuples(*[rationals(magnitude, denom)] * dim)


def polytopes(dim, min_size=1, max_size=6, magnitude=3, denom=4):
    return st.lists(points(dim, magnitude, denom), min_size=min_size, max_size=max_size).map(
        lambda pts: Polytope(tuple(pts)))


def full_polytopes(dim, **kw):
    kw.setdefault("min_size", dim + 1)
    return polytopes(dim, **kw).filter(lambda p: p.full_dimensional)


def symmetric_polytopes(dim, **kw):
    kw.setdefault("min_size", dim)
    return polytopes(dim, **kw).map(
        lambda p: Polytope(p.generators + tuple(tuple(-v for v in g) for g in p.generators))
    ).filter(lambda p: p.full_dimensional)


@st.composite
def unimodular(draw, dim, steps=3):
    m = [[int(i == j) for j in range(dim)] for i in range(dim)]
    if dim == 1:
        return ((draw(st.sampled_from((1, -1))),),)
    for _ in range(steps):
        i = draw(st.integers(0, dim - 1))
        j = draw(st.integers(0, dim - 2))
        j = j if j < i else j + 1
        c = draw(st.integers(-2, 2))
        for row in m:
            row[j] += c * row[i]
    return tuple(tuple(r) for r in m)


@st.composite
def lattices(draw, dim):
    u = draw(unimodular(dim))
    scales = draw(st.lists(st.sampled_from((Fraction(1, 2), Fraction(1), Fraction(3, 2))),
                           min_size=dim, max_size=dim))
    cols = [tuple(u[r][c] * scales[c] for r in range(dim)) for c in range(dim)]
    return Lattice(tuple(cols))


def box(lows, highs):
    return Polytope.box([Fraction(v) for v in lows], [Fraction(v) for v in highs])

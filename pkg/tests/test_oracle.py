import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import sample_box
from bivrange.interval import Box2, Interval, subset
from bivrange.oracle import oracle_range
from bivrange.poly import Poly2, corpus


def test_clover4_reference():
    res = oracle_range(corpus("clover-4"), Box2.square(0.1, 0.2, 0.1), 1e-5)
    assert res.converged and res.resolution <= 1e-5
    # the printed range is that of -f
    assert (round(-res.range.hi, 4), round(-res.range.lo, 4)) == (-1.3586, -0.9646)


def test_grass_reference():
    res = oracle_range(corpus("grass"), Box2.square(0.1, 0.1, 0.0005), 1e-8)
    assert res.resolution <= 1e-8
    # the minimum is -60.53516118..., so the printed -60.5351611 is truncated,
    # not rounded; both ends agree within the printed-digit slack
    assert res.range.lo == pytest.approx(-60.5351611, abs=2e-7)
    assert round(res.range.hi, 7) == -59.2710915


def test_constant():
    res = oracle_range(Poly2.constant(3.0), Box2.square(-4, 2, 1.5), 1e-6)
    assert res.range == Interval(3.0, 3.0)
    assert res.resolution == 0.0


def test_bad_resolution():
    with pytest.raises(ValueError):
        oracle_range(Poly2.x(), Box2.square(0, 0, 1), 0.0)


def test_budget_exhaustion_is_honest():
    f = corpus("clover-8")
    box = Box2.square(0.3, -0.2, 0.5)
    res = oracle_range(f, box, 1e-14, budget=50)
    assert not res.converged
    assert res.resolution > 0
    vals = sample_box(f, box, 60)
    outer = res.outer
    assert outer.lo <= vals.min() and vals.max() <= outer.hi
    assert subset(res.range, f.natural_extension(box))


def test_outer_property():
    res = oracle_range(Poly2.x(), Box2.square(0, 0, 1), 1e-9)
    assert res.outer.lo == res.range.lo - res.resolution


@st.composite
def polys(draw):
    nx = draw(st.integers(1, 5))
    ny = draw(st.integers(1, 5))
    vals = draw(st.lists(st.floats(-10, 10, allow_nan=False), min_size=nx * ny,
                         max_size=nx * ny))
    return Poly2(np.array(vals).reshape(nx, ny))


@settings(max_examples=60, deadline=None)
@given(polys(), st.floats(-2, 2), st.floats(-2, 2), st.floats(1e-3, 1.5),
       st.sampled_from([1e-4, 1e-8, 1e-10]))
def test_sandwich(p, mx, my, r, target):
    box = Box2.square(mx, my, r)
    res = oracle_range(p, box, target)
    vals = sample_box(p, box, 15)
    tol = 1e-12 * (1 + np.abs(vals).max())
    # the reported range is inner: a much finer run cannot move inside it
    fine = oracle_range(p, box, target * 1e-2)
    assert fine.outer.lo <= res.range.lo + tol and res.range.hi <= fine.outer.hi + tol
    # widened by the resolution it covers every sample
    assert res.outer.lo <= vals.min() + tol and vals.max() <= res.outer.hi + tol
    ne = p.natural_extension(box)
    assert ne.lo <= res.range.lo + tol and res.range.hi <= ne.hi + tol
    if res.converged:
        assert res.resolution <= target * (1 + 1e-9) + tol

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bivrange.interval import (Box2, Interval, add, contains, hausdorff, hull, mul, pow, scale,
                               sub, subset)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


@st.composite
def intervals(draw):
    a, b = draw(finite), draw(finite)
    return Interval(min(a, b), max(a, b))


def test_invalid_interval_rejected():
    with pytest.raises(ValueError):
        Interval(1.0, 0.0)
    with pytest.raises(ValueError):
        Interval(float("nan"), 1.0)


def test_width_and_magnitude():
    iv = Interval(-3.0, 2.0)
    assert iv.width == 5.0
    assert iv.magnitude == 3.0
    assert Interval(1.0, 4.0).magnitude == 4.0


def test_arithmetic_examples():
    assert mul(Interval(-1, 2), Interval(-3, 1)) == Interval(-6, 3)
    assert pow(Interval(-1, 2), 2) == Interval(0, 4)
    assert add(Interval(1, 2), Interval(3, 4)) == Interval(4, 6)
    assert sub(Interval(1, 2), Interval(3, 4)) == Interval(-3, -1)
    assert scale(Interval(1, 2), -2) == Interval(-4, -2)
    assert pow(Interval(-3, -2), 2) == Interval(4, 9)
    assert pow(Interval(-2, 3), 3) == Interval(-8, 27)
    assert pow(Interval(-2, 3), 0) == Interval(1, 1)


def test_set_operations():
    # endpoints are rounded to 4 decimals, so q agrees to the last printed digit
    assert hausdorff(Interval(-1.3586, -0.9646), Interval(-1.4303, -0.6978)) == pytest.approx(
        0.2667, abs=2e-4)
    iv = Interval(0.25, 7.5)
    assert hausdorff(iv, iv) == 0.0
    assert hausdorff(Interval(0, 1), Interval(0.5, 3)) == 2.0
    assert hull(Interval(0, 1), Interval(2, 3)) == Interval(0, 3)
    assert contains(Interval(-1, 1), 0)
    assert 0.5 in Interval(0, 1)
    assert subset(Interval(0, 1), Interval(-1, 2))
    assert not subset(Interval(-2, 1), Interval(-1, 2))


def test_operators_match_functions():
    a, b = Interval(-1, 2), Interval(0.5, 3)
    assert a + b == add(a, b)
    assert a - b == sub(a, b)
    assert a * b == mul(a, b)
    assert 2 * a == scale(a, 2)
    assert -a == Interval(-2, 1)
    assert a + 1 == Interval(0, 3)
    assert a ** 2 == pow(a, 2)
    assert tuple(a) == (-1, 2)


def test_box_geometry():
    box = Box2.from_bounds(0.0, 2.0, 1.0, 2.0)
    assert box.midpoint == (1.0, 1.5)
    assert box.radii == (1.0, 0.5)
    assert box.width == 2.0
    assert not box.is_square
    sq = Box2.square(0.1, 0.2, 0.1)
    assert sq.is_nearly_square()
    assert len(sq.corners) == 4
    assert sq.contains_point(0.15, 0.25)
    assert not sq.contains_point(0.3, 0.2)


@given(intervals(), intervals(), st.floats(0, 1), st.floats(0, 1))
def test_mul_contains_products(a, b, s, t):
    x = a.lo + s * (a.hi - a.lo)
    y = b.lo + t * (b.hi - b.lo)
    p = mul(a, b)
    tol = 1e-12 * (1 + abs(x * y))
    assert p.lo - tol <= x * y <= p.hi + tol


@given(intervals(), st.integers(0, 6), st.floats(0, 1))
def test_pow_contains_powers(a, k, s):
    x = a.lo + s * (a.hi - a.lo)
    p = pow(a, k)
    tol = 1e-12 * (1 + abs(x) ** k)
    assert p.lo - tol <= x ** k <= p.hi + tol
    # the image of a power is exact: both endpoints are attained
    ends = [a.lo ** k, a.hi ** k] + ([0.0] if k > 0 and a.lo <= 0 <= a.hi else [])
    if k == 0:
        ends = [1.0]
    assert min(ends) == p.lo and max(ends) == p.hi


@given(intervals(), intervals())
def test_hull_and_hausdorff(a, b):
    h = hull(a, b)
    assert subset(a, h) and subset(b, h)
    assert hausdorff(a, b) == hausdorff(b, a) >= 0


@given(intervals(), intervals())
def test_add_sub_endpoints(a, b):
    s = add(a, b)
    d = sub(a, b)
    for x, y in itertools.product(a, b):
        assert s.lo <= x + y <= s.hi
        assert d.lo <= x - y <= d.hi

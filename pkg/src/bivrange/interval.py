"""Closed intervals, axis-aligned boxes and the arithmetic on them.

All endpoint arithmetic is plain IEEE double precision with round-to-nearest.
No outward rounding is performed; results are exact set images only up to
the rounding of each endpoint operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True, slots=True)
class Interval:
    """The closed real interval ``[lo, hi]``."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"invalid interval: lo={self.lo!r} > hi={self.hi!r}")

    @classmethod
    def point(cls, x: float) -> Interval:
        return cls(x, x)

    @classmethod
    def symmetric(cls, radius: float) -> Interval:
        """``radius * [-1, 1]`` for ``radius >= 0``."""
        return cls(-radius, radius)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def magnitude(self) -> float:
        return max(abs(self.lo), abs(self.hi))

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def rad(self) -> float:
        return 0.5 * (self.hi - self.lo)

    def __add__(self, other):
        if isinstance(other, Interval):
            return add(self, other)
        return Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Interval):
            return sub(self, other)
        return Interval(self.lo - other, self.hi - other)

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other):
        if isinstance(other, Interval):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return pow(self, k)

    def __contains__(self, x: float) -> bool:
        return contains(self, x)

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __repr__(self):
        return f"[{self.lo!r}, {self.hi!r}]"


def add(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo + b.lo, a.hi + b.hi)


def sub(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo - b.hi, a.hi - b.lo)


def mul(a: Interval, b: Interval) -> Interval:
    p = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(min(p), max(p))


def scale(a: Interval, c: float) -> Interval:
    if c >= 0:
        return Interval(a.lo * c, a.hi * c)
    return Interval(a.hi * c, a.lo * c)


def pow(a: Interval, k: int) -> Interval:
    """``{x**k : x in a}``; even powers of intervals straddling zero start at 0."""
    if k < 0:
        raise ValueError("negative exponent")
    if k == 0:
        return Interval(1.0, 1.0)
    lo_k, hi_k = a.lo ** k, a.hi ** k
    if k % 2 == 1:
        return Interval(lo_k, hi_k)
    if a.lo >= 0:
        return Interval(lo_k, hi_k)
    if a.hi <= 0:
        return Interval(hi_k, lo_k)
    return Interval(0.0, max(lo_k, hi_k))


def hausdorff(a: Interval, b: Interval) -> float:
    return max(abs(a.lo - b.lo), abs(a.hi - b.hi))


def hull(a: Interval, b: Interval) -> Interval:
    return Interval(min(a.lo, b.lo), max(a.hi, b.hi))


def contains(a: Interval, x: float) -> bool:
    return a.lo <= x <= a.hi


def subset(a: Interval, b: Interval) -> bool:
    """True if ``a`` lies inside ``b``."""
    return b.lo <= a.lo and a.hi <= b.hi


@dataclass(frozen=True, slots=True)
class Box2:
    """Axis-aligned rectangle ``x × y``."""

    x: Interval
    y: Interval

    @classmethod
    def from_bounds(cls, x0: float, x1: float, y0: float, y1: float) -> Box2:
        return cls(Interval(x0, x1), Interval(y0, y1))

    @classmethod
    def square(cls, mx: float, my: float, r: float) -> Box2:
        return cls(Interval(mx - r, mx + r), Interval(my - r, my + r))

    @property
    def midpoint(self) -> Tuple[float, float]:
        return (0.5 * (self.x.lo + self.x.hi), 0.5 * (self.y.lo + self.y.hi))

    @property
    def radii(self) -> Tuple[float, float]:
        return (0.5 * (self.x.hi - self.x.lo), 0.5 * (self.y.hi - self.y.lo))

    @property
    def width(self) -> float:
        return 2.0 * max(self.radii)

    @property
    def is_square(self) -> bool:
        rx, ry = self.radii
        return rx == ry

    def is_nearly_square(self, rel_tol: float = 1e-12) -> bool:
        """Square up to the rounding incurred when the endpoints were formed."""
        rx, ry = self.radii
        return math.isclose(rx, ry, rel_tol=rel_tol, abs_tol=0.0)

    @property
    def corners(self):
        return [(self.x.lo, self.y.lo), (self.x.lo, self.y.hi),
                (self.x.hi, self.y.lo), (self.x.hi, self.y.hi)]

    def contains_point(self, px: float, py: float) -> bool:
        return contains(self.x, px) and contains(self.y, py)

"""Range functions for bivariate polynomials over square boxes.

* Taylor form of order m (1..4) and level n, plus its maximal variant.
* Recursive Lagrange form of order 3 (biquadratic interpolation on a 3x3 grid).
* Recursive Hermite form of order 4 (bicubic Hermite interpolation at corners).
* The natural interval extension, as a baseline.

Every form returns an ``Interval`` that encloses ``f(B)``.  Derivatives at a
point always come from ``Poly2.derivatives_at``; the optional ``GridCache``
stores exactly those tables, so sharing never changes a result.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from .exact_range import (_bicubic_remainder, _biquadratic_remainder, _biv_cubic,
                          _biv_linear, _biv_quadratic)
from .interval import Box2, Interval
from .poly import Poly2

OMEGA_L_FACTOR = math.sqrt(3.0) / 27.0
OMEGA_H_FACTOR = 1.0 / 24.0
SQUARE_REL_TOL = 1e-12


def omega_lagrange(r: float) -> float:
    """Interpolation error constant of the 3x3 biquadratic grid."""
    return OMEGA_L_FACTOR * r ** 3


def omega_hermite(r: float) -> float:
    """Interpolation error constant of bicubic corner Hermite data."""
    return OMEGA_H_FACTOR * r ** 4


@lru_cache(maxsize=None)
def delannoy(n: int, k: int) -> int:
    """``sum_i C(k, i) C(n - k, i) 2^i``: row ``n`` of the Tribonacci triangle."""
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return sum(math.comb(k, i) * math.comb(n - k, i) * 2 ** i for i in range(min(k, n - k) + 1))


def delannoy_row(n: int) -> List[int]:
    return [delannoy(n, k) for k in range(n + 1)]


# ---------------------------------------------------------------------------
# form selection

MAXIMAL = None
_KINDS = ("natural", "taylor", "lagrange", "hermite")


@dataclass(frozen=True)
class FormSpec:
    """Which range function to apply.  ``level=None`` selects the maximal form."""

    kind: str
    order: int = 0
    level: Optional[int] = MAXIMAL
    sharing: bool = False

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown form kind {self.kind!r}")
        if self.kind == "taylor":
            if not 1 <= self.order <= 4:
                raise ValueError("Taylor order must be in 1..4")
            if self.level is not None and self.level < self.order:
                raise ValueError("Taylor level must be at least the order")
        if self.kind == "lagrange":
            object.__setattr__(self, "order", 3)
        if self.kind == "hermite":
            object.__setattr__(self, "order", 4)
        if self.kind in ("lagrange", "hermite") and self.level is not None and self.level < 1:
            raise ValueError("level must be at least 1")

    @classmethod
    def parse(cls, text: str) -> FormSpec:
        """``t1``..``t4``, ``l3``, ``h4`` or ``ne``; optional ``@n`` level and ``+shared``."""
        m = re.fullmatch(r"\s*(ne|t[1-4]|l3|h4)(?:@(\d+))?(\+shared|sh)?\s*", text.lower())
        if not m:
            raise ValueError(f"cannot parse form {text!r}")
        name, level, shared = m.groups()
        level = int(level) if level else None
        if name == "ne":
            return cls("natural", sharing=bool(shared))
        kind = {"t": "taylor", "l": "lagrange", "h": "hermite"}[name[0]]
        return cls(kind, int(name[1]), level, bool(shared))

    @property
    def label(self) -> str:
        if self.kind == "natural":
            base = "NE"
        else:
            base = self.kind[0].upper() + str(self.order)
        if self.level is not None:
            base += f"@{self.level}"
        return base + ("sh" if self.sharing else "")


# ---------------------------------------------------------------------------
# derivative tables and the shared node cache

def _entry(table: np.ndarray, i: int, j: int) -> float:
    if i < table.shape[0] and j < table.shape[1]:
        return float(table[i, j])
    return 0.0


class GridCache:
    """Derivative tables of one polynomial, keyed on exact node coordinates.

    Used in two phases: populate (single writer), then ``freeze`` for
    concurrent read-only use.  Lookups of missing nodes after freezing are
    computed on the fly but not stored.
    """

    def __init__(self, f: Poly2):
        self.f = f
        self._tables: Dict[Tuple[float, float], np.ndarray] = {}
        self._lock = threading.Lock()
        self.frozen = False
        self.hits = 0
        self.misses = 0

    def __len__(self):
        return len(self._tables)

    def table(self, x: float, y: float) -> np.ndarray:
        key = (x, y)
        t = self._tables.get(key)
        if t is not None:
            self.hits += 1
            return t
        self.misses += 1
        t = self.f.derivatives_at(x, y)
        if not self.frozen:
            with self._lock:
                t = self._tables.setdefault(key, t)
        return t

    def value(self, d, x: float, y: float) -> float:
        return _entry(self.table(x, y), d[0], d[1])

    def populate(self, nodes) -> None:
        for x, y in nodes:
            self.table(x, y)

    def freeze(self) -> GridCache:
        self.frozen = True
        return self


def _tables_at(f: Poly2, pts, cache: Optional[GridCache]):
    if cache is None:
        return [f.derivatives_at(x, y) for x, y in pts]
    if cache.f is not f:
        raise ValueError("cache belongs to a different polynomial")
    return [cache.table(x, y) for x, y in pts]


# ---------------------------------------------------------------------------
# shared helpers

def square_radius(box: Box2) -> float:
    """Radius of a (numerically) square box; anything else is rejected."""
    rx, ry = box.radii
    if not box.is_nearly_square(SQUARE_REL_TOL):
        raise ValueError(f"box is not square (r_x={rx!r}, r_y={ry!r})")
    r = max(rx, ry)
    if not r > 0:
        raise ValueError("degenerate box")
    return r


def _grid_nodes(box: Box2):
    xs = (box.x.lo, 0.5 * (box.x.lo + box.x.hi), box.x.hi)
    ys = (box.y.lo, 0.5 * (box.y.lo + box.y.hi), box.y.hi)
    return xs, ys


def _mag_ne(f: Poly2, i: int, j: int, box: Box2) -> float:
    """``|[]f^(i,j)(B)|`` with the natural extension as range function."""
    d = f.partial((i, j))
    if d.is_zero():
        return 0.0
    return d.natural_extension(box).magnitude


def _ne_tail(f: Poly2, box: Box2, step: int, n: int) -> Tuple[float, float]:
    """Level-``n`` tail coefficients from natural-extension magnitudes of
    ``f^(step a, step b)``."""
    un = sum(delannoy(n, j) * _mag_ne(f, step * (n - j), step * j, box) for j in range(n + 1))
    un1 = sum(delannoy(n - 1, j - 1) * _mag_ne(f, step * (n + 1 - j), step * j, box)
              for j in range(1, n + 1))
    return un, un1


# ---------------------------------------------------------------------------
# natural extension

def natural_extension_form(f: Poly2, box: Box2) -> Interval:
    return f.natural_extension(box)


# ---------------------------------------------------------------------------
# Taylor forms

def _taylor(f: Poly2, box: Box2, m: int, n: Optional[int]) -> Interval:
    r = square_radius(box)
    if m == 1 and (n is None or n >= 2):
        # T_0(B) + r S_1 and T_1(B) + r^2 S_2 are the same interval; use the
        # second route so both orders agree to the last bit
        m = 2
    mx, my = box.midpoint
    rx, ry = box.radii
    t = f.taylor_coefficients(mx, my)
    d = f.degree
    top = d if n is None else n - 1
    s = []
    for k in range(m, top + 1):
        s.append(sum(abs(_entry(t, k - j, j)) for j in range(k + 1)))
    if n is not None:
        fact = math.factorial
        s.append(sum(_mag_ne(f, n - j, j, box) / (fact(n - j) * fact(j))
                     for j in range(n + 1)))
    S = 0.0
    for sk in reversed(s):
        S = S * r + sk
    c = [[_entry(t, i, j) if i + j <= m - 1 else 0.0 for j in range(4)] for i in range(4)]
    if m <= 2:
        lo, hi = _biv_linear(c, rx, ry)
    elif m == 3:
        lo, hi = _biv_quadratic(c, rx, ry)
    else:
        lo, hi = _biv_cubic(c, rx, ry)
    e = r ** m * S
    return Interval(lo - e, hi + e)


def taylor_form(f: Poly2, box: Box2, m: int, n: int) -> Interval:
    """Taylor form of order ``m`` and level ``n``."""
    if not 1 <= m <= 4:
        raise ValueError("order must be in 1..4")
    if n < m:
        raise ValueError("level must be at least the order")
    return _taylor(f, box, m, n)


def maximal_taylor_form(f: Poly2, box: Box2, m: int) -> Interval:
    """Taylor form at level ``d + 1`` with the (vanishing) top term dropped."""
    if not 1 <= m <= 4:
        raise ValueError("order must be in 1..4")
    return _taylor(f, box, m, None)


# ---------------------------------------------------------------------------
# recursive Lagrange form

def lagrange_coefficients(v, rx: float, ry: float) -> List[List[float]]:
    """Centred coefficients of the biquadratic through ``v[i][j]`` at
    ``(mx + (i - 1) rx, my + (j - 1) ry)``, as a 4x4 grid."""
    if not (rx > 0 and ry > 0):
        raise ValueError("degenerate box")
    f00, f01, f02 = v[0]
    f10, f11, f12 = v[1]
    f20, f21, f22 = v[2]
    c = [[0.0] * 4 for _ in range(4)]
    c[0][0] = f11
    c[1][0] = (f21 - f01) / (2 * rx)
    c[0][1] = (f12 - f10) / (2 * ry)
    c[2][0] = (f21 - 2 * f11 + f01) / (2 * rx * rx)
    c[1][1] = (f22 - f02 - f20 + f00) / (4 * rx * ry)
    c[0][2] = (f12 - 2 * f11 + f10) / (2 * ry * ry)
    c[2][1] = (f22 - 2 * f12 + f02 - f20 + 2 * f10 - f00) / (4 * rx * rx * ry)
    c[1][2] = (f22 - 2 * f21 + f20 - f02 + 2 * f01 - f00) / (4 * rx * ry * ry)
    c[2][2] = (f22 - 2 * f12 + f02 - 2 * f21 + 4 * f11 - 2 * f01 + f20 - 2 * f10 + f00) \
        / (4 * rx * rx * ry * ry)
    return c


def lagrange_interpolate(values, box: Box2):
    """The biquadratic interpolant of a 3x3 grid of values as a ``CenteredPoly2``."""
    from .exact_range import CenteredPoly2

    rx, ry = box.radii
    return CenteredPoly2.from_grid(lagrange_coefficients(values, rx, ry), box)


def _split_range_lagrange(c, rx: float, ry: float) -> Interval:
    a, b = _biv_quadratic(c, rx, ry)
    p, q = _biquadratic_remainder(c, rx, ry)
    return Interval(a, b), Interval(p, q)


def _lagrange(f: Poly2, box: Box2, n: Optional[int], cache: Optional[GridCache]) -> Interval:
    r = square_radius(box)
    rx, ry = box.radii
    if n is None:
        level, tails = f.degree // 3 + 1, False
    else:
        level, tails = n, True
    xs, ys = _grid_nodes(box)
    pts = [(x, y) for x in xs for y in ys]
    tables = _tables_at(f, pts, cache)

    def interp(i, j):
        v = [[_entry(tables[3 * a + b], 3 * i, 3 * j) for b in range(3)] for a in range(3)]
        return _split_range_lagrange(lagrange_coefficients(v, rx, ry), rx, ry)

    t00, r00 = interp(0, 0)
    omega = omega_lagrange(r)
    u = []
    for k in range(1, level):
        acc = 0.0
        for j in range(k + 1):
            t, rr = interp(k - j, j)
            acc += delannoy(k, j) * (t + rr).magnitude
        u.append(acc)
    if tails:
        u.extend(_ne_tail(f, box, 3, level))
    U = 0.0
    for uk in reversed(u):
        U = (U + uk) * omega
    base = t00 + r00
    return Interval(base.lo - U, base.hi + U)


def recursive_lagrange_form(f: Poly2, box: Box2, n: int,
                            cache: Optional[GridCache] = None) -> Interval:
    """Recursive Lagrange form of order 3 and level ``n``."""
    if n < 1:
        raise ValueError("level must be at least 1")
    return _lagrange(f, box, n, cache)


def maximal_lagrange_form(f: Poly2, box: Box2, cache: Optional[GridCache] = None) -> Interval:
    return _lagrange(f, box, None, cache)


# ---------------------------------------------------------------------------
# recursive Hermite form

def _hermite_1d(r: float) -> np.ndarray:
    """Rows give the centred cubic coefficients from
    ``(p(-r), p(r), p'(-r), p'(r))``."""
    return np.array([
        [0.5, 0.5, r / 4, -r / 4],
        [-3 / (4 * r), 3 / (4 * r), -0.25, -0.25],
        [0.0, 0.0, -1 / (4 * r), 1 / (4 * r)],
        [1 / (4 * r ** 3), -1 / (4 * r ** 3), 1 / (4 * r * r), 1 / (4 * r * r)],
    ])


def hermite_coefficients(f, fx, fy, fxy, rx: float, ry: float) -> List[List[float]]:
    """Centred coefficients of the bicubic matching value, ``f_x``, ``f_y`` and
    ``f_xy`` at the corners.  Each argument is a 2x2 array indexed ``[i][j]``
    for the corner ``(mx + (2i - 1) rx, my + (2j - 1) ry)``."""
    if not (rx > 0 and ry > 0):
        raise ValueError("degenerate box")
    # data matrix: rows (value, d/dx) x corner in x, columns likewise in y
    F = np.empty((4, 4))
    for a, src_x in enumerate(((f, fy), (fx, fxy))):
        for b in range(2):
            src = src_x[b]
            for i in range(2):
                for j in range(2):
                    F[2 * a + i, 2 * b + j] = src[i][j]
    C = _hermite_1d(rx) @ F @ _hermite_1d(ry).T
    return C.tolist()


def hermite_interpolate(f, fx, fy, fxy, box: Box2):
    from .exact_range import CenteredPoly2

    rx, ry = box.radii
    return CenteredPoly2.from_grid(hermite_coefficients(f, fx, fy, fxy, rx, ry), box)


def _split_range_hermite(c, rx: float, ry: float):
    q = [[c[i][j] if i + j <= 3 else 0.0 for j in range(4)] for i in range(4)]
    a, b = _biv_cubic(q, rx, ry)
    p, s = _bicubic_remainder(c, rx, ry)
    return Interval(a, b), Interval(p, s)


def _hermite(f: Poly2, box: Box2, n: Optional[int], cache: Optional[GridCache]) -> Interval:
    r = square_radius(box)
    rx, ry = box.radii
    if n is None:
        level, tails = f.degree // 4 + 1, False
    else:
        level, tails = n, True
    xs = (box.x.lo, box.x.hi)
    ys = (box.y.lo, box.y.hi)
    pts = [(x, y) for x in xs for y in ys]
    tables = _tables_at(f, pts, cache)

    def interp(i, j):
        def corner(a, b):
            return [[_entry(tables[2 * p + q], 4 * i + a, 4 * j + b) for q in range(2)]
                    for p in range(2)]
        c = hermite_coefficients(corner(0, 0), corner(1, 0), corner(0, 1), corner(1, 1), rx, ry)
        return _split_range_hermite(c, rx, ry)

    t00, r00 = interp(0, 0)
    omega = omega_hermite(r)
    v = []
    for k in range(1, level):
        acc = 0.0
        for j in range(k + 1):
            t, rr = interp(k - j, j)
            acc += delannoy(k, j) * (t + rr).magnitude
        v.append(acc)
    if tails:
        v.extend(_ne_tail(f, box, 4, level))
    V = 0.0
    for vk in reversed(v):
        V = (V + vk) * omega
    base = t00 + r00
    return Interval(base.lo - V, base.hi + V)


def recursive_hermite_form(f: Poly2, box: Box2, n: int,
                           cache: Optional[GridCache] = None) -> Interval:
    """Recursive Hermite form of order 4 and level ``n``."""
    if n < 1:
        raise ValueError("level must be at least 1")
    return _hermite(f, box, n, cache)


def maximal_hermite_form(f: Poly2, box: Box2, cache: Optional[GridCache] = None) -> Interval:
    return _hermite(f, box, None, cache)


# ---------------------------------------------------------------------------
# dispatch

def evaluate(spec: FormSpec, f: Poly2, box: Box2, cache: Optional[GridCache] = None) -> Interval:
    if spec.kind == "natural":
        return natural_extension_form(f, box)
    if spec.kind == "taylor":
        return _taylor(f, box, spec.order, spec.level)
    if spec.kind == "lagrange":
        return _lagrange(f, box, spec.level, cache)
    return _hermite(f, box, spec.level, cache)


def nodes_for(spec: FormSpec, box: Box2):
    """Points at which ``spec`` reads derivative tables on ``box``."""
    if spec.kind == "lagrange":
        xs, ys = _grid_nodes(box)
    elif spec.kind == "hermite":
        xs, ys = (box.x.lo, box.x.hi), (box.y.lo, box.y.hi)
    else:
        return []
    return [(x, y) for x in xs for y in ys]

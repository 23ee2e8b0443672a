"""Exact ranges of low-degree polynomials over intervals and boxes.

Polynomials are given in centred form, ``p = sum c[i][j] (x - mx)^i (y - my)^j``,
so a kernel only needs the coefficients and the radii of the box.

Univariate: linear, quadratic and cubic are exact.  Bivariate: linear,
quadratic and cubic are exact.  Biquadratic and bicubic polynomials are split
into their quadratic (cubic) Taylor part and a remainder; both parts get exact
ranges and their sum encloses the range of the whole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from .interval import Box2, Interval
from .roots import solve_poly, trim

# coefficient magnitudes (times the matching power of the radius) below this
# fraction of the largest term are treated as zero when dispatching by degree
DISPATCH_EPS = 1e-14
# stationary-point candidates must satisfy |A|, |B| <= tol * (1 + max|c|)
STATIONARY_TOL = 1e-9
# near-real roots of eliminants are kept as real candidates
IMAG_TOL = 1e-6
# resultant coefficients below this multiple of their rounding magnitude vanish
RESULTANT_EPS = 1e-12

LINEAR = frozenset({(0, 0), (1, 0), (0, 1)})
QUADRATIC = LINEAR | {(2, 0), (1, 1), (0, 2)}
CUBIC = QUADRATIC | {(3, 0), (2, 1), (1, 2), (0, 3)}
BIQUADRATIC = frozenset((i, j) for i in range(3) for j in range(3))
BICUBIC = frozenset((i, j) for i in range(4) for j in range(4))
BIQUADRATIC_REMAINDER = frozenset({(2, 1), (1, 2), (2, 2)})
BICUBIC_REMAINDER = frozenset({(3, 1), (2, 2), (1, 3), (3, 2), (2, 3), (3, 3)})

Grid = List[List[float]]


class SolverFailure(RuntimeError):
    """Stationary points could not be located reliably."""


@dataclass(frozen=True)
class CenteredPoly1:
    """``p(x) = sum c[k] (x - m)^k`` over ``[m - r, m + r]``, degree <= 3."""

    c: Tuple[float, ...]
    m: float = 0.0
    r: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(float(v) for v in self.c))
        if len(self.c) > 4:
            raise ValueError("degree above three")
        if not self.r >= 0:
            raise ValueError("negative radius")

    @property
    def interval(self) -> Interval:
        return Interval(self.m - self.r, self.m + self.r)

    def __call__(self, x: float) -> float:
        return _horner(self.c, x - self.m)


@dataclass(frozen=True)
class CenteredPoly2:
    """``p(x, y) = sum c[(i, j)] (x - mx)^i (y - my)^j`` over ``box``."""

    c: Mapping[Tuple[int, int], float]
    box: Box2

    def __post_init__(self):
        clean: Dict[Tuple[int, int], float] = {}
        for (i, j), v in dict(self.c).items():
            if not (0 <= i <= 3 and 0 <= j <= 3):
                raise ValueError(f"unsupported monomial ({i}, {j})")
            clean[(i, j)] = float(v)
        object.__setattr__(self, "c", clean)

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence[float]], box: Box2) -> CenteredPoly2:
        return cls({(i, j): v for i, row in enumerate(grid) for j, v in enumerate(row)
                    if v != 0.0}, box)

    def support(self):
        return {k for k, v in self.c.items() if v != 0.0}

    def grid(self) -> Grid:
        g = [[0.0] * 4 for _ in range(4)]
        for (i, j), v in self.c.items():
            g[i][j] = v
        return g

    def part(self, keys) -> CenteredPoly2:
        return CenteredPoly2({k: v for k, v in self.c.items() if k in keys}, self.box)

    def __call__(self, x: float, y: float) -> float:
        mx, my = self.box.midpoint
        return _eval_grid(self.grid(), x - mx, y - my)


# ---------------------------------------------------------------------------
# small helpers

def _horner(q: Sequence[float], x: float) -> float:
    acc = 0.0
    for v in reversed(q):
        acc = acc * x + v
    return acc


def _eval_grid(c: Grid, X: float, Y: float) -> float:
    acc = 0.0
    for row in reversed(c):
        acc = acc * X + _horner(row, Y)
    return acc


def _fix_x(c: Grid, X: float) -> List[float]:
    """Coefficients in ``Y`` of ``p(X, Y)`` for fixed centred ``X``."""
    return [_horner([c[i][j] for i in range(len(c))], X) for j in range(len(c[0]))]


def _fix_y(c: Grid, Y: float) -> List[float]:
    return [_horner(row, Y) for row in c]


def _negligible(top: Sequence[float], terms: Sequence[float]) -> bool:
    """All ``top`` term magnitudes vanish against the largest of ``terms``."""
    big = max(terms)
    return all(t <= DISPATCH_EPS * big for t in top)


def _check_support(p: CenteredPoly2, allowed, kind: str):
    extra = p.support() - allowed
    if extra:
        raise ValueError(f"{kind} kernel got monomials outside its index set: "
                         f"{sorted(extra)}")


# ---------------------------------------------------------------------------
# univariate kernels, on (coefficients, radius)

def _uni_linear(c0: float, c1: float, r: float) -> Tuple[float, float]:
    d = r * abs(c1)
    return c0 - d, c0 + d


def _uni_quadratic(c0: float, c1: float, c2: float, r: float) -> Tuple[float, float]:
    if c2 == 0.0:
        return _uni_linear(c0, c1, r)
    pa = c0 - c1 * r + c2 * r * r
    pb = c0 + c1 * r + c2 * r * r
    lo, hi = (pa, pb) if pa <= pb else (pb, pa)
    if abs(c1) < 2.0 * abs(c2) * r:
        v = c0 - c1 * c1 / (4.0 * c2)
        if c2 > 0:
            lo = min(lo, v)
        else:
            hi = max(hi, v)
    return lo, hi


def _uni_cubic(c0: float, c1: float, c2: float, c3: float, r: float) -> Tuple[float, float]:
    if _negligible([abs(c3) * r ** 3], [abs(c0), abs(c1) * r, abs(c2) * r * r,
                                        abs(c3) * r ** 3]):
        return _uni_quadratic(c0, c1, c2, r)
    q = (c0, c1, c2, c3)
    pa, pb = _horner(q, -r), _horner(q, r)
    lo, hi = (pa, pb) if pa <= pb else (pb, pa)
    # p'(X) = c1 + 2 c2 X + 3 c3 X^2
    disc = c2 * c2 - 3.0 * c1 * c3
    if disc > 0:
        s = math.sqrt(disc)
        t = -(c2 + math.copysign(s, c2))
        xs = [t / (3.0 * c3)]
        if t != 0.0:
            xs.append(c1 / t)
        for X in xs:
            if abs(X) < r:
                v = _horner(q, X)
                lo, hi = min(lo, v), max(hi, v)
    return lo, hi


def _uni(q: Sequence[float], r: float) -> Tuple[float, float]:
    q = list(q) + [0.0] * (4 - len(q))
    while len(q) > 4:
        if q[-1] != 0.0:
            raise ValueError("degree above three")
        q.pop()
    return _uni_cubic(q[0], q[1], q[2], q[3], r)


def _uni_checked(p: CenteredPoly1, maxdeg: int):
    c = list(p.c)
    while len(c) > maxdeg + 1:
        if c[-1] != 0.0:
            raise ValueError(f"polynomial degree exceeds {maxdeg}")
        c.pop()
    return c + [0.0] * (maxdeg + 1 - len(c))


def range_uni_linear(p: CenteredPoly1) -> Interval:
    c0, c1 = _uni_checked(p, 1)
    return Interval(*_uni_linear(c0, c1, p.r))


def range_uni_quadratic(p: CenteredPoly1) -> Interval:
    c0, c1, c2 = _uni_checked(p, 2)
    return Interval(*_uni_quadratic(c0, c1, c2, p.r))


def range_uni_cubic(p: CenteredPoly1) -> Interval:
    c0, c1, c2, c3 = _uni_checked(p, 3)
    return Interval(*_uni_cubic(c0, c1, c2, c3, p.r))


# ---------------------------------------------------------------------------
# bivariate exact kernels on (grid, rx, ry)

def _corners(c: Grid, rx: float, ry: float) -> Tuple[float, float]:
    vals = [_eval_grid(c, sx * rx, sy * ry) for sx in (-1.0, 1.0) for sy in (-1.0, 1.0)]
    return min(vals), max(vals)


def _boundary(c: Grid, rx: float, ry: float, lo: float, hi: float) -> Tuple[float, float]:
    """Fold in the exact ranges of ``p`` on the four edges of the box."""
    for Y in (-ry, ry):
        a, b = _uni(_fix_y(c, Y), rx)
        lo, hi = min(lo, a), max(hi, b)
    for X in (-rx, rx):
        a, b = _uni(_fix_x(c, X), ry)
        lo, hi = min(lo, a), max(hi, b)
    return lo, hi


def _biv_linear(c: Grid, rx: float, ry: float) -> Tuple[float, float]:
    d = rx * abs(c[1][0]) + ry * abs(c[0][1])
    return c[0][0] - d, c[0][0] + d


def _truncate(c: Grid, deg: int) -> Grid:
    return [[c[i][j] if i + j <= deg else 0.0 for j in range(4)] for i in range(4)]


def _biv_quadratic(c: Grid, rx: float, ry: float) -> Tuple[float, float]:
    c = _truncate(c, 2)
    c20, c11, c02 = c[2][0], c[1][1], c[0][2]
    if c20 == 0.0 and c11 == 0.0 and c02 == 0.0:
        return _biv_linear(c, rx, ry)
    c00, c10, c01 = c[0][0], c[1][0], c[0][1]
    lo, hi = _quadratic_edges(c00, c10, c01, c20, c11, c02, rx, ry)
    D = 4.0 * c20 * c02 - c11 * c11
    if D > 0:
        nx = 2.0 * c10 * c02 - c01 * c11
        ny = 2.0 * c01 * c20 - c10 * c11
        if abs(nx) < D * rx and abs(ny) < D * ry:
            v = c00 - (c10 * c10 * c02 - c10 * c01 * c11 + c01 * c01 * c20) / D
            if c20 > 0:
                lo = min(lo, v)
            else:
                hi = max(hi, v)
    return lo, hi


def _quadratic_edges(c00, c10, c01, c20, c11, c02, rx, ry) -> Tuple[float, float]:
    """Range over the four edges (corners included) of a quadratic."""
    lo, hi = math.inf, -math.inf
    for Y in (-ry, ry):
        a, b = _uni_quadratic(c00 + Y * (c01 + c02 * Y), c10 + c11 * Y, c20, rx)
        lo, hi = min(lo, a), max(hi, b)
    for X in (-rx, rx):
        a, b = _uni_quadratic(c00 + X * (c10 + c20 * X), c01 + c11 * X, c02, ry)
        lo, hi = min(lo, a), max(hi, b)
    return lo, hi


def _normalized(c: Grid, rx: float, ry: float) -> Grid:
    """Coefficients of ``p(rx * u, ry * v)``: the box becomes ``[-1, 1]^2``."""
    return [[c[i][j] * rx ** i * ry ** j for j in range(4)] for i in range(4)]


def _biv_cubic(c: Grid, rx: float, ry: float) -> Tuple[float, float]:
    c = _truncate(c, 3)
    terms = [abs(c[i][j]) * rx ** i * ry ** j for i in range(4) for j in range(4)
             if i + j <= 3]
    top = [abs(c[i][3 - i]) * rx ** i * ry ** (3 - i) for i in range(4)]
    if _negligible(top, terms):
        return _biv_quadratic(c, rx, ry)
    lo, hi = _corners(c, rx, ry)
    lo, hi = _boundary(c, rx, ry, lo, hi)
    if rx == 0.0 or ry == 0.0:
        return lo, hi
    n = _normalized(c, rx, ry)
    # p_x = A(X) = a0 X^2 + a1 X + a2, p_y = B(X) = b0 X^2 + b1 X + b2, with
    # coefficients polynomial in Y (ascending lists)
    A = ([3.0 * n[3][0]], [2.0 * n[2][0], 2.0 * n[2][1]], [n[1][0], n[1][1], n[1][2]])
    B = ([n[2][1]], [n[1][1], 2.0 * n[1][2]], [n[0][1], 2.0 * n[0][2], 3.0 * n[0][3]])
    R = _resultant(A, B)
    return _interior(n, A, B, R, lo, hi)


# ---------------------------------------------------------------------------
# stationary points of the interior

def _padd(p, q):
    out = [0.0] * max(len(p), len(q))
    for k, v in enumerate(p):
        out[k] += v
    for k, v in enumerate(q):
        out[k] += v
    return out


def _pmul(p, q):
    out = [0.0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0.0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _psub(p, q):
    return _padd(p, [-v for v in q])


def _pzero(p) -> bool:
    return all(v == 0.0 for v in p)


def _pder(p):
    return [k * p[k] for k in range(1, len(p))] or [0.0]


def _sylvester(A, B, da: int, db: int, sub):
    a0, a1, a2 = A
    b0, b1, b2 = B
    if da == 2 and db == 2:
        t = sub(_pmul(a0, b2), _pmul(a2, b0))
        return sub(_pmul(t, t), _pmul(sub(_pmul(a0, b1), _pmul(a1, b0)),
                                      sub(_pmul(a1, b2), _pmul(a2, b1))))
    if da == 2 and db == 1:
        return _padd(sub(_pmul(a0, _pmul(b2, b2)), _pmul(a1, _pmul(b1, b2))),
                     _pmul(a2, _pmul(b1, b1)))
    if da == 1 and db == 2:
        return _padd(sub(_pmul(b0, _pmul(a2, a2)), _pmul(b1, _pmul(a1, a2))),
                     _pmul(b2, _pmul(a1, a1)))
    if da == 1 and db == 1:
        return sub(_pmul(a1, b2), _pmul(a2, b1))
    return list(a2) if da == 0 else list(b2)


def _resultant(A, B):
    """Sylvester resultant in ``X`` of ``A = a0 X^2 + a1 X + a2`` and ``B``
    (coefficients are polynomials in ``Y``), honouring the true ``X``-degrees.

    Returns the coefficient list of a polynomial in ``Y``, or ``None`` when
    the resultant vanishes identically (common factor).  A coefficient counts
    as zero when it is below the rounding noise of its own computation, which
    the same formula on absolute values bounds.
    """
    da = 2 if not _pzero(A[0]) else (1 if not _pzero(A[1]) else 0)
    db = 2 if not _pzero(B[0]) else (1 if not _pzero(B[1]) else 0)
    if da == 0 and db == 0:
        return None
    R = _sylvester(A, B, da, db, _psub)
    absA = [[abs(v) for v in p] for p in A]
    absB = [[abs(v) for v in p] for p in B]
    noise = _sylvester(absA, absB, da, db, _padd)
    if all(abs(v) <= RESULTANT_EPS * w for v, w in zip(R, noise)):
        return None
    return R


def _solve_x(k0: float, k1: float, k2: float) -> List[float]:
    """Real roots of ``k0 X^2 + k1 X + k2``."""
    big = max(abs(k0), abs(k1), abs(k2))
    if big == 0.0:
        return []
    if abs(k0) > 1e-14 * big:
        return solve_poly([k2, k1, k0]).roots
    if abs(k1) > 1e-14 * big:
        return [-k2 / k1]
    return []


def _quad_at(P, X: float, Y: float):
    """Value and partials of ``p0(Y) X^2 + p1(Y) X + p2(Y)``."""
    p0, p1, p2 = (_horner(p, Y) for p in P)
    d0, d1, d2 = (_horner(_pder(p), Y) for p in P)
    return (p0 * X * X + p1 * X + p2, 2.0 * p0 * X + p1, d0 * X * X + d1 * X + d2)


def _hessian(c: Grid, X: float, Y: float):
    pxx = pyy = pxy = 0.0
    for i in range(4):
        for j in range(4):
            v = c[i][j]
            if v == 0.0:
                continue
            if i >= 2:
                pxx += v * i * (i - 1) * X ** (i - 2) * Y ** j
            if j >= 2:
                pyy += v * j * (j - 1) * X ** i * Y ** (j - 2)
            if i >= 1 and j >= 1:
                pxy += v * i * j * X ** (i - 1) * Y ** (j - 1)
    return pxx, pyy, pxy


def _candidates(A, B, R) -> List[Tuple[float, float]]:
    if R is None:
        return _candidates_symbolic(A, B)
    out = []
    ys = _roots_numpy(R)
    if len(R) <= 5:
        # the closed-form quartic loses close root pairs when the other roots
        # are huge; the companion-matrix roots cover that case, and spurious
        # candidates are removed by the residual test
        ys = solve_poly(R).roots + ys
    for Y in ys:
        if abs(Y) > 1.0 + 1e-9:
            continue
        ka = [_horner(p, Y) for p in A]
        kb = [_horner(p, Y) for p in B]
        xs = _solve_x(*ka)
        if not xs and max(map(abs, ka)) <= 1e-12 * (1.0 + max(map(abs, kb))):
            # A vanishes identically along this Y, B decides
            xs = _solve_x(*kb)
        out.extend((X, Y) for X in xs)
    return out


def _roots_numpy(R):
    import numpy as np

    q = trim(R)
    if len(q) < 2:
        return []
    big = max(abs(v) for v in q)
    z = np.roots([v / big for v in reversed(q)])
    return [float(v.real) for v in z if abs(v.imag) <= IMAG_TOL * (1.0 + abs(v.real))]


def _polish(A, B, X: float, Y: float):
    """One Newton step on the system ``A = B = 0``, kept only if it helps."""
    X, Y = float(X), float(Y)  # python floats overflow to inf quietly
    fa, ax, ay = _quad_at(A, X, Y)
    fb, bx, by = _quad_at(B, X, Y)
    det = ax * by - ay * bx
    res = max(abs(fa), abs(fb))
    if det != 0.0:
        X1 = X - (fa * by - fb * ay) / det
        Y1 = Y - (ax * fb - bx * fa) / det
        if math.isfinite(X1) and math.isfinite(Y1):
            ga = _quad_at(A, X1, Y1)[0]
            gb = _quad_at(B, X1, Y1)[0]
            if max(abs(ga), abs(gb)) < res:
                return X1, Y1, max(abs(ga), abs(gb))
    return X, Y, res


def _interior(n: Grid, A, B, R, lo: float, hi: float) -> Tuple[float, float]:
    """Fold in local extrema strictly inside ``[-1, 1]^2`` (normalised grid)."""
    cmax = max(abs(v) for row in n for v in row)
    tol = STATIONARY_TOL * (1.0 + cmax)
    tie = 1e-12 * cmax * cmax
    for X, Y in _candidates(A, B, R):
        X, Y, res = _polish(A, B, X, Y)
        if res > tol or not (abs(X) < 1.0 and abs(Y) < 1.0):
            continue
        pxx, pyy, pxy = _hessian(n, X, Y)
        det = pxx * pyy - pxy * pxy
        if det < -tie:
            continue
        v = _eval_grid(n, X, Y)
        if det > tie:
            if pxx > 0:
                lo = min(lo, v)
            else:
                hi = max(hi, v)
        else:
            lo, hi = min(lo, v), max(hi, v)
    return lo, hi


def _candidates_symbolic(A, B) -> List[Tuple[float, float]]:
    """Isolated common zeros of ``A`` and ``B`` when they share a factor.

    The shared factor is removed with an exact rational gcd; the cofactors
    are then eliminated exactly and their common zeros found numerically.
    Curves of stationary points are skipped: for the degree classes handled
    here such a curve lies on a line or hyperbola, so each of its arcs in the
    box reaches the boundary, where its constant value is already counted.
    """
    import numpy as np
    import sympy as sp

    X, Y = sp.symbols("X Y")

    def to_sym(P):
        expr = sp.Integer(0)
        for k, coeffs in enumerate(P):
            for m, v in enumerate(coeffs):
                if v != 0.0:
                    expr += sp.Rational(v) * Y ** m * X ** (2 - k)
        return sp.Poly(expr, X, Y)

    pa, pb = to_sym(A), to_sym(B)
    if pa.is_zero or pb.is_zero:
        # one partial vanishes identically: every stationary point lies on
        # a line parallel to an axis
        return []
    g = sp.gcd(pa, pb)
    m1, m2 = sp.quo(pa, g), sp.quo(pb, g)
    if m1.total_degree() == 0 or m2.total_degree() == 0:
        return []
    res = sp.Poly(sp.resultant(m1, m2, X), Y)
    if res.is_zero:
        raise SolverFailure("cofactors still share a factor")
    if res.degree() <= 0:
        return []
    def scaled(vals):
        # exact rescaling first: the rationals may lie far outside float range
        big = max(abs(v) for v in vals)
        return [float(v / big) for v in vals] if big != 0 else []

    def real_roots(vals):
        vals = list(vals)
        while vals and vals[0] == 0.0:
            vals.pop(0)
        if len(vals) < 2:
            return []
        return [z.real for z in np.roots(vals) if abs(z.imag) <= IMAG_TOL * (1.0 + abs(z.real))]

    out = []
    for y in real_roots(scaled(res.all_coeffs())):
        for m in (m1, m2):
            cx = [sp.Poly(v, Y).eval(sp.Rational(y)) for v in sp.Poly(m.as_expr(), X).all_coeffs()]
            out.extend((x, y) for x in real_roots(scaled(cx)))
    return out


# ---------------------------------------------------------------------------
# remainders of the split kernels

def _biquadratic_remainder(c: Grid, rx: float, ry: float) -> Tuple[float, float]:
    """Exact range of ``c21 X^2 Y + c12 X Y^2 + c22 X^2 Y^2`` from the edges only:
    this remainder has no isolated interior extrema."""
    c21, c12, c22 = c[2][1], c[1][2], c[2][2]
    if c21 == 0.0 and c12 == 0.0 and c22 == 0.0:
        return 0.0, 0.0
    lo, hi = math.inf, -math.inf
    for Y in (-ry, ry):
        a, b = _uni_quadratic(0.0, c12 * Y * Y, Y * (c21 + c22 * Y), rx)
        lo, hi = min(lo, a), max(hi, b)
    for X in (-rx, rx):
        a, b = _uni_quadratic(0.0, c21 * X * X, X * (c12 + c22 * X), ry)
        lo, hi = min(lo, a), max(hi, b)
    return lo, hi


def _bicubic_remainder(c: Grid, rx: float, ry: float) -> Tuple[float, float]:
    """Exact range of the six-term remainder of a bicubic."""
    g = [[0.0] * 4 for _ in range(4)]
    for i, j in BICUBIC_REMAINDER:
        g[i][j] = c[i][j]
    if all(g[i][j] == 0.0 for i, j in BICUBIC_REMAINDER):
        return 0.0, 0.0
    lo, hi = _corners(g, rx, ry)
    lo, hi = _boundary(g, rx, ry, lo, hi)
    if rx == 0.0 or ry == 0.0:
        return lo, hi
    n = _normalized(g, rx, ry)
    c31, c22, c13, c32, c23, c33 = (n[3][1], n[2][2], n[1][3], n[3][2], n[2][3], n[3][3])
    # r_x = Y A(X), r_y = X B(X) with
    # A = a0 X^2 + Y (2c22 + 2c23 Y) X + 3 c13... see _fold below
    a0 = [3.0 * c31, 3.0 * c32, 3.0 * c33]
    b0 = [c31, 2.0 * c32, 3.0 * c33]
    A = (a0, [0.0, 2.0 * c22, 2.0 * c23], [0.0, 0.0, c13])
    B = (b0, [0.0, 2.0 * c22, 3.0 * c23], [0.0, 0.0, 3.0 * c13])
    # the Sylvester determinant is Y^4 D(Y); D is the resultant of the
    # system with the powers of Y divided out of the lower coefficients
    D = _resultant((a0, [2.0 * c22, 2.0 * c23], [c13]),
                   (b0, [2.0 * c22, 3.0 * c23], [3.0 * c13]))
    if D is None:
        R = None
    else:
        R = D
    return _interior_remainder(n, A, B, R, lo, hi)


def _interior_remainder(n, A, B, R, lo, hi):
    # stationary points with X = 0 or Y = 0 have value 0, which the edges
    # already contribute (the remainder vanishes on both centre lines)
    return _interior(n, A, B, R, lo, hi)


# ---------------------------------------------------------------------------
# public kernels

def _radii(p: CenteredPoly2):
    return p.box.radii


def range_biv_linear(p: CenteredPoly2) -> Interval:
    _check_support(p, LINEAR, "linear")
    return Interval(*_biv_linear(p.grid(), *_radii(p)))


def range_biv_quadratic(p: CenteredPoly2) -> Interval:
    _check_support(p, QUADRATIC, "quadratic")
    return Interval(*_biv_quadratic(p.grid(), *_radii(p)))


def range_biv_cubic(p: CenteredPoly2) -> Interval:
    _check_support(p, CUBIC, "cubic")
    return Interval(*_biv_cubic(p.grid(), *_radii(p)))


def range_biquadratic_split(p: CenteredPoly2) -> Tuple[Interval, Interval]:
    """``(q(B), r(B))`` for the quadratic Taylor part ``q`` and remainder ``r``."""
    _check_support(p, BIQUADRATIC, "biquadratic")
    c = p.grid()
    rx, ry = _radii(p)
    return (Interval(*_biv_quadratic(c, rx, ry)),
            Interval(*_biquadratic_remainder(c, rx, ry)))


def range_bicubic_split(p: CenteredPoly2) -> Tuple[Interval, Interval]:
    """``(q(B), r(B))`` for the cubic Taylor part ``q`` and remainder ``r``."""
    _check_support(p, BICUBIC, "bicubic")
    c = p.grid()
    rx, ry = _radii(p)
    q = [[c[i][j] if i + j <= 3 else 0.0 for j in range(4)] for i in range(4)]
    return (Interval(*_biv_cubic(q, rx, ry)),
            Interval(*_bicubic_remainder(c, rx, ry)))


def boundary_polynomials(p: CenteredPoly2) -> List[CenteredPoly1]:
    """The restrictions ``p(x, a_y), p(x, b_y), p(a_x, y), p(b_x, y)``."""
    c = p.grid()
    (mx, my), (rx, ry) = p.box.midpoint, p.box.radii
    return [CenteredPoly1(tuple(_fix_y(c, -ry)), mx, rx),
            CenteredPoly1(tuple(_fix_y(c, ry)), mx, rx),
            CenteredPoly1(tuple(_fix_x(c, -rx)), my, ry),
            CenteredPoly1(tuple(_fix_x(c, rx)), my, ry)]

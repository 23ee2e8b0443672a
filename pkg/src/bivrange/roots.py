"""Closed-form real root finding for polynomials of degree at most four.

Coefficient lists are in ascending order: ``q[k]`` multiplies ``x**k``.
The quartic is solved with Ferrari's method (depressed quartic, resolvent
cubic, factorisation into two quadratics); every real root gets one Newton
step and must pass a residual check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import List, Sequence

# relative size below which a leading coefficient counts as zero
LEADING_EPS = 1e-14
# complex roots with |imag| below this (relative) are taken as perturbed reals
IMAG_EPS = 1e-6
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class RealRoots:
    """Sorted distinct real roots. ``degenerate`` flags the zero polynomial."""

    roots: List[float] = field(default_factory=list)
    degenerate: bool = False

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)


def horner(q: Sequence[float], x):
    acc = 0.0
    for c in reversed(q):
        acc = acc * x + c
    return acc


def _dhorner(q: Sequence[float], x):
    acc = 0.0
    for k in range(len(q) - 1, 0, -1):
        acc = acc * x + k * q[k]
    return acc


def _term_scale(q: Sequence[float], x: float) -> float:
    ax = abs(x)
    return sum(abs(c) * ax ** k for k, c in enumerate(q))


def trim(q: Sequence[float]) -> List[float]:
    """Drop leading coefficients that are negligible against the largest one."""
    q = [float(c) for c in q]
    big = max((abs(c) for c in q), default=0.0)
    while q and abs(q[-1]) <= LEADING_EPS * big:
        q.pop()
    return q


def quadratic_complex(a: complex, b: complex, c: complex):
    """Both roots of ``a x^2 + b x + c`` (``a != 0``), cancellation-free."""
    disc = cmath.sqrt(b * b - 4 * a * c)
    # pick the sign that avoids subtracting nearly equal numbers
    if (b.conjugate() * disc).real >= 0:
        t = -0.5 * (b + disc)
    else:
        t = -0.5 * (b - disc)
    if t == 0:
        return [0j, 0j]
    return [t / a, c / t]


def real_quadratic_roots(a: float, b: float, c: float) -> List[float]:
    """Real roots of ``a x^2 + b x + c`` with ``a != 0``; double roots once."""
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    s = math.sqrt(disc)
    t = -0.5 * (b + math.copysign(s, b))
    if t == 0:
        return [0.0]
    r1, r2 = t / a, c / t
    return sorted({r1, r2})


def cubic_complex(a: float, b: float, c: float, d: float):
    """All three roots of ``a x^3 + b x^2 + c x + d`` with ``a != 0``.

    Trigonometric form when all roots are real, Cardano otherwise.
    """
    b, c, d = b / a, c / a, d / a
    shift = b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    if p == 0.0 and q == 0.0:
        return [complex(-shift)] * 3
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc < 0:
        # three distinct real roots
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = max(-1.0, min(1.0, arg))
        theta = math.acos(arg) / 3.0
        return [complex(m * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift)
                for k in range(3)]
    s = math.sqrt(disc)
    u = -q / 2.0 + math.copysign(s, -q / 2.0) if q != 0 else s
    u = math.copysign(abs(u) ** (1.0 / 3.0), u)
    v = -p / (3.0 * u) if u != 0 else 0.0
    t1 = u + v
    omega = complex(-0.5, math.sqrt(3.0) / 2.0)
    t2 = omega * u + omega.conjugate() * v
    t3 = omega.conjugate() * u + omega * v
    return [complex(t1 - shift), t2 - shift, t3 - shift]


def _largest_real_cubic_root(a: float, b: float, c: float, d: float) -> float:
    roots = cubic_complex(a, b, c, d)
    reals = [z.real for z in roots if abs(z.imag) <= IMAG_EPS * (1.0 + abs(z.real))]
    if not reals:
        reals = [min(roots, key=lambda z: abs(z.imag)).real]
    best = max(reals)
    # polish: the resolvent root feeds a square root, keep it accurate
    q = [d, c, b, a]
    for _ in range(2):
        dp = _dhorner(q, best)
        if dp == 0:
            break
        best = best - horner(q, best) / dp
    return best


def quartic_complex(q: Sequence[float]):
    """All four complex roots of the quartic ``q`` (``q[4] != 0``) by Ferrari."""
    e, d, c, b, a = (float(v) for v in q)
    b, c, d, e = b / a, c / a, d / a, e / a
    # x = y - b/4 gives y^4 + p y^2 + s y + t
    sh = b / 4.0
    p = c - 3.0 * b * b / 8.0
    s = d - b * c / 2.0 + b ** 3 / 8.0
    t = e - b * d / 4.0 + b * b * c / 16.0 - 3.0 * b ** 4 / 256.0
    scale = max(abs(p), math.sqrt(abs(t)), abs(s) ** (2.0 / 3.0), 1e-300)
    if abs(s) <= 1e-14 * scale ** 1.5:
        # biquadratic: z^2 + p z + t with z = y^2
        zs = quadratic_complex(1.0 + 0j, complex(p), complex(t))
        ys = []
        for z in zs:
            w = cmath.sqrt(z)
            ys += [w, -w]
        return [y - sh for y in ys]
    # resolvent cubic 8m^3 + 8p m^2 + (2p^2 - 8t) m - s^2 = 0 has a root m > 0
    m = _largest_real_cubic_root(8.0, 8.0 * p, 2.0 * p * p - 8.0 * t, -s * s)
    if m <= 0:
        m = abs(m) + 1e-300
    w = math.sqrt(2.0 * m)
    # (y^2 + p/2 + m)^2 = 2m (y - s/(4m))^2
    ys = []
    for sign in (1.0, -1.0):
        ys += quadratic_complex(1.0 + 0j, complex(-sign * w),
                                complex(p / 2.0 + m + sign * s / (2.0 * w)))
    return [y - sh for y in ys]


def _finish(q: Sequence[float], candidates, tol: float) -> RealRoots:
    out: List[float] = []
    for z in candidates:
        if abs(z.imag) > IMAG_EPS * (1.0 + abs(z.real)):
            continue
        x = z.real
        dp = _dhorner(q, x)
        if dp != 0:
            x1 = x - horner(q, x) / dp
            if math.isfinite(x1) and abs(horner(q, x1)) <= abs(horner(q, x)):
                x = x1
        if abs(horner(q, x)) <= tol * max(1.0, _term_scale(q, x)):
            out.append(x)
    out.sort()
    merged: List[float] = []
    for x in out:
        if merged and abs(x - merged[-1]) <= 1e-9 * (1.0 + abs(x)):
            continue
        merged.append(x)
    return RealRoots(merged)


def solve_poly(q: Sequence[float], tol: float = RESIDUAL_TOL) -> RealRoots:
    """Real roots of a polynomial of degree at most four."""
    q = trim(q)
    if not q:
        return RealRoots([], degenerate=True)
    deg = len(q) - 1
    if deg > 4:
        raise ValueError("degree above four")
    if deg == 0:
        return RealRoots([])
    if deg == 1:
        return RealRoots([-q[0] / q[1]])
    if deg == 2:
        cands = quadratic_complex(complex(q[2]), complex(q[1]), complex(q[0]))
    elif deg == 3:
        cands = cubic_complex(q[3], q[2], q[1], q[0])
    else:
        cands = quartic_complex(q)
    return _finish(q, cands, tol)


def solve_quartic(q: Sequence[float], tol: float = RESIDUAL_TOL) -> RealRoots:
    """Ferrari's method with dispatch to the lower-degree solvers."""
    if len(q) > 5:
        raise ValueError("at most five coefficients expected")
    return solve_poly(q, tol)

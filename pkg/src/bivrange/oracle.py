"""Reference ranges by adaptive bisection, independent of the range functions.

Each sub-box gets an outer bound from the polynomial re-expanded about the
sub-box centre (every monomial bounded separately over the sub-box) and an
inner bound from exact samples at its centre and corners.  Sub-boxes that
cannot move the sampled extremes by more than half the target resolution are
discarded; the rest are split in four.  The reported range is the sampled
(inner) hull; ``resolution`` bounds its Hausdorff distance to the true range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .interval import Box2, Interval
from .poly import Poly2

DEFAULT_BUDGET = 2_000_000
CHUNK = 20_000


@dataclass(frozen=True)
class OracleRange:
    range: Interval
    resolution: float
    evaluations: int = 0
    converged: bool = True

    @property
    def outer(self) -> Interval:
        return Interval(self.range.lo - self.resolution, self.range.hi + self.resolution)


def _binom(n: int) -> np.ndarray:
    b = np.zeros((n, n))
    for k in range(n):
        for i in range(k + 1):
            b[i, k] = math.comb(k, i)
    return b


def _shift_batch(t: np.ndarray, n: int, binom: np.ndarray) -> np.ndarray:
    """``P[b, i, k] = C(k, i) t_b^(k - i)`` for a batch of shifts ``t``."""
    k = np.arange(n)
    e = k[None, :] - k[:, None]
    pw = t[:, None] ** np.arange(n)[None, :]
    return binom[None] * pw[:, np.clip(e, 0, None)] * (e >= 0)[None]


class _Bounder:
    def __init__(self, p: Poly2):
        self.c = np.array(p.coeffs, dtype=float)
        nx, ny = self.c.shape
        self.nx, self.ny = nx, ny
        self.bx, self.by = _binom(nx), _binom(ny)
        i = np.arange(nx)[:, None]
        j = np.arange(ny)[None, :]
        self.even = ((i % 2 == 0) & (j % 2 == 0)) & ~((i == 0) & (j == 0))
        self.odd = ~((i % 2 == 0) & (j % 2 == 0))
        self.i, self.j = np.arange(nx), np.arange(ny)

    def __call__(self, mx, my, rx, ry):
        """Outer bounds, centre values and corner extremes for each sub-box."""
        T = _shift_batch(mx, self.nx, self.bx) @ self.c @ \
            np.swapaxes(_shift_batch(my, self.ny, self.by), 1, 2)
        px = rx[:, None] ** self.i[None, :]
        py = ry[:, None] ** self.j[None, :]
        E = px[:, :, None] * py[:, None, :]
        TE = T * E
        neg = np.where(self.even, np.minimum(TE, 0.0), 0.0).sum(axis=(1, 2))
        pos = np.where(self.even, np.maximum(TE, 0.0), 0.0).sum(axis=(1, 2))
        odd = np.where(self.odd, np.abs(TE), 0.0).sum(axis=(1, 2))
        centre = T[:, 0, 0]
        lb = centre + neg - odd
        ub = centre + pos + odd
        # corner values from the same expansion
        sx = (-1.0) ** self.i
        sy = (-1.0) ** self.j
        corners = []
        for ax in (np.ones(self.nx), sx):
            for ay in (np.ones(self.ny), sy):
                corners.append(np.einsum("bij,i,j->b", TE, ax, ay))
        corners = np.stack(corners, axis=1)
        smin = np.minimum(centre, corners.min(axis=1))
        smax = np.maximum(centre, corners.max(axis=1))
        return lb, ub, smin, smax


def oracle_range(p: Poly2, box: Box2, target_resolution: float,
                 budget: int = DEFAULT_BUDGET) -> OracleRange:
    if not target_resolution > 0:
        raise ValueError("target_resolution must be positive")
    bound = _Bounder(p)
    mx, my = box.midpoint
    rx, ry = box.radii
    MX, MY = np.array([mx]), np.array([my])
    RX, RY = np.array([rx]), np.array([ry])
    inner_lo, inner_hi = math.inf, -math.inf
    # bounds of discarded sub-boxes still count towards the outer hull
    out_lo, out_hi = math.inf, -math.inf
    keep_tol = 0.5 * target_resolution
    evals = 0
    converged = True
    while MX.size:
        if evals + MX.size > budget:
            converged = False
            break
        lbs, ubs, smins, smaxs = [], [], [], []
        for s in range(0, MX.size, CHUNK):
            sl = slice(s, s + CHUNK)
            lb, ub, smin, smax = bound(MX[sl], MY[sl], RX[sl], RY[sl])
            lbs.append(lb)
            ubs.append(ub)
            smins.append(smin)
            smaxs.append(smax)
        lb, ub = np.concatenate(lbs), np.concatenate(ubs)
        evals += MX.size
        inner_lo = min(inner_lo, float(np.concatenate(smins).min()))
        inner_hi = max(inner_hi, float(np.concatenate(smaxs).max()))
        need_lo = lb < inner_lo - keep_tol
        need_hi = ub > inner_hi + keep_tol
        keep = need_lo | need_hi
        drop = ~keep
        if drop.any():
            out_lo = min(out_lo, float(lb[drop].min()))
            out_hi = max(out_hi, float(ub[drop].max()))
        # a kept box is only needed on the side(s) it can still move; its
        # bound on the other side is final
        side_lo = keep & ~need_lo
        side_hi = keep & ~need_hi
        if side_lo.any():
            out_lo = min(out_lo, float(lb[side_lo].min()))
        if side_hi.any():
            out_hi = max(out_hi, float(ub[side_hi].max()))
        if not keep.any():
            MX = MX[:0]
            break
        MX, MY, RX, RY = MX[keep], MY[keep], RX[keep] * 0.5, RY[keep] * 0.5
        lb, ub = lb[keep], ub[keep]
        MX = np.concatenate([MX - RX, MX - RX, MX + RX, MX + RX])
        MY = np.concatenate([MY - RY, MY + RY, MY - RY, MY + RY])
        RX = np.tile(RX, 4)
        RY = np.tile(RY, 4)
        if not converged:
            break
    if MX.size:
        # budget exhausted: the unresolved sub-boxes bound the gap
        lb, ub, smin, smax = bound(MX, MY, RX, RY)
        out_lo = min(out_lo, float(lb.min()))
        out_hi = max(out_hi, float(ub.max()))
        inner_lo = min(inner_lo, float(smin.min()))
        inner_hi = max(inner_hi, float(smax.max()))
    out_lo = min(out_lo, inner_lo)
    out_hi = max(out_hi, inner_hi)
    res = max(inner_lo - out_lo, out_hi - inner_hi, 0.0)
    return OracleRange(Interval(inner_lo, inner_hi), res, evals, converged)

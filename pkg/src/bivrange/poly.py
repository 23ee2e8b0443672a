"""Dense bivariate polynomials in the power basis.

``Poly2`` stores ``c[i, j]``, the coefficient of ``x**i * y**j``.  Instances are
immutable; symbolic partial derivatives are computed on demand and memoized
per instance.
"""

from __future__ import annotations

import math
import threading
from functools import lru_cache
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

from .interval import Box2, Interval, add, mul


class PartialIndex(NamedTuple):
    i: int
    j: int


@lru_cache(maxsize=None)
def _binomial_matrix(n: int) -> np.ndarray:
    """``B[i, k] = C(k, i)`` for ``0 <= i, k < n``."""
    b = np.zeros((n, n))
    for k in range(n):
        for i in range(k + 1):
            b[i, k] = math.comb(k, i)
    b.flags.writeable = False
    return b


@lru_cache(maxsize=None)
def _factorials(n: int) -> np.ndarray:
    f = np.array([float(math.factorial(k)) for k in range(n)])
    f.flags.writeable = False
    return f


def _shift_matrix(t: float, n: int) -> np.ndarray:
    """``P[i, k] = C(k, i) * t**(k - i)``, so that ``P @ c`` re-centres a
    univariate coefficient vector at ``t``."""
    k = np.arange(n)
    e = k[None, :] - k[:, None]
    pw = np.ones(n)
    for q in range(1, n):
        pw[q] = pw[q - 1] * t
    return _binomial_matrix(n) * pw[np.clip(e, 0, None)] * (e >= 0)


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)
    if len(nz[0]) == 0:
        return np.zeros((1, 1))
    return c[: nz[0].max() + 1, : nz[1].max() + 1]


class Poly2:
    """Bivariate polynomial ``sum c[i, j] x**i y**j``."""

    __slots__ = ("_c", "_rows", "_partials", "_lock", "__weakref__")

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=float, ndmin=2)
        if c.ndim != 2:
            raise ValueError("coefficient grid must be two-dimensional")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c = _trim(c).copy()
        c.flags.writeable = False
        self._c = c
        # rows[j] lists the x-coefficients multiplying y**j
        self._rows = c.T.tolist()
        self._partials = {}
        self._lock = threading.Lock()

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int, float]]) -> Poly2:
        terms = list(terms)
        if not terms:
            return cls.zero()
        dx = max(t[0] for t in terms)
        dy = max(t[1] for t in terms)
        c = np.zeros((dx + 1, dy + 1))
        for i, j, v in terms:
            if i < 0 or j < 0:
                raise ValueError("exponents must be non-negative")
            c[i, j] += v
        return cls(c)

    @classmethod
    def zero(cls) -> Poly2:
        return cls([[0.0]])

    @classmethod
    def constant(cls, v: float) -> Poly2:
        return cls([[v]])

    @classmethod
    def x(cls) -> Poly2:
        return cls([[0.0], [1.0]])

    @classmethod
    def y(cls) -> Poly2:
        return cls([[0.0, 1.0]])

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def shape(self) -> tuple[int, int]:
        return self._c.shape

    @property
    def degree(self) -> int:
        i, j = np.nonzero(self._c)
        if len(i) == 0:
            return 0
        return int((i + j).max())

    def is_zero(self) -> bool:
        return not np.any(self._c)

    def terms(self):
        for i, j in zip(*np.nonzero(self._c)):
            yield int(i), int(j), float(self._c[i, j])

    def __eq__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        return self._c.shape == other._c.shape and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash((self._c.shape, self._c.tobytes()))

    def __repr__(self):
        return f"Poly2(degree={self.degree}, shape={self.shape})"

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly2):
            other = Poly2.constant(float(other))
        sx = max(self.shape[0], other.shape[0])
        sy = max(self.shape[1], other.shape[1])
        c = np.zeros((sx, sy))
        c[: self.shape[0], : self.shape[1]] += self._c
        c[: other.shape[0], : other.shape[1]] += other._c
        return Poly2(c)

    __radd__ = __add__

    def __neg__(self):
        return Poly2(-self._c)

    def __sub__(self, other):
        if not isinstance(other, Poly2):
            other = Poly2.constant(float(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            return Poly2(self._c * float(other))
        a, b = self._c, other._c
        c = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1))
        for i, j in zip(*np.nonzero(a)):
            c[i : i + b.shape[0], j : j + b.shape[1]] += a[i, j] * b
        return Poly2(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly2.constant(1.0)
        for _ in range(k):
            out = out * self
        return out

    # evaluation -----------------------------------------------------------

    def __call__(self, x, y):
        return self.eval(x, y)

    def eval(self, x, y):
        """Horner in ``y`` over Horner-in-``x`` row polynomials.

        Works elementwise for numpy arrays as well as for scalars.
        """
        acc = 0.0
        for row in reversed(self._rows):
            r = 0.0
            for cij in reversed(row):
                r = r * x + cij
            acc = acc * y + r
        return acc

    def partial(self, d) -> Poly2:
        """Symbolic partial derivative ``D^(i, j)``."""
        d = PartialIndex(*d)
        if d.i < 0 or d.j < 0:
            raise ValueError("derivative orders must be non-negative")
        if d == (0, 0):
            return self
        hit = self._partials.get(d)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._partials.get(d)
            if hit is None:
                hit = self._differentiate(d.i, d.j)
                self._partials[d] = hit
        return hit

    def _differentiate(self, di: int, dj: int) -> Poly2:
        c = self._c
        if di >= c.shape[0] or dj >= c.shape[1]:
            return Poly2.zero()
        c = c[di:, dj:].copy()
        # falling factorials i (i-1) ... (i-di+1) for the surviving exponents
        fx = np.array([math.perm(i + di, di) for i in range(c.shape[0])], dtype=float)
        fy = np.array([math.perm(j + dj, dj) for j in range(c.shape[1])], dtype=float)
        return Poly2(c * fx[:, None] * fy[None, :])

    def taylor_coefficients(self, x0: float, y0: float) -> np.ndarray:
        """``t[i, j] = f^(i,j)(x0, y0) / (i! j!)``: the coefficients of the
        polynomial rewritten in powers of ``(x - x0)`` and ``(y - y0)``."""
        nx, ny = self._c.shape
        return _shift_matrix(x0, nx) @ self._c @ _shift_matrix(y0, ny).T

    def derivatives_at(self, x0: float, y0: float) -> np.ndarray:
        """``D[i, j] = f^(i,j)(x0, y0)`` for every ``i, j`` up to the degree."""
        nx, ny = self._c.shape
        t = self.taylor_coefficients(x0, y0)
        return t * _factorials(nx)[:, None] * _factorials(ny)[None, :]

    def natural_extension(self, box: Box2) -> Interval:
        """Interval Horner evaluation over ``box`` (encloses ``p(box)``)."""
        X, Y = box.x, box.y
        acc = None
        for row in reversed(self._rows):
            r = Interval(row[-1], row[-1])
            for cij in reversed(row[:-1]):
                r = mul(r, X)
                r = Interval(r.lo + cij, r.hi + cij)
            acc = r if acc is None else add(mul(acc, Y), r)
        return acc


def natural_extension(p: Poly2, box: Box2) -> Interval:
    return p.natural_extension(box)


def partial(p: Poly2, d) -> Poly2:
    return p.partial(d)


# user supplied polynomials ------------------------------------------------

def parse_poly(text: str) -> Poly2:
    """Parse the monomial-list format: one ``i j coefficient`` per line,
    ``#`` starts a comment."""
    terms = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'i j coefficient', got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            v = float(parts[2])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if i < 0 or j < 0:
            raise ValueError(f"line {lineno}: exponents must be non-negative")
        terms.append((i, j, v))
    return Poly2.from_terms(terms)


def format_poly(p: Poly2) -> str:
    return "".join(f"{i} {j} {v!r}\n" for i, j, v in p.terms())


def load_poly(source: str) -> Poly2:
    """Corpus name or path to a monomial-list file."""
    if source in CORPUS_NAMES:
        return corpus(source)
    path = Path(source)
    if not path.is_file():
        raise ValueError(f"unknown corpus function or missing file: {source!r}")
    return parse_poly(path.read_text())


# built-in test functions --------------------------------------------------

_CLOVER4 = [
    (10, 0, -50),
    (8, 2, -249), (8, 0, 57),
    (6, 4, -498), (6, 2, 227), (6, 0, 1),
    (4, 6, -498), (4, 4, 341), (4, 2, 3), (4, 0, -16),
    (2, 8, -249), (2, 6, 227), (2, 4, 3), (2, 2, 102), (2, 0, 1),
    (0, 10, -50), (0, 8, 57), (0, 6, 1), (0, 4, -16), (0, 2, 1), (0, 0, 1),
]

_CLOVER5 = [
    (12, 0, -71),
    (10, 2, -424), (10, 0, 79),
    (8, 4, -1059), (8, 2, 396), (8, 0, 1),
    (6, 6, -1412), (6, 4, 793), (6, 2, 4), (6, 0, 1),
    (5, 0, -20),
    (4, 8, -1059), (4, 6, 793), (4, 4, 6), (4, 2, 3), (4, 0, 1),
    (3, 2, 202),
    (2, 10, -424), (2, 8, 396), (2, 6, 4), (2, 4, 3), (2, 2, 2), (2, 0, 1),
    (1, 4, -101),
    (0, 12, -71), (0, 10, 79), (0, 8, 1), (0, 6, 1), (0, 4, 1), (0, 2, 1), (0, 0, 1),
]

_CLOVER8 = [
    (18, 0, -156),
    (16, 2, -1406), (16, 0, 170),
    (14, 4, -5625), (14, 2, 1363), (14, 0, 1),
    (12, 6, -13125), (12, 4, 4769), (12, 2, 7), (12, 0, 1),
    (10, 8, -19688), (10, 6, 9538), (10, 4, 21), (10, 2, 6), (10, 0, 1),
    (8, 10, -19688), (8, 8, 11922), (8, 6, 35), (8, 4, 15), (8, 2, 5), (8, 0, -30),
    (6, 12, -13125), (6, 10, 9538), (6, 8, 35), (6, 6, 21), (6, 4, 11), (6, 2, 879),
    (6, 0, 1),
    (4, 14, -5625), (4, 12, 4769), (4, 10, 21), (4, 8, 15), (4, 6, 11), (4, 4, -2181),
    (4, 2, 4), (4, 0, 1),
    (2, 16, -1406), (2, 14, 1363), (2, 12, 7), (2, 10, 6), (2, 8, 5), (2, 6, 879),
    (2, 4, 4), (2, 2, 3), (2, 0, 1),
    (0, 18, -156), (0, 16, 170), (0, 14, 1), (0, 12, 1), (0, 10, 1), (0, 8, -30),
    (0, 6, 1), (0, 4, 1), (0, 2, 1), (0, 0, 1),
]

_OCTIC_FLOWER = [
    (0, 8, 2000), (2, 6, 8000), (4, 4, 12000), (6, 2, 8000), (8, 0, 2000),
    (0, 6, -3000), (2, 4, 9000), (4, 2, -21000), (6, 0, -1000), (0, 0, 1),
]


def grass_factor(x, y, k: int):
    return (1 - 4 ** k) * x * x + y * y - 2 * x + 1


def grass_direct(x, y):
    """The grass function evaluated in its product form."""
    out = 1.0
    for k in range(1, 7):
        out = out * grass_factor(x, y, k)
    return 1.0 + out


def _grass() -> Poly2:
    X, Y = Poly2.x(), Poly2.y()
    prod = Poly2.constant(1.0)
    for k in range(1, 7):
        prod = prod * grass_factor(X, Y, k)
    return prod + 1.0


def _cardioid() -> Poly2:
    X, Y = Poly2.x(), Poly2.y()
    s = X * X + Y * Y
    return (s + X) ** 2 - s


def _lemniscate() -> Poly2:
    X, Y = Poly2.x(), Poly2.y()
    return (X * X + Y * Y) ** 2 - 2.0 * (X * X - Y * Y)


_BUILDERS = {
    "clover-4": lambda: Poly2.from_terms(_CLOVER4),
    "clover-5": lambda: Poly2.from_terms(_CLOVER5),
    "clover-8": lambda: Poly2.from_terms(_CLOVER8),
    "grass": _grass,
    "cardioid": _cardioid,
    "lemniscate": _lemniscate,
    "octic-flower": lambda: Poly2.from_terms(_OCTIC_FLOWER),
}

CORPUS_NAMES = tuple(_BUILDERS)

# domains used by the subdivision experiments
CORPUS_DOMAINS = {
    "clover-4": (-1.2, 1.2),
    "clover-5": (-1.2, 1.2),
    "clover-8": (-1.2, 1.2),
    "grass": (-1.2, 1.2),
    "cardioid": (-2.0, 2.0),
    "lemniscate": (-1.5, 1.5),
    "octic-flower": (-1.2, 1.2),
}


@lru_cache(maxsize=None)
def corpus(name: str) -> Poly2:
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown corpus function {name!r}; "
                         f"choose from {', '.join(CORPUS_NAMES)}") from None
    return build()

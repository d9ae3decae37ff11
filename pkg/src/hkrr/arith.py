"""Exact scalar arithmetic: rationals, truncated power series, univariate
polynomials, classical number sequences and dense linear algebra over Q.

Everything here works with :class:`fractions.Fraction`; no floating point is
used anywhere in the package.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

Rational = Fraction


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def format_fraction(q) -> str:
    """Render ``q`` as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def binomial(x, k: int) -> Fraction:
    """Generalized binomial coefficient ``x (x-1) ... (x-k+1) / k!`` for
    rational ``x``."""
    if k < 0:
        return Fraction(0)
    x = as_fraction(x)
    num = Fraction(1)
    for i in range(k):
        num *= x - i
    return num / factorial(k)


# --------------------------------------------------------------------------
# Truncated power series
# --------------------------------------------------------------------------


class PowerSeries:
    """A power series in one variable known modulo ``x**order``.

    Coefficients at exponents ``>= order`` are unknown and never stored.
    Binary operations truncate to the smaller order.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        cs = [as_fraction(c) for c in coeffs][:order]
        cs.extend([Fraction(0)] * (order - len(cs)))
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.order = order

    @classmethod
    def from_function(cls, f, order: int) -> "PowerSeries":
        return cls((f(k) for k in range(order)), order)

    @classmethod
    def exp_series(cls, order: int) -> "PowerSeries":
        """``e^x``."""
        return cls.from_function(lambda k: Fraction(1, factorial(k)), order)

    def __getitem__(self, k: int) -> Fraction:
        if k >= self.order:
            raise IndexError(f"coefficient {k} lies beyond truncation order {self.order}")
        return self.coeffs[k] if k >= 0 else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self) -> str:
        terms = " + ".join(f"{format_fraction(c)}*x^{k}" for k, c in enumerate(self.coeffs) if c)
        return f"PowerSeries({terms or '0'} + O(x^{self.order}))"

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("cannot raise the truncation order of a series")
        return PowerSeries(self.coeffs[:order], order)

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries([as_fraction(other)], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return PowerSeries((self.coeffs[k] + other.coeffs[k] for k in range(n)), n)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries((-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = as_fraction(other)
            return PowerSeries((c * a for a in self.coeffs), self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if not a:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "PowerSeries":
        """Multiplicative inverse; requires an invertible constant term."""
        if self.order == 0:
            return PowerSeries([], 0)
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out = [Fraction(0)] * self.order
        out[0] = 1 / a0
        for k in range(1, self.order):
            s = sum((self.coeffs[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
            out[k] = -s / a0
        return PowerSeries(out, self.order)

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.inverse()
        return self * (1 / as_fraction(other))

    def derivative(self) -> "PowerSeries":
        n = max(self.order - 1, 0)
        return PowerSeries((k * self.coeffs[k] for k in range(1, self.order)), n)

    def integral(self) -> "PowerSeries":
        """Antiderivative with zero constant term (order grows by one)."""
        return PowerSeries([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)], self.order + 1)

    def exp(self) -> "PowerSeries":
        if self.order and self.coeffs[0] != 0:
            raise ValueError("exp requires constant term zero")
        # f = exp(g)  <=>  f' = g' f
        n = self.order
        out = [Fraction(0)] * n
        if n:
            out[0] = Fraction(1)
        dg = [k * self.coeffs[k] for k in range(n)]
        for k in range(1, n):
            s = sum((dg[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
            out[k] = s / k
        return PowerSeries(out, n)

    def log(self) -> "PowerSeries":
        if self.order and self.coeffs[0] != 1:
            raise ValueError("log requires constant term one")
        if self.order == 0:
            return self
        return (self.derivative() * self.truncate(self.order - 1).inverse()).integral()

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """``self(inner(x))``; ``inner`` must have zero constant term."""
        if inner.order and inner.coeffs[0] != 0:
            raise ValueError("composition requires an inner series without constant term")
        n = min(self.order, inner.order)
        result = PowerSeries([], n)
        power = PowerSeries([1], n)
        for k in range(n):
            if self.coeffs[k]:
                result = result + power * self.coeffs[k]
            power = power * inner
        return result


# --------------------------------------------------------------------------
# Univariate polynomials
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial1:
    """Univariate polynomial with rational coefficients in a named variable."""

    coeffs: tuple[Fraction, ...] = ()
    var: str = "x"

    def __post_init__(self):
        cs = [as_fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "x") -> "Polynomial1":
        return cls((0,) * k + (c,), var)

    @property
    def degree(self) -> float:
        """Index of the last nonzero coefficient; ``-inf`` for zero."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _coerce(self, other) -> "Polynomial1":
        if isinstance(other, Polynomial1):
            if other.coeffs and self.coeffs and other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        return Polynomial1((as_fraction(other),), self.var)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial1(tuple(self[k] + other[k] for k in range(n)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial1(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial1((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial1(tuple(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial1((1,), self.var)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Polynomial1") -> "Polynomial1":
        result = Polynomial1((), inner.var)
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def is_odd(self) -> bool:
        return all(c == 0 for c in self.coeffs[0::2])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(format_fraction(c))
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                parts.append(mono if c == 1 else f"{format_fraction(c)}*{mono}")
        return " + ".join(parts)


# --------------------------------------------------------------------------
# Number sequences (memoized; caches are append-only under a lock)
# --------------------------------------------------------------------------

_seq_lock = threading.Lock()
_bernoulli_cache: list[Fraction] = []
_chebyshev_cache: list[Polynomial1] = []


def bernoulli(k: int) -> Fraction:
    """The Bernoulli number ``B_k`` with ``B_1 = -1/2``.

    Read off from ``t/(e^t - 1)``, obtained by inverting
    ``(e^t - 1)/t = sum t^k/(k+1)!`` as a truncated series.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    with _seq_lock:
        if k >= len(_bernoulli_cache):
            order = max(2 * k + 2, 16)
            quotient = PowerSeries.from_function(lambda j: Fraction(1, factorial(j + 1)), order)
            series = quotient.inverse()
            _bernoulli_cache[:] = [series[j] * factorial(j) for j in range(order)]
        return _bernoulli_cache[k]


def modified_bernoulli_series(order: int) -> PowerSeries:
    """``1/2 * log(sinh(x/2) / (x/2))`` truncated at ``x**order``."""
    # sinh(x/2)/(x/2) = sum (x/2)^{2k} / (2k+1)!
    inner = PowerSeries.from_function(
        lambda j: Fraction(1, 2**j * factorial(j + 1)) if j % 2 == 0 else Fraction(0), order
    )
    return inner.log() * Fraction(1, 2)


def modified_bernoulli(k: int) -> Fraction:
    """The modified Bernoulli number ``b_k`` (``k`` even), the coefficient of
    ``x^k`` in ``1/2 log(sinh(x/2)/(x/2))``."""
    if k < 0 or k % 2:
        raise ValueError("modified Bernoulli numbers are indexed by even k >= 0")
    return modified_bernoulli_series(k + 1)[k]


def modified_bernoulli_closed_form(k: int) -> Fraction:
    """``B_k / (2k * k!)`` for even ``k >= 2`` and 0 for ``k = 0``."""
    if k < 0 or k % 2:
        raise ValueError("modified Bernoulli numbers are indexed by even k >= 0")
    if k == 0:
        return Fraction(0)
    return bernoulli(k) / (2 * k * factorial(k))


def chebyshev(n: int) -> Polynomial1:
    """Chebyshev polynomial of the first kind ``T_n`` in ``x``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = Polynomial1((0, 1), "x")
    with _seq_lock:
        if not _chebyshev_cache:
            _chebyshev_cache.extend([Polynomial1((1,), "x"), x])
        while len(_chebyshev_cache) <= n:
            _chebyshev_cache.append(2 * x * _chebyshev_cache[-1] - _chebyshev_cache[-2])
        return _chebyshev_cache[n]


def chebyshev_even_lambda(k: int) -> Polynomial1:
    """``T_{2k}(sqrt(lambda/4 + 1))`` as an exact polynomial in ``lambda``.

    ``T_{2k}`` is even, so it is a polynomial in ``x^2``; substituting
    ``x^2 = lambda/4 + 1`` removes the square root.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    t = chebyshev(2 * k)
    x_squared = Polynomial1((1, Fraction(1, 4)), "lambda")
    result = Polynomial1((), "lambda")
    for j in range(k, -1, -1):
        result = result * x_squared + t[2 * j]
    return result


# --------------------------------------------------------------------------
# Dense exact linear algebra
# --------------------------------------------------------------------------


class DimensionError(ValueError):
    pass


class QMatrix:
    """Dense matrix of rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        self.entries = [[as_fraction(a) for a in row] for row in entries]
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        self.cols = cols
        for row in self.entries:
            if len(row) != cols:
                raise DimensionError("ragged matrix")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols})"

    def apply(self, x: Sequence) -> list[Fraction]:
        if len(x) != self.cols:
            raise DimensionError(f"vector of length {len(x)} against {self.cols} columns")
        return [sum((a * b for a, b in zip(row, x) if a), Fraction(0)) for row in self.entries]

    def rref(self) -> tuple["QMatrix", list[int]]:
        """Reduced row-echelon form and the list of pivot columns."""
        m = [row[:] for row in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r == len(m):
                break
            candidates = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not candidates:
                continue
            # smallest |numerator| pivot keeps intermediate entries small
            p = min(candidates, key=lambda i: (abs(m[i][c].numerator), m[i][c].denominator, i))
            m[r], m[p] = m[p], m[r]
            piv = m[r][c]
            if piv != 1:
                m[r] = [a / piv for a in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    ri = m[i]
                    rr = m[r]
                    m[i] = [a - f * b if b else a for a, b in zip(ri, rr)]
            pivots.append(c)
            r += 1
        return QMatrix(m, self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[Fraction]]:
        reduced, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in set(pivots)]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -reduced.entries[i][f]
            basis.append(v)
        return basis


@dataclass
class LinearSolution:
    """Outcome of :func:`rref_solve`.

    ``kind`` is ``"unique"``, ``"family"`` or ``"inconsistent"``. For a family,
    ``solution`` is one particular solution and ``nullspace`` spans the
    homogeneous solutions.
    """

    kind: str
    rank: int
    solution: list[Fraction] | None = None
    nullspace: list[list[Fraction]] = field(default_factory=list)
    pivots: list[int] = field(default_factory=list)

    @property
    def unique(self) -> bool:
        return self.kind == "unique"


def rref_solve(a: QMatrix, b: Sequence) -> LinearSolution:
    """Solve ``a x = b`` exactly and classify the system."""
    if len(b) != a.rows:
        raise DimensionError(f"right-hand side has {len(b)} entries for {a.rows} rows")
    augmented = QMatrix([row + [as_fraction(v)] for row, v in zip(a.entries, b)], a.cols + 1)
    reduced, pivots = augmented.rref()
    if a.cols in pivots:
        return LinearSolution("inconsistent", rank=len(pivots) - 1, pivots=pivots[:-1])
    x = [Fraction(0)] * a.cols
    for i, p in enumerate(pivots):
        x[p] = reduced.entries[i][a.cols]
    null = a.nullspace()
    kind = "unique" if not null else "family"
    return LinearSolution(kind, rank=len(pivots), solution=x, nullspace=null, pivots=pivots)

"""Characteristic classes of a manifold of complex dimension ``2n`` with
vanishing odd Chern classes.

Weights are complex degrees: ``c_{2i}`` has weight ``2i`` and every class is
truncated above weight ``2n``. The cohomological degree of a class is twice
its weight.

``s_k`` denotes the ``k``-th power sum of the Chern roots, so the Chern
character is ``sum_k s_k / k!``. Getting that normalization wrong shifts
every coefficient by a factorial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Optional, Union

from .arith import PowerSeries, as_fraction, chebyshev_even_lambda, format_fraction, modified_bernoulli

Exponents = tuple


class WeightOverflow(ValueError):
    pass


class MissingChernNumber(KeyError):
    pass


def _weight(e: Exponents) -> int:
    return sum(2 * (i + 1) * x for i, x in enumerate(e))


def monomial_name(e: Exponents) -> str:
    parts = []
    for i, x in enumerate(e):
        if x == 1:
            parts.append(f"c{2 * (i + 1)}")
        elif x > 1:
            parts.append(f"c{2 * (i + 1)}^{x}")
    return "*".join(parts) or "1"


_FACTOR = re.compile(r"^c(\d+)(?:\^(\d+))?$")


def parse_monomial(name: str, n: int) -> Exponents:
    e = [0] * n
    name = name.strip()
    if name == "1":
        return tuple(e)
    for part in name.replace(" ", "*").split("*"):
        if not part:
            continue
        m = _FACTOR.match(part)
        if not m:
            raise ValueError(f"cannot parse Chern monomial {name!r}")
        idx, exp = int(m.group(1)), int(m.group(2) or 1)
        if idx % 2 or not 2 <= idx <= 2 * n:
            raise ValueError(f"c{idx} is not a generator for n={n}")
        e[idx // 2 - 1] += exp
    return tuple(e)


def monomials_of_weight(n: int, w: int) -> list[Exponents]:
    """Exponent vectors of weight ``w``, ordered by decreasing power of
    ``c2`` then ``c4`` and so on (``c2^5`` comes first)."""
    out = []

    def rec(i, rest, acc):
        if i < 0:
            if rest == 0:
                out.append(tuple(acc))
            return
        g = 2 * (i + 1)
        for x in range(rest // g, -1, -1):
            acc[i] = x
            rec(i - 1, rest - g * x, acc)
        acc[i] = 0

    # enumerate from the largest generator down so that the tuple order is natural
    rec(n - 1, w, [0] * n)
    return sorted(out, reverse=True)


class ChernPolynomial:
    """Polynomial in ``c2, c4, ..., c_{2n}`` truncated above weight ``2n``."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping] = None):
        self.n = n
        self.terms: dict[Exponents, Fraction] = {}
        for e, v in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError("exponent vector has wrong length")
            v = as_fraction(v)
            if v and _weight(e) <= 2 * n:
                self.terms[e] = self.terms.get(e, 0) + v
        self.terms = {e: v for e, v in self.terms.items() if v}

    @classmethod
    def constant(cls, n: int, c=1) -> "ChernPolynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def gen(cls, n: int, k: int) -> "ChernPolynomial":
        """``c_k``; zero for odd ``k`` and for ``k > 2n``."""
        if k == 0:
            return cls.constant(n)
        if k % 2 or k > 2 * n or k < 0:
            return cls(n)
        e = [0] * n
        e[k // 2 - 1] = 1
        return cls(n, {tuple(e): 1})

    def _check(self, other):
        if not isinstance(other, ChernPolynomial) or other.n != self.n:
            raise ValueError("Chern polynomials of different dimensions")

    def __add__(self, other):
        if not isinstance(other, ChernPolynomial):
            other = ChernPolynomial.constant(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for e, v in other.terms.items():
            out[e] = out.get(e, 0) + v
        return ChernPolynomial(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return ChernPolynomial(self.n, {e: -v for e, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ChernPolynomial):
            c = as_fraction(other)
            return ChernPolynomial(self.n, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        cap = 2 * self.n
        out: dict = {}
        for e1, v1 in self.terms.items():
            w1 = _weight(e1)
            for e2, v2 in other.terms.items():
                if w1 + _weight(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + v1 * v2
        return ChernPolynomial(self.n, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / as_fraction(c))

    def __pow__(self, k: int):
        out = ChernPolynomial.constant(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ChernPolynomial):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == ChernPolynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.n, Fraction(0))

    def weight(self, w: int) -> "ChernPolynomial":
        """Homogeneous part of weight ``w``."""
        return ChernPolynomial(self.n, {e: v for e, v in self.terms.items() if _weight(e) == w})

    def weights(self) -> set[int]:
        return {_weight(e) for e in self.terms}

    def top(self) -> "ChernPolynomial":
        return self.weight(2 * self.n)

    def coefficient(self, mono: Union[str, Exponents]) -> Fraction:
        e = parse_monomial(mono, self.n) if isinstance(mono, str) else tuple(mono)
        return self.terms.get(e, Fraction(0))

    def exp(self) -> "ChernPolynomial":
        if self.constant_term():
            raise ValueError("exponential needs a vanishing constant term")
        total = ChernPolynomial.constant(self.n)
        term = ChernPolynomial.constant(self.n)
        for m in range(1, 2 * self.n + 1):
            term = term * self / m
            if term.is_zero():
                break
            total = total + term
        return total

    def substitute(self, values: Mapping) -> Fraction:
        """Evaluate at rational values of the generators (keys ``"c2"`` or
        the integer ``2``)."""
        vals = [Fraction(0)] * self.n
        for k, v in values.items():
            idx = int(str(k).lstrip("c"))
            vals[idx // 2 - 1] = as_fraction(v)
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, val in zip(e, vals):
                term *= val ** x
            total += term
        return total

    def __repr__(self):
        return f"ChernPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (_weight(e), [-x for x in e])):
            v = self.terms[e]
            name = monomial_name(e)
            parts.append(format_fraction(v) if name == "1" else f"{format_fraction(v)}*{name}")
        return " + ".join(parts)


class GradedSeries:
    """Polynomial in one formal variable with Chern polynomial coefficients."""

    var = "t"

    def __init__(self, n: int, coeffs: Optional[Mapping[int, ChernPolynomial]] = None):
        self.n = n
        self.coeffs: dict[int, ChernPolynomial] = {}
        for k, v in (coeffs or {}).items():
            if not v.is_zero():
                self.coeffs[k] = v

    def coefficient(self, k: int) -> ChernPolynomial:
        return self.coeffs.get(k, ChernPolynomial(self.n))

    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return type(self)(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return type(self)(self.n, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, ChernPolynomial):
            return type(self)(self.n, {k: v * other for k, v in self.coeffs.items()})
        if not isinstance(other, GradedSeries):
            return self.scale(other)
        out: dict[int, ChernPolynomial] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                p = x * y
                out[a + b] = out[a + b] + p if a + b in out else p
        return type(self)(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def weight(self, w: int):
        return type(self)(self.n, {k: v.weight(w) for k, v in self.coeffs.items()})

    def exp(self):
        if not self.coefficient(0).is_zero() and self.coefficient(0).constant_term():
            raise ValueError("exponential needs a vanishing constant term")
        one = type(self)(self.n, {0: ChernPolynomial.constant(self.n)})
        total, term = one, one
        for m in range(1, 2 * self.n + 1):
            term = (term * self).scale(Fraction(1, m))
            if not term.coeffs:
                break
            total = total + term
        return total

    def evaluate(self, value) -> ChernPolynomial:
        value = as_fraction(value)
        out = ChernPolynomial(self.n)
        for k, v in self.coeffs.items():
            out = out + v * value ** k
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({v})*{self.var}^{k}" for k, v in sorted(self.coeffs.items()))

    __repr__ = __str__


class LambdaSeries(GradedSeries):
    var = "lambda"


class YPolynomial(GradedSeries):
    var = "y"


class SymFuncContext:
    """Newton-identity conversions between Chern classes and power sums of
    Chern roots, with every odd Chern class and odd power sum set to zero."""

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("half-dimension must be non-negative")
        self.n = n
        self._p: dict[int, ChernPolynomial] = {}

    def c(self, k: int) -> ChernPolynomial:
        return ChernPolynomial.gen(self.n, k)

    def power_sum(self, k: int) -> ChernPolynomial:
        """``s_k = p_k`` of the Chern roots expressed in Chern classes."""
        if k > 2 * self.n:
            raise WeightOverflow(f"weight {k} exceeds 2n = {2 * self.n}")
        if k < 1:
            raise ValueError("power sums start at k = 1")
        if k not in self._p:
            acc = self.c(k) * ((-1) ** (k - 1) * k)
            for i in range(1, k):
                acc = acc + self.c(i) * self.power_sum(k - i) * (-1) ** (i - 1)
            self._p[k] = acc
        return self._p[k]

    def chern_from_power_sums(self, p: Mapping[int, ChernPolynomial]) -> list[ChernPolynomial]:
        """Elementary symmetric functions ``e_0..e_2n`` from power sums
        ``p[1..2n]`` (inverse Newton recursion)."""
        e = [ChernPolynomial.constant(self.n)]
        for k in range(1, 2 * self.n + 1):
            acc = ChernPolynomial(self.n)
            for i in range(1, k + 1):
                acc = acc + e[k - i] * p[i] * (-1) ** (i - 1)
            e.append(acc / k)
        return e


def s_from_c(k: int, ctx: SymFuncContext) -> ChernPolynomial:
    return ctx.power_sum(k)


def _log_todd(ctx: SymFuncContext, factor=1) -> ChernPolynomial:
    out = ChernPolynomial(ctx.n)
    for k in range(1, ctx.n + 1):
        out = out + ctx.power_sum(2 * k) * (-2 * factor * modified_bernoulli(2 * k))
    return out


def todd_symplectic(ctx: SymFuncContext) -> ChernPolynomial:
    """``exp(-2 sum_k b_2k s_2k)``."""
    return _log_todd(ctx).exp()


def sqrt_todd(ctx: SymFuncContext) -> ChernPolynomial:
    """``exp(-sum_k b_2k s_2k)``, the square root of the Todd class."""
    return _log_todd(ctx, Fraction(1, 2)).exp()


def deformed_power_sums(ctx: SymFuncContext) -> dict[int, LambdaSeries]:
    """Even power sums with the weight-``2k`` part scaled by
    ``T_2k(sqrt(lambda/4 + 1))``, the graded-character shadow of the
    Adams-type deformation."""
    out = {}
    for k in range(1, ctx.n + 1):
        t = chebyshev_even_lambda(k)
        out[2 * k] = LambdaSeries(ctx.n, {j: ctx.power_sum(2 * k) * c for j, c in enumerate(t.coeffs)})
    return out


def todd_deformed(ctx: SymFuncContext) -> LambdaSeries:
    """``exp(-2 sum_k b_2k s_2k T_2k(sqrt(lambda/4 + 1)))`` as a polynomial in
    ``lambda``; at ``lambda = 0`` it is the Todd class."""
    x = LambdaSeries(ctx.n)
    for k, s in deformed_power_sums(ctx).items():
        x = x + s.scale(-2 * modified_bernoulli(k))
    return x.exp()


def exterior_character(ctx: SymFuncContext) -> YPolynomial:
    """``sum_p y^p ch(Lambda^p Omega)`` for the cotangent bundle.

    The Chern roots of the cotangent bundle are ``-x_i``, so the power sums
    of ``exp(-x_i)`` give the Adams operations and Newton's recursion turns
    them into the exterior powers.
    """
    n = ctx.n
    rank = 2 * n
    adams: dict[int, ChernPolynomial] = {}
    for j in range(1, rank + 1):
        acc = ChernPolynomial.constant(n, rank)
        for k in range(1, 2 * n + 1):
            acc = acc + ctx.power_sum(k) * Fraction((-j) ** k, factorial(k))
        adams[j] = acc
    e = ctx.chern_from_power_sums(adams)
    return YPolynomial(n, {p: e[p] for p in range(rank + 1)})


def chi_y_integrand(ctx: SymFuncContext) -> YPolynomial:
    """``td(X) * sum_p y^p ch(Lambda^p Omega_X)``."""
    return exterior_character(ctx) * todd_symplectic(ctx)


def _values_table(values: Mapping, n: int) -> dict[Exponents, Fraction]:
    out = {}
    for k, v in values.items():
        e = parse_monomial(k, n) if isinstance(k, str) else tuple(k)
        out[e] = as_fraction(v)
    return out


def integrate(p: ChernPolynomial, values: Mapping) -> Fraction:
    """Evaluate the top-weight part of ``p`` on the given Chern numbers.

    ``values`` maps weight-``2n`` monomials (exponent tuples or names such
    as ``"c2^2*c4"``) to rationals.
    """
    table = _values_table(values, p.n)
    total = Fraction(0)
    for e, c in p.top().terms.items():
        if e not in table:
            raise MissingChernNumber(monomial_name(e))
        total += c * table[e]
    return total


def power_sums_via_log(ctx: SymFuncContext) -> dict[int, ChernPolynomial]:
    """``p_k = (-1)^(k-1) k [t^k] log(1 + sum_i c_i t^i)``, computed without
    the Newton recursion."""
    n = ctx.n
    order = 2 * n + 1
    # coefficients are Chern polynomials; expand log(1 + u) = sum (-1)^(m-1) u^m / m
    u = [ChernPolynomial(n)] + [ctx.c(i) for i in range(1, order)]

    def mul(a, b):
        out = [ChernPolynomial(n) for _ in range(order)]
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j in range(order - i):
                if not b[j].is_zero():
                    out[i + j] = out[i + j] + x * b[j]
        return out

    log = [ChernPolynomial(n) for _ in range(order)]
    power = [ChernPolynomial.constant(n)] + [ChernPolynomial(n) for _ in range(order - 1)]
    for m in range(1, order):
        power = mul(power, u)
        sign = 1 if m % 2 else -1
        log = [a + b * Fraction(sign, m) for a, b in zip(log, power)]
    return {k: log[k] * ((-1) ** (k - 1) * k) for k in range(1, order)}


def genus_from_series(q: PowerSeries, ctx: SymFuncContext) -> ChernPolynomial:
    """Multiplicative genus ``prod_i Q(x_i)`` in Chern classes, with odd
    Chern classes set to zero."""
    if q[0] != 1:
        raise ValueError("the characteristic series must have constant term 1")
    n = ctx.n
    order = 2 * n + 1
    if q.order < order:
        raise ValueError(f"series known only to order {q.order}, need {order}")
    logq = q.truncate(order).log()
    p = power_sums_via_log(ctx)
    x = ChernPolynomial(n)
    for k in range(1, order):
        if logq[k]:
            x = x + p[k] * logq[k]
    return x.exp()


@lru_cache(maxsize=None)
def todd_series(order: int) -> PowerSeries:
    """``x / (1 - exp(-x))`` to the given order."""
    one_minus = PowerSeries([0] + [Fraction((-1) ** (k + 1), factorial(k)) for k in range(1, order + 2)], order + 2)
    # (1 - e^{-x}) / x
    shifted = PowerSeries([one_minus[k + 1] for k in range(order + 1)], order + 1)
    return shifted.inverse().truncate(order)

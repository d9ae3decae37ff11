"""Cubic symmetric polynomials in countably many variables ``x_0, x_1, ...``
and the map sending double wheels into them."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from ..arith import as_fraction, bernoulli, format_fraction


class Sym3Poly:
    """Element of ``Sym^3`` keyed by sorted index triples ``(a, b, c)``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple[int, int, int], Fraction] = {}
        for k, v in (terms or {}).items():
            self._add(tuple(sorted(k)), as_fraction(v))

    def _add(self, k, v):
        x = self.terms.get(k, 0) + v
        if x:
            self.terms[k] = x
        else:
            self.terms.pop(k, None)

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coeff=1) -> "Sym3Poly":
        return cls({(a, b, c): coeff})

    def __add__(self, other: "Sym3Poly") -> "Sym3Poly":
        out = Sym3Poly(self.terms)
        for k, v in other.terms.items():
            out._add(k, v)
        return out

    def __neg__(self):
        return Sym3Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Sym3Poly":
        c = as_fraction(c)
        return Sym3Poly({k: c * v for k, v in self.terms.items()})

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, Sym3Poly):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def weight_slice(self, w: int) -> "Sym3Poly":
        return Sym3Poly({k: v for k, v in self.terms.items() if sum(k) == w})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{format_fraction(v)}*x{a}x{b}x{c}" for (a, b, c), v in sorted(self.terms.items()))


def _wheel_sum(i: int, j: int, coeff) -> Sym3Poly:
    """``coeff * sum_{l,m} (-1)^(l+m) C(i,l) C(j,m) x_l x_m x_{i+j-l-m}``."""
    out = Sym3Poly()
    for l in range(i + 1):
        for m in range(j + 1):
            c = comb(i, l) * comb(j, m)
            out._add(tuple(sorted((l, m, i + j - l - m))), coeff * (-1 if (l + m) % 2 else 1) * c)
    return out


def p_map(i: int, j: int) -> Sym3Poly:
    """Image of the double wheel ``w_{i,j}``."""
    if i < 0 or j < 0:
        raise ValueError("indices must be non-negative")
    if (i + j) % 2:
        return Sym3Poly()
    return _wheel_sum(i, j, Fraction(2))


def bernoulli_identity_lhs(max_weight: int) -> Sym3Poly:
    """Left side of the Bernoulli identity in ``Sym^3``, truncated to
    monomials of total index weight at most ``max_weight``."""
    out = Sym3Poly()
    for k in range(2, max_weight + 3):
        bk = bernoulli(k) / factorial(k)
        if not bk:
            continue
        for n in range(k - 1):
            out = out + _wheel_sum(n, k - 2 - n, bk)
    for i in range(2, max_weight + 3):
        bi = bernoulli(i) / factorial(i)
        if not bi:
            continue
        for j in range(2, max_weight + 4 - i):
            bj = bernoulli(j) / factorial(j)
            if bj:
                out = out + _wheel_sum(i - 1, j - 1, bi * bj)
    return out


def lemma_bernoulli_defect(max_weight: int) -> Sym3Poly:
    """Difference of the two sides; zero when the identity holds."""
    if max_weight < 0:
        raise ValueError("weight cap must be non-negative")
    return bernoulli_identity_lhs(max_weight) - Sym3Poly.monomial(0, 0, 0, Fraction(1, 12))

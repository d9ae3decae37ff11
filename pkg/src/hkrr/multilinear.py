"""Exterior algebra over the dual of a symplectic vector space.

The space ``V`` has dimension ``2n`` and a fixed symplectic basis
``e_1, ..., e_2n``; the dual basis is ``theta^1, ..., theta^2n`` and the
symplectic form is ``sigma = sum_i theta^{2i-1} ^ theta^{2i}``.

Wedge monomials are identified with alternating forms by the determinant
rule ``(a_1 ^ ... ^ a_r)(v_1, ..., v_r) = det(a_i(v_j))``. Some authors use a
normalization with an extra ``1/r!``; mixing the two silently changes the
constants in every pairing below.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Iterator

from .arith import QMatrix, as_fraction


class AmbientMismatch(ValueError):
    pass


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Sign of the shuffle sorting ``a + b``; 0 if they share an index."""
    if set(a) & set(b):
        return 0
    inversions = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inversions += j
    return -1 if inversions % 2 else 1


class SymplecticSpace:
    """``V`` of dimension ``2n`` with its standard symplectic basis."""

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("half-dimension must be non-negative")
        self.n = n
        self.dim = 2 * n

    def __eq__(self, other):
        return isinstance(other, SymplecticSpace) and other.n == self.n

    def __hash__(self):
        return hash(("SymplecticSpace", self.n))

    def __repr__(self):
        return f"SymplecticSpace(n={self.n})"

    def dual_form(self, i: int, j: int) -> int:
        """The induced form on ``V*`` evaluated on ``theta^i, theta^j``
        (1-based indices)."""
        lo, hi = min(i, j), max(i, j)
        if lo % 2 == 1 and hi == lo + 1:
            return 1 if i < j else -1
        return 0

    def pairing_table(self) -> QMatrix:
        return QMatrix([[self.dual_form(i, j) for j in range(1, self.dim + 1)]
                        for i in range(1, self.dim + 1)])

    def one(self) -> "ExteriorElement":
        return ExteriorElement(self, {(): Fraction(1)})

    def theta(self, i: int) -> "ExteriorElement":
        if not 1 <= i <= self.dim:
            raise IndexError(f"theta^{i} does not exist in dimension {self.dim}")
        return ExteriorElement(self, {(i,): Fraction(1)})

    def monomial(self, indices, coeff=1) -> "ExteriorElement":
        idx = tuple(indices)
        srt = tuple(sorted(idx))
        if len(set(idx)) != len(idx):
            return ExteriorElement(self, {})
        sign = _permutation_sign(idx, srt)
        return ExteriorElement(self, {srt: sign * as_fraction(coeff)})

    def sigma(self) -> "ExteriorElement":
        return ExteriorElement(self, {(2 * i - 1, 2 * i): Fraction(1) for i in range(1, self.n + 1)})

    def exp_sigma(self) -> "ExteriorElement":
        s = self.sigma()
        total = self.one()
        power = self.one()
        for k in range(1, self.n + 1):
            power = power.wedge(s)
            total = total + power * Fraction(1, factorial(k))
        return total

    def basis_monomials(self, degree: int) -> Iterator["ExteriorElement"]:
        for idx in combinations(range(1, self.dim + 1), degree):
            yield ExteriorElement(self, {idx: Fraction(1)})

    def random_element(self, degree: int, rng: random.Random, density: float = 0.6) -> "ExteriorElement":
        """Pseudorandom element of the given degree with small integer
        coefficients."""
        terms = {}
        for idx in combinations(range(1, self.dim + 1), degree):
            if rng.random() < density:
                c = rng.randint(-5, 5)
                if c:
                    terms[idx] = Fraction(c)
        return ExteriorElement(self, terms)


def _permutation_sign(seq, target) -> int:
    pos = {v: i for i, v in enumerate(target)}
    perm = [pos[v] for v in seq]
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class ExteriorElement:
    """Element of the exterior algebra on ``V*`` with rational coefficients.

    Terms are keyed by strictly increasing 1-based index tuples.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space: SymplecticSpace, terms: dict):
        self.space = space
        self.terms = {k: as_fraction(v) for k, v in terms.items() if v != 0}
        for k in self.terms:
            if len(k) > space.dim:
                raise ValueError("degree exceeds the dimension of the space")

    def _check(self, other: "ExteriorElement"):
        if self.space != other.space:
            raise AmbientMismatch(f"{self.space} vs {other.space}")

    def __eq__(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda t: (len(t), t)):
            mono = "^".join(f"t{i}" for i in k) or "1"
            parts.append(f"{self.terms[k]}*{mono}")
        return " + ".join(parts)

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ExteriorElement(self.space, out)

    def __neg__(self):
        return ExteriorElement(self.space, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = as_fraction(c)
        return ExteriorElement(self.space, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def wedge(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                s = _merge_sign(a, b)
                if s:
                    key = tuple(sorted(a + b))
                    out[key] = out.get(key, 0) + s * x * y
        return ExteriorElement(self.space, out)

    __xor__ = wedge

    def homogeneous(self, degree: int) -> "ExteriorElement":
        return ExteriorElement(self.space, {k: v for k, v in self.terms.items() if len(k) == degree})

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}

    def is_zero(self) -> bool:
        return not self.terms


def pairing(a: ExteriorElement, b: ExteriorElement) -> Fraction:
    """Determinant pairing: for monomials of equal degree it is the
    determinant of the matrix of dual-form values, across degrees it is 0."""
    a._check(b)
    space = a.space
    total = Fraction(0)
    for ia, x in a.terms.items():
        for ib, y in b.terms.items():
            if len(ia) != len(ib):
                continue
            if not ia:
                total += x * y
                continue
            m = QMatrix([[space.dual_form(i, j) for j in ib] for i in ia])
            total += _det(m) * x * y
    return total


def _det(m: QMatrix) -> Fraction:
    rows = [r[:] for r in m.entries]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        piv = rows[c][c]
        det *= piv
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] / piv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def top_projection(a: ExteriorElement) -> Fraction:
    """Coefficient of ``theta^1 ^ ... ^ theta^2n``."""
    return a.terms.get(tuple(range(1, a.space.dim + 1)), Fraction(0))


def laexp_defect(alpha: ExteriorElement) -> Fraction:
    """``top(alpha ^ exp sigma) - <alpha, exp sigma> * top(exp sigma)``.

    The two sides agree for every even-degree ``alpha``; the return value is
    meant to be zero.
    """
    if any(d % 2 for d in alpha.degrees()):
        raise ValueError("alpha must have even degree")
    es = alpha.space.exp_sigma()
    return top_projection(alpha.wedge(es)) - pairing(alpha, es) * top_projection(es)


def scaled_power_identity_defect(alpha: ExteriorElement, p: int) -> Fraction:
    """Defect of ``alpha ^ sigma^(n-p) = (n-p)!/(p! n!) <alpha, sigma^p> sigma^n``
    at top degree, for ``alpha`` homogeneous of degree ``2p``."""
    space = alpha.space
    n = space.n
    if alpha.degrees() - {2 * p}:
        raise ValueError(f"alpha must be homogeneous of degree {2 * p}")
    s = space.sigma()

    def power(k):
        out = space.one()
        for _ in range(k):
            out = out.wedge(s)
        return out

    lhs = top_projection(alpha.wedge(power(n - p)))
    rhs = Fraction(factorial(n - p), factorial(p) * factorial(n)) * pairing(alpha, power(p)) * top_projection(power(n))
    return lhs - rhs

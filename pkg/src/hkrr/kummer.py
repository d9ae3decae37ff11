"""Chern numbers of generalized Kummer varieties.

The unknowns are the top-weight Chern monomials of ``K^n A``. Two families
of linear relations pin them down:

* the Riemann-Roch polynomial ``chi(L) = (n+1) binom((n+1) lambda/4 + n, n)``
  compared coefficientwise in ``lambda`` with the integral of the deformed
  Todd class;
* the closed-form chi_y genus compared coefficientwise in ``y`` with the
  integral of the chi_y integrand.

Both sides are exact, so the system is solved by exact elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .arith import LinearSolution, Polynomial1, QMatrix, binomial, rref_solve
from .charclass import (
    ChernPolynomial,
    SymFuncContext,
    chi_y_integrand,
    integrate,
    monomial_name,
    monomials_of_weight,
    sqrt_todd,
    todd_deformed,
    todd_symplectic,
)

MAX_N = 6


class CapExceeded(ValueError):
    pass


class InconsistentSystem(RuntimeError):
    pass


class NonIntegralSolution(RuntimeError):
    pass


@dataclass(frozen=True)
class KummerInstance:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")

    @property
    def monomials(self) -> list[tuple[int, ...]]:
        """Top-weight Chern monomials, one per partition of ``n``."""
        return monomials_of_weight(self.n, 2 * self.n)

    @property
    def context(self) -> SymFuncContext:
        return SymFuncContext(self.n)


def kummer_euler_q(n: int, q) -> Fraction:
    """``(n+1) binom(q/2 + n, n)`` with ``q`` the value of the quadratic form."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n + 1) * binomial(Fraction(q) / 2 + n, n)


def kummer_euler_lambda(n: int) -> Polynomial1:
    """``(n+1) binom((n+1) lambda/4 + n, n)`` as a polynomial in ``lambda``."""
    if n < 1:
        raise ValueError("n must be positive")
    out = Polynomial1((Fraction(n + 1, factorial(n)),), "lambda")
    for i in range(1, n + 1):
        out = out * Polynomial1((Fraction(i), Fraction(n + 1, 4)), "lambda")
    return out


def chi_y_kummer(n: int) -> Polynomial1:
    """chi_y genus of ``K^n A`` from the divisor-sum formula."""
    if n < 1:
        raise ValueError("n must be positive")
    m = n + 1
    my = Polynomial1((0, -1), "y")
    total = Polynomial1((), "y")
    for d in range(1, m + 1):
        if m % d:
            continue
        geo = Polynomial1((), "y")
        for i in range(m // d):
            geo = geo + my ** i
        total = total + geo * geo * my ** (m - m // d) * d ** 3
    return total * m


def chi_symmetric_power(chi, n: int) -> Fraction:
    """``binom(chi + n - 1, n)`` as a polynomial in ``chi``."""
    if n < 1:
        raise ValueError("n must be positive")
    return binomial(Fraction(chi) + n - 1, n)


@dataclass
class RelationSystem:
    n: int
    monomials: list[tuple[int, ...]]
    matrix: QMatrix
    rhs: list[Fraction]
    tags: list[str]

    def residuals(self, values: dict) -> list[Fraction]:
        return [sum((a * values[m] for a, m in zip(row, self.monomials)), Fraction(0)) - b
                for row, b in zip(self.matrix.entries, self.rhs)]


def _row(p: ChernPolynomial, monomials) -> list[Fraction]:
    top = p.top()
    return [top.coefficient(m) for m in monomials]


def build_relations(n: int) -> RelationSystem:
    if n > MAX_N:
        raise CapExceeded(f"relation systems are supported for n <= {MAX_N}")
    inst = KummerInstance(n)
    ctx = inst.context
    monos = inst.monomials
    rows, rhs, tags = [], [], []
    td = todd_deformed(ctx)
    chi_l = kummer_euler_lambda(n)
    for j in range(n + 1):
        rows.append(_row(td.coefficient(j), monos))
        rhs.append(chi_l[j])
        tags.append(f"lambda^{j}")
    integrand = chi_y_integrand(ctx)
    chi_y = chi_y_kummer(n)
    for p in range(n + 1):
        rows.append(_row(integrand.coefficient(p), monos))
        rhs.append(chi_y[p])
        tags.append(f"y^{p}")
    return RelationSystem(n, monos, QMatrix(rows, len(monos)), rhs, tags)


@dataclass
class ChernNumberTable:
    n: int
    rank: int
    unknowns: int
    unique: bool
    values: dict = field(default_factory=dict)
    solution: LinearSolution = None

    def named(self) -> list[tuple[str, Fraction]]:
        return [(monomial_name(m), v) for m, v in self.values.items()]


def solve_chern_numbers(n: int) -> ChernNumberTable:
    """Solve the relation system; values are filled only when unique."""
    system = build_relations(n)
    sol = rref_solve(system.matrix, system.rhs)
    if sol.kind == "inconsistent":
        raise InconsistentSystem(f"relations for n={n} are inconsistent")
    table = ChernNumberTable(n, sol.rank, len(system.monomials), sol.unique, solution=sol)
    if sol.unique:
        for m, v in zip(system.monomials, sol.solution):
            if v.denominator != 1:
                raise NonIntegralSolution(f"{monomial_name(m)} = {v} is not an integer")
            table.values[m] = v
    return table


def integral_todd(table: ChernNumberTable) -> Fraction:
    """``int td`` evaluated on a solved table."""
    return integrate(todd_symplectic(SymFuncContext(table.n)), table.values)


def integral_sqrt_todd(table: ChernNumberTable) -> Fraction:
    return integrate(sqrt_todd(SymFuncContext(table.n)), table.values)


def sqrt_todd_expected(n: int) -> Fraction:
    return Fraction((n + 1) ** (n + 1), 4 ** n * factorial(n))


def euler_characteristic_y_minus_one(n: int) -> Fraction:
    """Topological Euler characteristic, ``chi_y`` at ``y = -1``."""
    return chi_y_kummer(n)(-1)


__all__ = [
    "CapExceeded", "ChernNumberTable", "InconsistentSystem", "KummerInstance", "NonIntegralSolution",
    "RelationSystem", "build_relations", "chi_symmetric_power", "chi_y_kummer",
    "euler_characteristic_y_minus_one", "integral_sqrt_todd", "integral_todd", "kummer_euler_lambda",
    "kummer_euler_q", "solve_chern_numbers", "sqrt_todd_expected",
]

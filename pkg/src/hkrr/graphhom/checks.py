"""Verification routines for identities among Jacobi diagrams.

Each returns a list of defects; an empty list means the identity holds.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterator, Optional

from .quotient import quotient_basis, reduce_vector
from .vector import (
    GraphVector,
    exp_partial,
    pairing,
    partial,
    partial_bilinear,
    union,
)
from .wheels import MU_COEFF, double_wheel, ell, omega, theta, wheel, wheel_derivative_expected


def _nonzero(red: dict) -> dict:
    return {bd: c for bd, c in red.items() if any(c)}


def verify_omega_eigen(max_vertices: int, cache_dir=None) -> dict[int, dict]:
    """Check ``partial Omega(mu) = (mu^2/48) Theta Omega(mu)``.

    For every output vertex count ``N <= max_vertices`` the difference is
    reduced in the quotient; the result maps ``N`` to its non-zero
    coordinates, so a correct identity yields only empty entries.
    """
    om = omega(max_vertices + 2)
    th = theta()
    out = {}
    for n in range(2, max_vertices + 1, 4):
        lhs = partial(om.by_vertex_count(n + 2))
        rhs = union(th, om.by_vertex_count(n - 2)).scale(MU_COEFF)
        out[n] = _nonzero(reduce_vector(lhs - rhs, cache_dir))
    return out


def check_wheel_contractions(max_k: int = 3) -> list[int]:
    """Values of ``k`` for which the contraction of ``w_2k`` differs from
    the expected double-wheel sum at the level of canonical diagrams."""
    return [k for k in range(1, max_k + 1) if partial(wheel(2 * k)) != wheel_derivative_expected(k)]


def check_wheel_glueings(max_sum: int = 3, cache_dir=None) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` with ``i + j <= max_sum`` for which glueing ``w_2i``
    to ``w_2j`` is not ``8ij w_{2i-1,2j-1}`` modulo IHX."""
    bad = []
    for i in range(1, max_sum):
        for j in range(1, max_sum + 1 - i):
            lhs = partial_bilinear(wheel(2 * i), wheel(2 * j))
            rhs = double_wheel(2 * i - 1, 2 * j - 1).scale(8 * i * j)
            if _nonzero(reduce_vector(lhs - rhs, cache_dir)):
                bad.append((i, j))
    return bad


def check_power_rule(gamma: GraphVector, max_n: int = 3, cache_dir=None) -> list[int]:
    """``partial(g^n) = n partial(g) g^(n-1) + C(n,2) partial(g,g) g^(n-2)``."""
    bad = []
    powers = [GraphVector.one()]
    for _ in range(max_n):
        powers.append(union(powers[-1], gamma))
    dg = partial(gamma)
    dgg = partial_bilinear(gamma, gamma)
    for n in range(1, max_n + 1):
        rhs = union(dg, powers[n - 1]).scale(n)
        if n >= 2:
            rhs = rhs + union(dgg, powers[n - 2]).scale(comb(n, 2))
        if _nonzero(reduce_vector(partial(powers[n]) - rhs, cache_dir)):
            bad.append(n)
    return bad


def basis_elements(max_vertices: int, with_ell: bool = True, cache_dir=None) -> Iterator[GraphVector]:
    """Quotient-basis diagrams with at most ``max_vertices`` vertices."""
    for total in range(0, max_vertices + 1, 2):
        for t in range(total + 1):
            u = total - t
            if (3 * t + u) % 2:
                continue
            for k in quotient_basis(u, t, cache_dir).basis:
                if with_ell or k[0] == 0:
                    yield GraphVector({k: 1})


def trivalent_part(vec: GraphVector) -> GraphVector:
    """Pairing with the empty diagram: drop every term with a univalent vertex."""
    return GraphVector({k: v for k, v in vec.terms.items() if k[0] == 0 and not any(k[2])})


def check_ell_and_partial(max_vertices: int = 6, cache_dir=None) -> list[tuple]:
    """``<g, (l/2) g'> = <partial g, g'>`` over basis pairs of bidegree
    total at most ``max_vertices`` each, with ``g`` free of ``l``."""
    half_ell = ell().scale(Fraction(1, 2))
    left = list(basis_elements(max_vertices, with_ell=False, cache_dir=cache_dir))
    right = list(basis_elements(max_vertices, cache_dir=cache_dir))
    bad = []
    for g in left:
        (kg,) = g.terms
        for h in right:
            (kh,) = h.terms
            if sum(kg[2]) != sum(kh[2]) + 2 * kh[0] + 2:
                continue
            lhs = pairing(g, union(half_ell, h))
            rhs = pairing(partial(g), h)
            if _nonzero(reduce_vector(lhs - rhs, cache_dir)):
                bad.append((kg, kh))
    return bad


def check_scp_and_partial(max_vertices: int = 6, cache_dir=None) -> list[tuple]:
    """``<exp(partial)(g g'), 1> = <exp(partial) g, exp(partial) g'>`` for
    basis pairs without ``l`` whose vertex counts sum to at most
    ``max_vertices``."""
    elems = list(basis_elements(max_vertices, with_ell=False, cache_dir=cache_dir))
    bad = []
    for a, g in enumerate(elems):
        for h in elems[a:]:
            if g.max_vertex_count() + h.max_vertex_count() > max_vertices:
                continue
            lhs = trivalent_part(exp_partial(union(g, h)))
            rhs = pairing(exp_partial(g), exp_partial(h))
            if _nonzero(reduce_vector(lhs - rhs, cache_dir)):
                bad.append((next(iter(g.terms)), next(iter(h.terms))))
    return bad


def omega_eigen_ok(max_vertices: int, cache_dir: Optional[str] = None) -> bool:
    return all(not d for d in verify_omega_eigen(max_vertices, cache_dir).values())

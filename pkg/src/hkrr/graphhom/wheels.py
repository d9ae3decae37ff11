"""Wheels, double wheels and the wheel exponential.

Orientations come from a planar drawing with every vertex ordered
counterclockwise and every leg pointing outward:

* wheel rim vertex: (leg, next rim vertex, previous rim vertex);
* double wheel ``w_{i,j}``: the left trivalent end is (top, bottom, middle),
  the right end is (top, middle, bottom); vertices on the top arc are
  (leg, towards left, towards right), vertices on the bottom arc
  (leg, towards right, towards left).
"""

from __future__ import annotations

from fractions import Fraction

from ..arith import modified_bernoulli
from .diagram import LEG, Diagram
from .vector import GraphVector, exp_vector


def _build(nv: int, links: list[tuple[int, int]], legs: list[int], ell: int = 0) -> Diagram:
    partner = [LEG] * (3 * nv)
    for a, b in links:
        partner[a], partner[b] = b, a
    for f in legs:
        partner[f] = LEG
    return Diagram(ell, tuple(partner))


def wheel_diagram(m: int) -> Diagram:
    if m < 1:
        raise ValueError("a wheel needs at least one spoke")
    links = [(3 * i + 1, 3 * ((i + 1) % m) + 2) for i in range(m)]
    return _build(m, links, [3 * i for i in range(m)])


def wheel(m: int) -> GraphVector:
    """``w_m``; ``w_0`` is the empty diagram."""
    if m == 0:
        return GraphVector.one()
    return GraphVector.from_diagram(wheel_diagram(m))


def double_wheel_diagram(i: int, j: int) -> Diagram:
    if i < 0 or j < 0:
        raise ValueError("arc lengths must be non-negative")
    x, y = 0, 1
    top = [2 + a for a in range(i)]
    bot = [2 + i + b for b in range(j)]
    nv = 2 + i + j
    links = [(3 * x + 2, 3 * y + 1)]  # middle edge
    # top arc: x.top -> p1.left, p1.right -> p2.left, ..., -> y.top
    prev = 3 * x + 0
    for v in top:
        links.append((prev, 3 * v + 1))
        prev = 3 * v + 2
    links.append((prev, 3 * y + 0))
    # bottom arc: x.bottom -> q1.left, q1.right -> ..., -> y.bottom
    prev = 3 * x + 1
    for v in bot:
        links.append((prev, 3 * v + 2))
        prev = 3 * v + 1
    links.append((prev, 3 * y + 2))
    return _build(nv, links, [3 * v for v in top + bot])


def double_wheel(i: int, j: int) -> GraphVector:
    return GraphVector.from_diagram(double_wheel_diagram(i, j))


def theta() -> GraphVector:
    return double_wheel(0, 0)


def ell() -> GraphVector:
    return GraphVector.from_diagram(Diagram(1, ()))


def wheel_sum(max_vertices: int) -> GraphVector:
    """``sum_k b_2k w_2k`` over wheels with at most ``max_vertices`` vertices."""
    out = GraphVector()
    k = 1
    while 4 * k <= max_vertices:
        out = out + wheel(2 * k).scale(modified_bernoulli(2 * k))
        k += 1
    return out


def omega(max_vertices: int) -> GraphVector:
    """Wheel exponential at ``mu = 1``, through ``max_vertices`` vertices.

    A diagram with ``4k`` vertices carries ``mu^(2k)`` in ``Omega(mu)``; see
    :func:`omega_mu`.
    """
    return exp_vector(wheel_sum(max_vertices), max_vertices)


def omega_mu(max_vertices: int) -> dict[int, GraphVector]:
    """Homogeneous pieces of ``Omega(mu)`` keyed by the power of ``mu``."""
    om = omega(max_vertices)
    out: dict[int, GraphVector] = {}
    for c in range(0, max_vertices + 1, 4):
        piece = om.by_vertex_count(c)
        if piece or c == 0:
            out[c // 2] = piece
    return out


def wheel_derivative_expected(k: int) -> GraphVector:
    """``k * sum_{m=0}^{2k-2} w_{m, 2k-2-m}``, the contraction of ``w_2k``."""
    out = GraphVector()
    for m in range(2 * k - 1):
        out = out + double_wheel(m, 2 * k - 2 - m)
    return out.scale(k)


MU_COEFF = Fraction(1, 48)

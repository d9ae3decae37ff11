"""Rational linear combinations of canonical Jacobi diagrams and the
operators acting on them: disjoint union, the leg-contracting operator
``partial``, its polarization, and the full pairing."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Optional

from ..arith import as_fraction
from .canon import Key, canonicalize, diagram_from_key, key_bidegree, key_to_str
from .diagram import Diagram, disjoint_union, glue_pairs


class LegCountError(ValueError):
    pass


class GraphVector:
    """Finite sum ``sum c_K [K]`` over canonical keys ``K``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms: dict[Key, Fraction] = {}
        if terms:
            for k, v in terms.items():
                v = as_fraction(v)
                if v:
                    self.terms[k] = v

    @classmethod
    def from_diagram(cls, d: Diagram, coeff=1) -> "GraphVector":
        key, sign = canonicalize(d)
        if key is None or sign == 0:
            return cls()
        return cls({key: sign * as_fraction(coeff)})

    @classmethod
    def one(cls) -> "GraphVector":
        return cls({(0, 0, (), ()): 1})

    def __repr__(self):
        if not self.terms:
            return "GraphVector(0)"
        return "GraphVector(" + " + ".join(f"{v}*[{key_to_str(k)}]" for k, v in sorted(self.terms.items())) + ")"

    def __eq__(self, other):
        if not isinstance(other, GraphVector):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GraphVector") -> "GraphVector":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GraphVector(out)

    def __neg__(self):
        return GraphVector({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GraphVector":
        c = as_fraction(c)
        return GraphVector({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, GraphVector):
            return union(self, other)
        return self.scale(other)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {key_bidegree(k) for k in self.terms}

    def component(self, bideg: tuple[int, int]) -> "GraphVector":
        return GraphVector({k: v for k, v in self.terms.items() if key_bidegree(k) == bideg})

    def by_vertex_count(self, count: int) -> "GraphVector":
        """Terms whose total number of vertices equals ``count``."""
        return GraphVector({k: v for k, v in self.terms.items() if sum(key_bidegree(k)) == count})

    def max_vertex_count(self) -> int:
        return max((sum(key_bidegree(k)) for k in self.terms), default=0)


def _accumulate(out: dict, vec: dict, c):
    for k, v in vec.items():
        out[k] = out.get(k, 0) + c * v


_UNION: dict = {}
_PARTIAL: dict = {}
_PARTIAL2: dict = {}
_PAIR: dict = {}


def _single(d: Diagram) -> dict:
    key, sign = canonicalize(d)
    if key is None or sign == 0:
        return {}
    return {key: sign}


def _union_keys(k1: Key, k2: Key) -> dict:
    hit = _UNION.get((k1, k2))
    if hit is None:
        hit = _single(disjoint_union(diagram_from_key(k1), diagram_from_key(k2)))
        _UNION[(k1, k2)] = hit
    return hit


def union(a: GraphVector, b: GraphVector, max_vertices: Optional[int] = None) -> GraphVector:
    """Bilinear extension of disjoint union, optionally dropping products
    with more than ``max_vertices`` vertices."""
    out: dict = {}
    for k1, v1 in a.terms.items():
        s1 = sum(key_bidegree(k1))
        for k2, v2 in b.terms.items():
            if max_vertices is not None and s1 + sum(key_bidegree(k2)) > max_vertices:
                continue
            _accumulate(out, _union_keys(k1, k2), v1 * v2)
    return GraphVector(out)


def _require_no_ell(key: Key):
    if key[0]:
        raise ValueError("operator is defined on diagrams without l components")


def _partial_key(key: Key) -> dict:
    hit = _PARTIAL.get(key)
    if hit is None:
        _require_no_ell(key)
        d = diagram_from_key(key)
        hit = {}
        for f, g in combinations(d.leg_flags(), 2):
            _accumulate(hit, _single(glue_pairs(d, [(("f", f), ("f", g))])), 1)
        _PARTIAL[key] = hit
    return hit


def partial(a: GraphVector) -> GraphVector:
    """Sum over unordered pairs of legs of the glued diagram."""
    out: dict = {}
    for k, v in a.terms.items():
        _accumulate(out, _partial_key(k), v)
    return GraphVector(out)


def _partial2_keys(k1: Key, k2: Key) -> dict:
    hit = _PARTIAL2.get((k1, k2))
    if hit is None:
        _require_no_ell(k1)
        _require_no_ell(k2)
        d1 = diagram_from_key(k1)
        d2 = diagram_from_key(k2)
        d = disjoint_union(d1, d2)
        off = len(d1.partner)
        hit = {}
        for f in d1.leg_flags():
            for g in d2.leg_flags():
                _accumulate(hit, _single(glue_pairs(d, [(("f", f), ("f", g + off))])), 1)
        _PARTIAL2[(k1, k2)] = hit
    return hit


def partial_bilinear(a: GraphVector, b: GraphVector) -> GraphVector:
    """Glue exactly one leg of the first argument to one of the second."""
    out: dict = {}
    for k1, v1 in a.terms.items():
        for k2, v2 in b.terms.items():
            _accumulate(out, _partial2_keys(k1, k2), v1 * v2)
    return GraphVector(out)


def _pair_keys(k1: Key, k2: Key) -> dict:
    hit = _PAIR.get((k1, k2))
    if hit is None:
        if k1[0] and k2[0]:
            raise ValueError("pairing needs at least one argument without l components")
        d1 = diagram_from_key(k1)
        d2 = diagram_from_key(k2)
        d = disjoint_union(d1, d2)
        off = len(d1.partner)
        left = [("f", f) for f in d1.leg_flags()] + [("l", i, e) for i in range(d1.ell) for e in (0, 1)]
        right = [("f", f + off) for f in d2.leg_flags()] + [("l", d1.ell + i, e) for i in range(d2.ell) for e in (0, 1)]
        hit = {}
        if len(left) == len(right):
            for perm in permutations(right):
                _accumulate(hit, _single(glue_pairs(d, list(zip(left, perm)))), 1)
        _PAIR[(k1, k2)] = hit
    return hit


def pairing(a: GraphVector, b: GraphVector) -> GraphVector:
    """Sum over all bijections between the univalent vertices of the two
    arguments; zero unless the leg counts agree."""
    out: dict = {}
    for k1, v1 in a.terms.items():
        for k2, v2 in b.terms.items():
            _accumulate(out, _pair_keys(k1, k2), v1 * v2)
    return GraphVector(out)


def exp_partial(a: GraphVector) -> GraphVector:
    """``sum_m partial^m / m!`` applied to ``a``."""
    total = GraphVector(a.terms)
    cur = a
    m = 0
    while True:
        m += 1
        cur = partial(cur).scale(Fraction(1, m))
        if cur.is_zero():
            return total
        total = total + cur


def exp_vector(a: GraphVector, max_vertices: int) -> GraphVector:
    """Exponential under disjoint union, truncated above ``max_vertices``.

    ``a`` must have no constant term."""
    if (0, 0, (), ()) in a.terms:
        raise ValueError("exponential needs a vanishing constant term")
    total = GraphVector.one()
    power = GraphVector.one()
    m = 0
    while True:
        m += 1
        power = union(power, a, max_vertices).scale(Fraction(1, m))
        if power.is_zero():
            return total
        total = total + power


def sum_vectors(vs: Iterable[GraphVector]) -> GraphVector:
    out: dict = {}
    for v in vs:
        _accumulate(out, v.terms, 1)
    return GraphVector(out)


def clear_caches():
    for c in (_UNION, _PARTIAL, _PARTIAL2, _PAIR):
        c.clear()

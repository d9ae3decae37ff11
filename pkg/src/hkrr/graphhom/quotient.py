"""Enumeration of diagrams by bidegree and the quotient by IHX.

Bidegree ``(u, t)`` means ``u`` univalent and ``t`` trivalent vertices.
Generators are all canonical diagrams of that bidegree that survive
antisymmetry; relations are the IHX relations around every internal edge.
The reduced echelon form of the relations expresses each generator in
terms of the non-pivot generators, which form the basis.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .canon import (
    Key,
    canonical_orders,
    canonicalize,
    diagram_from_adjacency,
    diagram_from_key,
    key_bidegree,
    key_from_str,
    key_to_str,
)
from .diagram import LEG, Diagram
from .vector import GraphVector

CACHE_FORMAT = "hkrr-jacobi-basis"
CACHE_VERSION = 1


MAX_VERTICES = 12


class NotInSpan(ValueError):
    pass


class DegreeCapExceeded(ValueError):
    pass


def _graphs(nlegs: int, t: int) -> set[tuple]:
    """Loopless trivalent multigraphs on ``t`` vertices, the first
    ``nlegs`` of which carry one leg, up to isomorphism.

    Returned as ``(legs, adj)`` pairs in some labeling.
    """
    legs = tuple([1] * nlegs + [0] * (t - nlegs))
    res0 = tuple(3 - l for l in legs)
    adj0 = tuple(tuple(0 for _ in range(t)) for _ in range(t))
    frontier = {(legs, res0, adj0)}
    done = set()
    while frontier:
        nxt = set()
        for lg, res, adj in frontier:
            v = next((i for i in range(t) if res[i]), None)
            if v is None:
                done.add((lg, adj))
                continue
            for w in range(t):
                if w == v or not res[w]:
                    continue
                a = [list(r) for r in adj]
                a[v][w] += 1
                a[w][v] += 1
                r = list(res)
                r[v] -= 1
                r[w] -= 1
                colors = [(lg[i], r[i]) for i in range(t)]
                _, orders = canonical_orders(colors, a)
                o = orders[0]
                nxt.add((
                    tuple(lg[i] for i in o),
                    tuple(r[i] for i in o),
                    tuple(tuple(a[i][j] for j in o) for i in o),
                ))
        frontier = nxt
    return done


def enumerate_keys(u: int, t: int) -> list[Key]:
    """Canonical keys of all diagrams of bidegree ``(u, t)`` without
    self-loops and with at most one leg per trivalent vertex, including
    those killed by antisymmetry."""
    keys = set()
    for m in range(u // 2 + 1):
        nl = u - 2 * m
        if nl > t or (3 * t - nl) % 2:
            continue
        for lg, adj in _graphs(nl, t):
            key, _ = canonicalize(diagram_from_adjacency(m, lg, adj))
            keys.add(key)
    return sorted(keys)


def _ihx_terms(d: Diagram, f: int) -> list[Diagram]:
    g = d.partner[f]
    v, w = f // 3, g // 3
    r, s = f - 3 * v, g - 3 * w
    a, b = 3 * v + (r + 1) % 3, 3 * v + (r + 2) % 3
    c, e = 3 * w + (s + 1) % 3, 3 * w + (s + 2) % 3
    out = []
    for vv, ww in (((a, b, f), (g, c, e)), ((b, c, f), (g, a, e)), ((c, a, f), (g, b, e))):
        pos = list(range(len(d.partner)))
        for k in range(3):
            pos[vv[k]] = 3 * v + k
            pos[ww[k]] = 3 * w + k
        out.append(d.relabel(pos))
    return out


def ihx_relations(key: Key) -> list[dict]:
    """IHX relations (as key -> coefficient dicts) around each internal
    edge of the diagram ``key``."""
    d = diagram_from_key(key)
    rels = []
    for f, g in enumerate(d.partner):
        if g == LEG or f > g or f // 3 == g // 3:
            continue
        row: dict = {}
        for term in _ihx_terms(d, f):
            k, s = canonicalize(term)
            if k is None or s == 0:
                continue
            row[k] = row.get(k, 0) + s
        row = {k: Fraction(c) for k, c in row.items() if c}
        if row:
            rels.append(row)
    return rels


class _Echelon:
    """Sparse fully reduced echelon form, pivot = smallest column."""

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    def add(self, row: dict[int, Fraction]) -> bool:
        row = dict(row)
        for p in sorted(set(row) & set(self.rows)):
            c = row.get(p)
            if c:
                for k, x in self.rows[p].items():
                    row[k] = row.get(k, 0) - c * x
        row = {k: x for k, x in row.items() if x}
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p]
        row = {k: x * inv for k, x in row.items()}
        for q, other in self.rows.items():
            c = other.get(p)
            if c:
                for k, x in row.items():
                    other[k] = other.get(k, 0) - c * x
                self.rows[q] = {k: x for k, x in other.items() if x}
        self.rows[p] = row
        return True


class QuotientBasis:
    def __init__(self, bidegree: tuple[int, int], generators: list[Key], basis: list[Key],
                 reduction: dict[Key, dict[int, Fraction]], rank: int):
        self.bidegree = tuple(bidegree)
        self.generators = generators
        self.basis = basis
        self.reduction = reduction
        self.rank = rank
        self._index = {k: i for i, k in enumerate(generators)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def compute(cls, u: int, t: int) -> "QuotientBasis":
        keys = enumerate_keys(u, t)
        gens = []
        for k in keys:
            _, s = canonicalize(diagram_from_key(k))
            if s:
                gens.append(k)
        index = {k: i for i, k in enumerate(gens)}
        ech = _Echelon()
        seen = set()
        for k in keys:
            for rel in ihx_relations(k):
                frozen = frozenset(rel.items())
                if frozen in seen:
                    continue
                seen.add(frozen)
                row = {}
                for kk, c in rel.items():
                    if kk not in index:
                        raise RuntimeError(f"relation leaves the enumerated set: {kk}")
                    row[index[kk]] = c
                ech.add(row)
        free = [i for i in range(len(gens)) if i not in ech.rows]
        pos = {i: j for j, i in enumerate(free)}
        reduction: dict[Key, dict[int, Fraction]] = {}
        for i, k in enumerate(gens):
            if i in pos:
                reduction[k] = {pos[i]: Fraction(1)}
            else:
                reduction[k] = {pos[c]: -x for c, x in ech.rows[i].items() if c != i}
        return cls((u, t), gens, [gens[i] for i in free], reduction, len(ech.rows))

    def coordinates(self, vec: GraphVector) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dim
        for k, c in vec.terms.items():
            if key_bidegree(k) != self.bidegree:
                raise NotInSpan(f"{key_to_str(k)} is not of bidegree {self.bidegree}")
            red = self.reduction.get(k)
            if red is None:
                raise NotInSpan(f"{key_to_str(k)} is not a generator")
            for j, x in red.items():
                out[j] += c * x
        return tuple(out)

    def element(self, coords) -> GraphVector:
        return GraphVector({k: c for k, c in zip(self.basis, coords)})

    def to_json(self) -> dict:
        return {
            "format": CACHE_FORMAT,
            "version": CACHE_VERSION,
            "bidegree": list(self.bidegree),
            "rank": self.rank,
            "generators": [key_to_str(k) for k in self.generators],
            "basis": [key_to_str(k) for k in self.basis],
            "reduction": [
                [[x.numerator, x.denominator] for x in self._dense(self.reduction[k])]
                for k in self.generators
            ],
        }

    def _dense(self, red: dict[int, Fraction]) -> list[Fraction]:
        row = [Fraction(0)] * self.dim
        for j, x in red.items():
            row[j] = x
        return row

    @classmethod
    def from_json(cls, data: dict) -> "QuotientBasis":
        if data.get("format") != CACHE_FORMAT or data.get("version") != CACHE_VERSION:
            raise ValueError("incompatible cache file")
        gens = [key_from_str(s) for s in data["generators"]]
        basis = [key_from_str(s) for s in data["basis"]]
        reduction = {}
        for k, row in zip(gens, data["reduction"]):
            reduction[k] = {j: Fraction(n, d) for j, (n, d) in enumerate(row) if n}
        return cls(tuple(data["bidegree"]), gens, basis, reduction, data["rank"])


_BASES: dict[tuple[int, int], QuotientBasis] = {}


def cache_path(cache_dir, u: int, t: int) -> Path:
    return Path(cache_dir) / f"basis_u{u}_t{t}.json"


def quotient_basis(u: int, t: int, cache_dir: Optional[os.PathLike] = None) -> QuotientBasis:
    """Basis of the IHX quotient in bidegree ``(u, t)``, memoized in memory
    and, when ``cache_dir`` is given, on disk."""
    if u < 0 or t < 0 or (u + t) % 2:
        raise ValueError(f"no Jacobi diagrams of bidegree ({u}, {t})")
    if u + t > MAX_VERTICES:
        raise DegreeCapExceeded(f"bidegree ({u}, {t}) exceeds {MAX_VERTICES} vertices")
    p = cache_path(cache_dir, u, t) if cache_dir is not None else None
    qb = _BASES.get((u, t))
    if qb is None and p is not None and p.exists():
        try:
            qb = QuotientBasis.from_json(json.loads(p.read_text()))
        except (ValueError, KeyError, json.JSONDecodeError):
            qb = None
    if qb is None:
        qb = QuotientBasis.compute(u, t)
    if p is not None and not p.exists():
        p.parent.mkdir(parents=True, exist_ok=True)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps(qb.to_json()))
        tmp.replace(p)
    _BASES[(u, t)] = qb
    return qb


def reduce_vector(vec: GraphVector, cache_dir=None) -> dict[tuple[int, int], tuple[Fraction, ...]]:
    """Coordinates of every bidegree component in the quotient basis."""
    return {bd: quotient_basis(*bd, cache_dir=cache_dir).coordinates(vec.component(bd))
            for bd in sorted(vec.bidegrees())}


def is_zero_mod_ihx(vec: GraphVector, cache_dir=None) -> bool:
    return all(not any(c) for c in reduce_vector(vec, cache_dir).values())


def equal_mod_ihx(a: GraphVector, b: GraphVector, cache_dir=None) -> bool:
    return is_zero_mod_ihx(a - b, cache_dir)

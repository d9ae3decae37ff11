"""Canonical forms of oriented Jacobi diagrams.

The underlying graph is canonically labeled by partition refinement with
individualization over the trivalent vertices (colour = attached leg count).
Every labeling that achieves the minimal encoding is kept; comparing the
orientation signs they induce detects diagrams with an orientation
reversing automorphism, which vanish under antisymmetry.

A key is ``(ell, t, legs, adj)`` where ``legs[i]`` is the leg count of
canonical vertex ``i`` and ``adj`` is the upper triangle of the
multiplicity matrix, row by row.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .diagram import LEG, Diagram

Key = tuple

_CACHE: dict = {}


def _refine(cells: list[list[int]], adj: list[list[int]]) -> list[list[int]]:
    while True:
        new: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            sig = {v: tuple(sum(adj[v][w] for w in cell) for cell in cells) for v in c}
            for s in sorted(set(sig.values())):
                new.append([v for v in c if sig[v] == s])
        if len(new) == len(cells):
            return new
        cells = new


def _encode(order: Sequence[int], colors: Sequence, adj: list[list[int]]) -> tuple:
    n = len(order)
    tri = tuple(adj[order[i]][order[j]] for i in range(n) for j in range(i + 1, n))
    return (tuple(colors[v] for v in order), tri)


def canonical_orders(colors: Sequence, adj: list[list[int]]) -> tuple[tuple, list[list[int]]]:
    """Minimal encoding of a vertex-coloured multigraph and every vertex
    order that realizes it (``order[i]`` is the vertex placed at position i)."""
    n = len(colors)
    if n == 0:
        return ((), ()), [[]]
    initial = [[v for v in range(n) if colors[v] == c] for c in sorted(set(colors))]
    best: list = [None, []]

    def search(cells):
        cells = _refine(cells, adj)
        for i, c in enumerate(cells):
            if len(c) > 1:
                break
        else:
            order = [c[0] for c in cells]
            enc = _encode(order, colors, adj)
            if best[0] is None or enc < best[0]:
                best[0], best[1] = enc, [order]
            elif enc == best[0]:
                best[1].append(order)
            return
        cell = cells[i]
        for v in cell:
            rest = [w for w in cell if w != v]
            search(cells[:i] + [[v], rest] + cells[i + 1:])

    search(initial)
    return best[0], best[1]


def _adjacency(d: Diagram):
    t = d.trivalent
    adj = [[0] * t for _ in range(t)]
    legs = [0] * t
    for f, g in enumerate(d.partner):
        if g == LEG:
            legs[f // 3] += 1
        else:
            adj[f // 3][g // 3] += 1
    # each edge was seen from both flags
    return legs, adj


def _slot_sign(d: Diagram, order: Sequence[int]) -> int:
    t = d.trivalent
    pos = [0] * t
    for i, v in enumerate(order):
        pos[v] = i
    slot = [0] * (3 * t)
    counter: dict = {}
    for f, g in enumerate(d.partner):
        if g == LEG:
            slot[f] = -1
        elif f < g:
            v, w = f // 3, g // 3
            pair = (v, w) if v < w else (w, v)
            k = counter.get(pair, 0)
            counter[pair] = k + 1
            slot[f] = 3 * pos[w] + k
            slot[g] = 3 * pos[v] + k
    sign = 1
    for v in range(t):
        a, b, c = slot[3 * v], slot[3 * v + 1], slot[3 * v + 2]
        # cyclic rotation of the sorted triple iff an even permutation
        inv = (a > b) + (a > c) + (b > c)
        if inv % 2:
            sign = -sign
    return sign


def canonicalize(d: Diagram) -> tuple[Optional[Key], int]:
    """Return ``(key, sign)`` with ``d = sign * canonical(key)``.

    ``key`` is None for diagrams that vanish for structural reasons (a
    self-loop, or a trivalent vertex carrying two legs); ``sign`` is 0 when
    the diagram has an orientation reversing automorphism.
    """
    hit = _CACHE.get((d.ell, d.partner))
    if hit is not None:
        return hit
    legs, adj = _adjacency(d)
    if any(l > 1 for l in legs) or any(adj[v][v] for v in range(d.trivalent)):
        res = (None, 0)
    else:
        enc, orders = canonical_orders(legs, adj)
        signs = {_slot_sign(d, o) for o in orders}
        sign = signs.pop() if len(signs) == 1 else 0
        res = ((d.ell, d.trivalent, enc[0], enc[1]), sign)
    _CACHE[(d.ell, d.partner)] = res
    return res


def key_adjacency(key: Key) -> list[list[int]]:
    _, t, _, tri = key
    adj = [[0] * t for _ in range(t)]
    it = iter(tri)
    for i in range(t):
        for j in range(i + 1, t):
            adj[i][j] = adj[j][i] = next(it)
    return adj


def diagram_from_adjacency(ell: int, legs: Sequence[int], adj: Sequence[Sequence[int]]) -> Diagram:
    """Diagram whose vertex ``i`` lists its slots in sorted order
    (leg first, then edges by neighbour and multiplicity index)."""
    t = len(legs)
    partner = [LEG] * (3 * t)
    flag_of: dict = {}
    for i in range(t):
        slots = [-1] * legs[i]
        for j in range(t):
            if j != i:
                slots.extend(3 * j + k for k in range(adj[i][j]))
        if len(slots) != 3:
            raise ValueError(f"vertex {i} has valence {len(slots)}")
        for r, s in enumerate(sorted(slots)):
            if s >= 0:
                flag_of[(i, s)] = 3 * i + r
    for (i, s), f in flag_of.items():
        j, k = divmod(s, 3)
        partner[f] = flag_of[(j, 3 * i + k)]
    return Diagram(ell, tuple(partner))


def diagram_from_key(key: Key) -> Diagram:
    return diagram_from_adjacency(key[0], key[2], key_adjacency(key))


def key_bidegree(key: Key) -> tuple[int, int]:
    return (sum(key[2]) + 2 * key[0], key[1])


def key_to_str(key: Key) -> str:
    ell, t, legs, tri = key
    return f"{ell}|{t}|{''.join(map(str, legs))}|{','.join(map(str, tri))}"


def key_from_str(s: str) -> Key:
    ell, t, legs, tri = s.split("|")
    return (int(ell), int(t), tuple(int(c) for c in legs), tuple(int(c) for c in tri.split(",")) if tri else ())


def clear_cache():
    _CACHE.clear()

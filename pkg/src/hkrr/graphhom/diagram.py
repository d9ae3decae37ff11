"""Jacobi diagrams in a compact flag encoding.

A diagram with ``t`` trivalent vertices owns flags ``0 .. 3t-1``; trivalent
vertex ``v`` owns flags ``3v, 3v+1, 3v+2`` and their cyclic order *is* the
vertex orientation. ``partner[f]`` is the flag at the other end of the edge
through ``f``, or ``LEG`` when that edge ends in a univalent vertex.
Components consisting of a single edge between two univalent vertices (the
diagram ``l``) carry no flags and are only counted.

Univalent vertices are addressed by handles: ``("f", flag)`` for a leg
hanging off a trivalent flag and ``("l", i, end)`` for an end of the
``i``-th ``l`` component.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

LEG = -1

Handle = tuple


class MalformedDiagram(ValueError):
    pass


class GlueError(ValueError):
    pass


@dataclass(frozen=True)
class Diagram:
    ell: int
    partner: tuple[int, ...]

    def __post_init__(self):
        p = self.partner
        if len(p) % 3:
            raise MalformedDiagram("flag count must be a multiple of 3")
        if self.ell < 0:
            raise MalformedDiagram("negative l-count")
        for f, g in enumerate(p):
            if g == LEG:
                continue
            if not 0 <= g < len(p) or g == f or p[g] != f:
                raise MalformedDiagram(f"flag {f} has inconsistent partner {g}")

    @property
    def trivalent(self) -> int:
        return len(self.partner) // 3

    def leg_flags(self) -> list[int]:
        return [f for f, g in enumerate(self.partner) if g == LEG]

    @property
    def legs(self) -> int:
        """Number of univalent vertices."""
        return len(self.leg_flags()) + 2 * self.ell

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.legs, self.trivalent)

    @property
    def degree(self) -> int:
        return self.legs + self.trivalent

    def univalent(self) -> list[Handle]:
        hs: list[Handle] = [("f", f) for f in self.leg_flags()]
        for i in range(self.ell):
            hs.append(("l", i, 0))
            hs.append(("l", i, 1))
        return hs

    def has_loop(self) -> bool:
        return any(g != LEG and g // 3 == f // 3 for f, g in enumerate(self.partner))

    def flip(self, v: int) -> "Diagram":
        """Reverse the cyclic order at trivalent vertex ``v``."""
        a, b = 3 * v + 1, 3 * v + 2
        pos = list(range(len(self.partner)))
        pos[a], pos[b] = b, a
        return self.relabel(pos)

    def relabel(self, pos: Sequence[int]) -> "Diagram":
        """Move old flag ``x`` to position ``pos[x]`` (a permutation)."""
        new = [LEG] * len(self.partner)
        for x, y in enumerate(self.partner):
            new[pos[x]] = LEG if y == LEG else pos[y]
        return Diagram(self.ell, tuple(new))

    def to_flags(self):
        """Explicit description: trivalent vertices as cyclic flag triples,
        univalent vertices as singleton blocks, edges as flag pairs."""
        n = len(self.partner)
        vertices = [tuple(range(3 * v, 3 * v + 3)) for v in range(self.trivalent)]
        edges = []
        nxt = n
        for f, g in enumerate(self.partner):
            if g == LEG:
                vertices.append((nxt,))
                edges.append((f, nxt))
                nxt += 1
            elif f < g:
                edges.append((f, g))
        for _ in range(self.ell):
            vertices.append((nxt,))
            vertices.append((nxt + 1,))
            edges.append((nxt, nxt + 1))
            nxt += 2
        return vertices, edges


def from_flags(vertices: Iterable[Sequence], edges: Iterable[Sequence]) -> Diagram:
    """Build a diagram from arbitrary flag labels.

    ``vertices`` are blocks of size 1 (univalent) or 3 (trivalent, listed in
    cyclic order); ``edges`` pair up all flags.
    """
    vertices = [tuple(v) for v in vertices]
    edges = [tuple(e) for e in edges]
    owner = {}
    for i, block in enumerate(vertices):
        if len(block) not in (1, 3):
            raise MalformedDiagram(f"vertex {block} is neither uni- nor trivalent")
        for f in block:
            if f in owner:
                raise MalformedDiagram(f"flag {f} belongs to two vertices")
            owner[f] = i
    mate = {}
    for e in edges:
        if len(e) != 2 or e[0] == e[1]:
            raise MalformedDiagram(f"bad edge {e}")
        for f in e:
            if f not in owner:
                raise MalformedDiagram(f"edge flag {f} belongs to no vertex")
            if f in mate:
                raise MalformedDiagram(f"flag {f} lies on two edges")
        mate[e[0]], mate[e[1]] = e[1], e[0]
    if set(mate) != set(owner):
        raise MalformedDiagram("every flag must lie on exactly one edge")

    tri = [b for b in vertices if len(b) == 3]
    pos = {}
    for v, block in enumerate(tri):
        for r, f in enumerate(block):
            pos[f] = 3 * v + r
    partner = [LEG] * (3 * len(tri))
    ell = 0
    for e in edges:
        a, b = e
        ta, tb = a in pos, b in pos
        if ta and tb:
            partner[pos[a]], partner[pos[b]] = pos[b], pos[a]
        elif not ta and not tb:
            ell += 1
    return Diagram(ell, tuple(partner))


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    off = len(d1.partner)
    p2 = tuple(LEG if g == LEG else g + off for g in d2.partner)
    return Diagram(d1.ell + d2.ell, d1.partner + p2)


def glue_pairs(d: Diagram, pairs: Iterable[tuple[Handle, Handle]]) -> Diagram:
    """Glue several pairs of univalent vertices at once.

    Each univalent vertex is removed together with its edge and the two
    attachment points are joined. Chains through ``l`` components are
    followed; a closed chain made only of ``l`` components cannot be formed.
    """
    glue: dict[Handle, Handle] = {}
    legs = set(d.univalent())
    for a, b in pairs:
        a, b = tuple(a), tuple(b)
        if a == b:
            raise GlueError("cannot glue a univalent vertex to itself")
        for h in (a, b):
            if h not in legs:
                raise GlueError(f"{h} is not a univalent vertex")
            if h in glue:
                raise GlueError(f"{h} glued twice")
        glue[a], glue[b] = b, a

    partner = list(d.partner)
    visited_ell: set[int] = set()

    def walk(h: Handle):
        # follow glueings from handle h until a trivalent flag or a free end
        while True:
            nxt = glue.get(h)
            if nxt is None:
                return None
            if nxt[0] == "f":
                return nxt[1]
            i, e = nxt[1], nxt[2]
            visited_ell.add(i)
            h = ("l", i, 1 - e)

    for f in d.leg_flags():
        h = ("f", f)
        if h not in glue:
            continue
        end = walk(h)
        partner[f] = LEG if end is None else end

    ell = 0
    for i in range(d.ell):
        if i in visited_ell:
            continue
        visited_ell.add(i)
        for start in (0, 1):
            h = ("l", i, start)
            while h in glue:
                nxt = glue[h]
                if nxt[0] == "f":  # pragma: no cover - flags were walked above
                    raise GlueError("inconsistent glueing")
                j = nxt[1]
                if j == i:
                    raise GlueError("glueing closes a chain of l components into a circle")
                visited_ell.add(j)
                h = ("l", j, 1 - nxt[2])
        ell += 1
    return Diagram(ell, tuple(partner))


def glue(d: Diagram, u: Handle, v: Handle) -> Diagram:
    """Glue the univalent vertices ``u`` and ``v`` of ``d``."""
    if u[0] == "l" and v[0] == "l" and u[1] == v[1]:
        raise GlueError("cannot glue the two univalent vertices of one l component")
    return glue_pairs(d, [(u, v)])

"""Edges and the three kinds of surface pieces: rectangles, triangles, group teeth.

All letters are referred to by their global index in the chain.  An edge
``Edge(x, y)`` is dummy when ``y`` cyclically follows ``x``; dummy edges are
never glued.  The gluing partner of ``e(x, y)`` is ``e(prev(y), next(x))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .chain import Chain

__all__ = [
    "Edge",
    "GroupEdge",
    "Rectangle",
    "Triangle",
    "GroupTooth",
    "Piece",
    "is_dummy",
    "partner",
    "enumerate_edges",
    "edge_orbits",
    "enumerate_rectangles",
    "enumerate_triangles",
    "enumerate_teeth",
    "enumerate_pieces",
    "triangle_from_letters",
    "is_valid_tooth",
    "chi",
    "degree",
    "boundary_edges",
    "group_boundary",
    "describe",
]


class Edge(NamedTuple):
    x: int
    y: int


class GroupEdge(NamedTuple):
    """Index ``(x, n, z)``: labeled side ``x`` at position ``n`` of a polygon based at ``z``."""

    x: int
    n: int
    z: int


@dataclass(frozen=True, order=True, slots=True)
class Rectangle:
    x: int
    y: int

    def __post_init__(self):
        if self.x > self.y:
            x, y = self.y, self.x
            object.__setattr__(self, "x", x)
            object.__setattr__(self, "y", y)

    kind = "rectangle"


@dataclass(frozen=True, order=True, slots=True)
class Triangle:
    """Three compatible edges in counterclockwise order, stored in least rotation."""

    e1: Edge
    e2: Edge
    e3: Edge

    def __post_init__(self):
        rots = [
            (self.e1, self.e2, self.e3),
            (self.e2, self.e3, self.e1),
            (self.e3, self.e1, self.e2),
        ]
        e1, e2, e3 = min(rots)
        object.__setattr__(self, "e1", Edge(*e1))
        object.__setattr__(self, "e2", Edge(*e2))
        object.__setattr__(self, "e3", Edge(*e3))

    @property
    def edges(self) -> tuple[Edge, Edge, Edge]:
        return (self.e1, self.e2, self.e3)

    kind = "triangle"


@dataclass(frozen=True, order=True, slots=True)
class GroupTooth:
    x: int
    y: int
    n: int
    z: int

    kind = "tooth"


Piece = Union[Rectangle, Triangle, GroupTooth]


def is_dummy(chain: Chain, e: Edge) -> bool:
    return chain.next(e[0]) == e[1]


def partner(chain: Chain, e: Edge) -> Edge:
    return Edge(chain.prev(e[1]), chain.next(e[0]))


def enumerate_edges(chain: Chain) -> list[Edge]:
    n = len(chain)
    return [Edge(x, y) for x in range(n) for y in range(n) if chain.next(x) != y]


def edge_orbits(chain: Chain) -> list[tuple[Edge, Edge]]:
    """Partner pairs ``(e, partner(e))`` with ``e < partner(e)``, sorted."""
    orbits = []
    for e in enumerate_edges(chain):
        p = partner(chain, e)
        if e < p:
            orbits.append((e, p))
    return orbits


def enumerate_rectangles(chain: Chain) -> list[Rectangle]:
    out = []
    n = len(chain)
    for x in range(n):
        if chain.order(x):
            continue
        for y in range(x + 1, n):
            if chain.is_inverse_pair(x, y):
                out.append(Rectangle(x, y))
    return out


def triangle_from_letters(chain: Chain, y1: int, y2: int, y3: int) -> Triangle:
    """The triangle whose edges end at outgoing letters ``y1, y2, y3``."""
    p = chain.prev
    return Triangle(Edge(p(y3), y1), Edge(p(y1), y2), Edge(p(y2), y3))


def enumerate_triangles(chain: Chain) -> list[Triangle]:
    # A triangle is fixed by its three outgoing letters; they must be pairwise
    # distinct, otherwise one of the edges is dummy.  Taking y1 smallest picks
    # one representative per rotation class.
    n = len(chain)
    out = []
    for y1 in range(n):
        for y2 in range(y1 + 1, n):
            for y3 in range(y1 + 1, n):
                if y3 != y2:
                    out.append(triangle_from_letters(chain, y1, y2, y3))
    out.sort()
    return out


def is_valid_tooth(chain: Chain, t: GroupTooth) -> bool:
    n_letters = len(chain)
    if not all(0 <= v < n_letters for v in (t.x, t.y, t.z)):
        return False
    f = chain.letters[t.z].factor
    o = chain.group.factors[f].order
    if o == 0 or chain.letters[t.x].factor != f or chain.letters[t.y].factor != f:
        return False
    if not 0 <= t.n < o:
        return False
    if t.n == 0 and t.x != t.z:
        return False
    if t.n == o - 1 and t.y != t.z:
        return False
    return True


def enumerate_teeth(chain: Chain) -> list[GroupTooth]:
    out = []
    for j, f in enumerate(chain.group.factors):
        if not f.is_finite:
            continue
        ls = chain.letters_by_factor[j]
        o = f.order
        for z in ls:
            for n in range(o):
                xs = (z,) if n == 0 else ls
                ys = (z,) if n == o - 1 else ls
                for x in xs:
                    for y in ys:
                        out.append(GroupTooth(x, y, n, z))
    out.sort()
    return out


def enumerate_pieces(chain: Chain) -> list[Piece]:
    """Rectangles, then triangles, then teeth, each block sorted."""
    return [*enumerate_rectangles(chain), *enumerate_triangles(chain), *enumerate_teeth(chain)]


_HALF = Fraction(1, 2)


def chi(chain: Chain, piece: Piece) -> Fraction:
    """Euler characteristic contribution of one piece."""
    if isinstance(piece, Rectangle):
        return Fraction(0)
    if isinstance(piece, Triangle):
        return -_HALF
    o = chain.order(piece.z)
    if is_dummy(chain, Edge(piece.x, piece.y)):
        return Fraction(1, o)
    return Fraction(1, o) - _HALF


def degree(chain: Chain, piece: Piece, i: int) -> int:
    """1 if the piece carries the first letter of word ``i`` (as its first side), else 0."""
    first = chain.first_letter(i)
    if isinstance(piece, Rectangle):
        return int(piece.x == first or piece.y == first)
    if isinstance(piece, GroupTooth):
        return int(piece.x == first)
    return 0


def boundary_edges(chain: Chain, piece: Piece) -> tuple[Edge, ...]:
    if isinstance(piece, Rectangle):
        return (Edge(piece.x, piece.y), Edge(piece.y, piece.x))
    if isinstance(piece, Triangle):
        return piece.edges
    e = Edge(piece.x, piece.y)
    return () if is_dummy(chain, e) else (e,)


def group_boundary(chain: Chain, piece: Piece) -> tuple[tuple[int, GroupEdge], ...]:
    """Signed group-edge indices ``+(y, n+1 mod o, z) - (x, n, z)``; empty for non-teeth."""
    if not isinstance(piece, GroupTooth):
        return ()
    o = chain.order(piece.z)
    return (
        (1, GroupEdge(piece.y, (piece.n + 1) % o, piece.z)),
        (-1, GroupEdge(piece.x, piece.n, piece.z)),
    )


def describe(chain: Chain, piece) -> str:
    """Human-readable label, e.g. ``r(a_0,0, A_0,2)``."""
    L = chain.letters
    if isinstance(piece, Rectangle):
        return f"r({L[piece.x]}, {L[piece.y]})"
    if isinstance(piece, Triangle):
        return "t(" + ", ".join(f"e({L[e.x]}, {L[e.y]})" for e in piece.edges) + ")"
    if isinstance(piece, GroupTooth):
        return f"gt({L[piece.x]}, {L[piece.y]}, {piece.n}, {L[piece.z]})"
    return repr(piece)

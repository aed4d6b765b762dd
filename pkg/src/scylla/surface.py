"""Build an explicit surface from an optimal LP vertex.

The vertex is scaled to an integral vector ``k v``.  Group teeth are glued on
their labeled sides into group polygons, then all pieces are glued along
partner edges.  Every arbitrary choice in the construction is resolved by
sorted order, so the same vertex always yields the same surface.

Each piece instance is described by its boundary read counterclockwise as a
cycle of elements ``("side", letter)`` and ``("edge", Edge)``.
"""
from __future__ import annotations

import json
import math
from collections import Counter, defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from .chain import Chain
from .pieces import Edge, GroupTooth, Rectangle, Triangle, chi, is_dummy, partner

__all__ = [
    "SurfaceError",
    "GroupPolygon",
    "SurfaceComplex",
    "ExtremalityReport",
    "integralize",
    "assemble_polygons",
    "glue",
    "extract_surface",
    "verify_extremal",
    "export",
]


class SurfaceError(RuntimeError):
    """The pieces cannot be assembled; indicates a violated LP constraint."""


@dataclass(frozen=True, order=True)
class GroupPolygon:
    """Labeled sides ``x_0 .. x_{o-1}`` in counterclockwise order, based at ``x_0``."""

    sides: tuple[int, ...]

    kind = "polygon"

    @property
    def edges(self) -> tuple[Edge, ...]:
        s = self.sides
        return tuple(Edge(s[i], s[(i + 1) % len(s)]) for i in range(len(s)))

    def teeth(self) -> list[GroupTooth]:
        s, o = self.sides, len(self.sides)
        return [GroupTooth(s[n], s[(n + 1) % o], n, s[0]) for n in range(o)]


def _elements(piece) -> list[tuple[str, object]]:
    if isinstance(piece, Rectangle):
        return [("side", piece.x), ("edge", Edge(piece.x, piece.y)),
                ("side", piece.y), ("edge", Edge(piece.y, piece.x))]
    if isinstance(piece, Triangle):
        return [("edge", e) for e in piece.edges]
    if isinstance(piece, GroupPolygon):
        out: list[tuple[str, object]] = []
        for x, e in zip(piece.sides, piece.edges):
            out += [("side", x), ("edge", e)]
        return out
    raise TypeError(f"not a surface piece: {piece!r}")


def _piece_chi(chain: Chain, piece) -> Fraction:
    if isinstance(piece, GroupPolygon):
        return sum((chi(chain, t) for t in piece.teeth()), Fraction(0))
    return chi(chain, piece)


def integralize(vertex: Mapping[int, Fraction]) -> tuple[int, dict[int, int]]:
    """Smallest ``k`` with ``k * vertex`` integral, and that integral vector."""
    k = 1
    for v in vertex.values():
        k = math.lcm(k, Fraction(v).denominator)
    return k, {j: int(Fraction(v) * k) for j, v in vertex.items() if v}


def assemble_polygons(chain: Chain, teeth: Mapping[GroupTooth, int] | Iterable[GroupTooth]
                      ) -> list[GroupPolygon]:
    """Glue a multiset of teeth (with zero group boundary) into group polygons."""
    counts = Counter(teeth) if not isinstance(teeth, Mapping) else Counter(dict(teeth))
    pools: dict[tuple[int, int, int], list[GroupTooth]] = defaultdict(list)
    for t in sorted(counts):
        if counts[t] < 0:
            raise SurfaceError(f"negative tooth multiplicity for {t}")
        pools[(t.z, t.n, t.x)].extend([t] * counts[t])
    polygons = []
    for z in sorted({t.z for t in counts if counts[t]}):
        o = chain.order(z)
        for start in list(pools.get((z, 0, z), [])):
            string = [start]
            for n in range(1, o):
                pool = pools.get((z, n, string[-1].y))
                if not pool:
                    raise SurfaceError(
                        f"no tooth at position {n} based at letter {z} continues {string[-1]}"
                    )
                string.append(pool.pop(0))
            if string[-1].y != z:
                raise SurfaceError(f"tooth string based at {z} does not close up")
            polygons.append(GroupPolygon(tuple(t.x for t in string)))
        pools[(z, 0, z)] = []
    leftover = [t for pool in pools.values() for t in pool]
    if leftover:
        raise SurfaceError(f"{len(leftover)} teeth could not be glued, e.g. {leftover[0]}")
    return polygons


@dataclass
class SurfaceComplex:
    chain: Chain
    scale: int
    instances: list
    gluings: list[tuple[tuple[int, int], tuple[int, int]]]
    boundary_cycles: list[list[int]]
    components: list[list[int]]
    closed_components: int
    interior_vertices: int
    linear_chi: Fraction | None = None
    meta: dict = field(default_factory=dict)

    @property
    def euler(self) -> int:
        """Euler characteristic of the spine: one vertex per piece, one edge per gluing."""
        return len(self.instances) - len(self.gluings)

    def boundary_letter_counts(self) -> Counter:
        return Counter(x for cyc in self.boundary_cycles for x in cyc)


def glue(chain: Chain, instances: list, scale: int = 1) -> SurfaceComplex:
    """Glue piece instances along partner edges, matching slots in sorted order."""
    elements = [_elements(p) for p in instances]
    slots: dict[Edge, list[tuple[int, int]]] = defaultdict(list)
    for p, elems in enumerate(elements):
        for s, (kind, e) in enumerate(elems):
            if kind == "edge" and not is_dummy(chain, e):
                slots[e].append((p, s))

    mate: dict[tuple[int, int], tuple[int, int]] = {}
    gluings = []
    for e in sorted(slots):
        f = partner(chain, e)
        if e > f and f in slots:
            continue
        mine, theirs = slots[e], slots.get(f, [])
        if len(mine) != len(theirs):
            raise SurfaceError(
                f"edge {e} appears {len(mine)} times but its partner {f} {len(theirs)} times"
            )
        for a, b in zip(mine, theirs):
            mate[a] = b
            mate[b] = a
            gluings.append((a, b))

    # Walk the boundary: from the end of a side, cross glued edges until the
    # next side is reached.  Triangles contribute corners but no sides.
    def follow(p: int, s: int) -> tuple[int, int, list]:
        seen = []
        elems = elements[p]
        s = (s + 1) % len(elems)
        while True:
            kind, e = elements[p][s]
            if kind == "side":
                return p, s, seen
            if is_dummy(chain, e):
                s = (s + 1) % len(elements[p])
                continue
            seen.append((p, s))
            p, s = mate[(p, s)]
            s = (s + 1) % len(elements[p])

    succ: dict[tuple[int, int], tuple[int, int]] = {}
    corner_states: set = set()
    for p, elems in enumerate(elements):
        for s, (kind, x) in enumerate(elems):
            if kind != "side":
                continue
            q, t, seen = follow(p, s)
            corner_states.update(seen)
            y = elements[q][t][1]
            if y != chain.next(x):
                raise SurfaceError(f"boundary after letter {x} continues with {y}, not {chain.next(x)}")
            succ[(p, s)] = (q, t)

    cycles = []
    done: set = set()
    for start in sorted(succ):
        if start in done:
            continue
        cyc = []
        cur = start
        while cur not in done:
            done.add(cur)
            cyc.append(elements[cur[0]][cur[1]][1])
            cur = succ[cur]
        cycles.append(cyc)

    # Glued edge slots never visited by a boundary walk circle interior vertices.
    interior = 0
    visited = set(corner_states)
    for start in sorted(mate):
        if start in visited:
            continue
        interior += 1
        cur = start
        while cur not in visited:
            visited.add(cur)
            p, s = mate[cur]
            s = (s + 1) % len(elements[p])
            while elements[p][s][0] == "edge" and is_dummy(chain, elements[p][s][1]):
                s = (s + 1) % len(elements[p])
            cur = (p, s)

    parent = list(range(len(instances)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (p, _), (q, _) in gluings:
        parent[find(p)] = find(q)
    comps: dict[int, list[int]] = defaultdict(list)
    for p in range(len(instances)):
        comps[find(p)].append(p)
    components = sorted(comps.values())

    has_side = [any(k == "side" for k, _ in elems) for elems in elements]
    closed = sum(1 for c in components if not any(has_side[p] for p in c))
    comp_of = {p: i for i, c in enumerate(components) for p in c}
    comp_glue = Counter(comp_of[a[0]] for a, _ in gluings)
    for i, c in enumerate(components):
        if any(has_side[p] for p in c) and len(c) - comp_glue[i] == 1:
            # a tree of pieces with boundary is a disk; impossible without abelian loops
            raise SurfaceError(f"disk component among pieces {c}")

    return SurfaceComplex(chain, scale, list(instances), gluings, cycles, components,
                          closed, interior)


def extract_surface(chain: Chain, lp=None, solution=None) -> SurfaceComplex:
    """Integralize an LP vertex, glue teeth into polygons, and glue everything up."""
    if chain.is_empty or lp is None or solution is None:
        return SurfaceComplex(chain, 1, [], [], [], [], 0, 0, Fraction(0))
    k, counts = integralize(solution.vertex)
    teeth: Counter = Counter()
    others = []
    lin = Fraction(0)
    for j in sorted(counts):
        piece, m = lp.columns[j], counts[j]
        lin += m * chi(chain, piece)
        if isinstance(piece, GroupTooth):
            teeth[piece] += m
        else:
            others.extend([piece] * m)
    instances = others + assemble_polygons(chain, teeth)
    surface = glue(chain, instances, k)
    surface.linear_chi = lin
    return surface


@dataclass
class ExtremalityReport:
    checks: dict[str, bool]
    details: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def lines(self) -> list[str]:
        return [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in self.checks.items()]


def verify_extremal(surface: SurfaceComplex, solution=None) -> ExtremalityReport:
    """Check that ``surface`` realizes the LP value of ``solution``.

    Checks: ``ratio`` (-chi / 2k equals the LP value), ``boundary_degree``
    (every letter occurs exactly k times on the boundary) and
    ``no_closed_component``.  Whether the surface has interior vertices is
    reported in ``details["no_branch_points"]`` but is not a pass condition.
    """
    k = surface.scale
    value = Fraction(0) if solution is None else solution.value
    ratio = Fraction(-surface.euler, 2 * k)
    counts = surface.boundary_letter_counts()
    letters = range(len(surface.chain))
    checks = {
        "ratio": ratio == value,
        "boundary_degree": all(counts[x] == k for x in letters) and sum(counts.values()) == k * len(letters),
        "no_closed_component": surface.closed_components == 0,
    }
    details = {
        "ratio": ratio,
        "value": value,
        "scale": k,
        "euler": surface.euler,
        "no_branch_points": surface.interior_vertices == 0,
    }
    return ExtremalityReport(checks, details)


def _letter(chain: Chain, x: int) -> str:
    return str(chain.letters[x])


def _piece_data(chain: Chain, piece) -> dict:
    if isinstance(piece, Rectangle):
        return {"x": _letter(chain, piece.x), "y": _letter(chain, piece.y)}
    if isinstance(piece, Triangle):
        return {"edges": [[_letter(chain, e.x), _letter(chain, e.y)] for e in piece.edges]}
    return {"sides": [_letter(chain, x) for x in piece.sides]}


def _kind(piece) -> str:
    return piece.kind


def export(surface: SurfaceComplex, format: str = "json") -> bytes:
    """Serialize as JSON (pieces, gluings, scale, Euler characteristic, boundary) or DOT."""
    chain = surface.chain
    if format == "json":
        kinds: dict = {}
        order: list = []
        instance_piece = []
        for p in surface.instances:
            if p not in kinds:
                kinds[p] = len(order)
                order.append(p)
            instance_piece.append(kinds[p])
        mult = Counter(instance_piece)
        doc = {
            "group": str(chain.group),
            "chain": str(chain),
            "scale": surface.scale,
            "euler": surface.euler,
            "pieces": [
                {"kind": _kind(p), "data": _piece_data(chain, p), "multiplicity": mult[i]}
                for i, p in enumerate(order)
            ],
            "instances": instance_piece,
            "gluings": [[list(a), list(b)] for a, b in surface.gluings],
            "boundary_cycles": [[_letter(chain, x) for x in cyc] for cyc in surface.boundary_cycles],
        }
        return (json.dumps(doc, indent=2) + "\n").encode()
    if format == "dot":
        lines = ["graph spine {"]
        for i, p in enumerate(surface.instances):
            lines.append(f'  n{i} [label="{_kind(p)}"];')
        for (p, _), (q, _) in surface.gluings:
            lines.append(f"  n{p} -- n{q};")
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown export format {format!r}; use 'json' or 'dot'")

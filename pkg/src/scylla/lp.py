"""Equality-form linear program whose optimum is scl.

One nonnegative variable per piece.  Rows come in three families:

* edge matching, one per partner orbit ``{e, partner(e)}``:
  (count of ``e``) - (count of ``partner(e)``) = 0
* group gluing, one per group-edge index touched by some tooth: ``d_G v = 0``
* degree, one per word: ``N_i(v) = 1``

The objective is ``-chi(v) / 2``, minimized.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable

from .chain import Chain
from .pieces import (
    Edge,
    Piece,
    boundary_edges,
    chi,
    degree,
    describe,
    edge_orbits,
    enumerate_pieces,
    group_boundary,
)

__all__ = ["LinearProgram", "build_lp", "lp_dims", "lp_to_text", "dimension_bounds"]


@dataclass
class LinearProgram:
    """``min cost . v`` subject to ``A v = rhs``, ``v >= 0``.

    ``matrix`` is stored by column: ``matrix[j]`` maps row index to a nonzero
    integer coefficient.
    """

    columns: list[Any]
    row_labels: list[Hashable]
    matrix: list[dict[int, int]]
    rhs: list[Fraction]
    cost: list[Fraction]
    chain: Chain | None = field(default=None, repr=False)

    @property
    def num_rows(self) -> int:
        return len(self.row_labels)

    @property
    def num_cols(self) -> int:
        return len(self.columns)

    def rows(self) -> list[dict[int, int]]:
        """Row-major view: ``rows()[r]`` maps column index to coefficient."""
        out: list[dict[int, int]] = [{} for _ in self.row_labels]
        for j, col in enumerate(self.matrix):
            for r, a in col.items():
                out[r][j] = a
        return out


def build_lp(chain: Chain, pieces: list[Piece] | None = None) -> LinearProgram:
    """Assemble the admissible-polyhedron LP for a normalized, nonempty chain."""
    if chain.is_empty:
        raise ValueError("empty chain has no LP; its scl is 0")
    if pieces is None:
        pieces = enumerate_pieces(chain)

    row_labels: list[Hashable] = []
    edge_row: dict[Edge, tuple[int, int]] = {}
    for e, p in edge_orbits(chain):
        r = len(row_labels)
        row_labels.append(("edge", e))
        edge_row[e] = (r, 1)
        edge_row[p] = (r, -1)

    group_row: dict = {}
    matrix: list[dict[int, int]] = []
    cost: list[Fraction] = []
    for piece in pieces:
        col: dict[int, int] = {}
        for e in boundary_edges(chain, piece):
            r, s = edge_row[e]
            col[r] = col.get(r, 0) + s
        for s, g in group_boundary(chain, piece):
            r = group_row.get(g)
            if r is None:
                r = group_row[g] = len(row_labels)
                row_labels.append(("group", g))
            col[r] = col.get(r, 0) + s
        matrix.append(col)
        cost.append(-chi(chain, piece) / 2)

    first_row = len(row_labels)
    for i in range(len(chain.words)):
        row_labels.append(("degree", i))
    for col, piece in zip(matrix, pieces):
        for i in range(len(chain.words)):
            if degree(chain, piece, i):
                col[first_row + i] = 1

    for col in matrix:
        for r in [r for r, a in col.items() if a == 0]:
            del col[r]

    rhs = [Fraction(0)] * first_row + [Fraction(1)] * len(chain.words)
    return LinearProgram(list(pieces), row_labels, matrix, rhs, cost, chain)


def lp_dims(lp: LinearProgram | None) -> tuple[int, int, int]:
    if lp is None:
        return (0, 0, 0)
    return (lp.num_rows, lp.num_cols, sum(len(c) for c in lp.matrix))


def dimension_bounds(chain: Chain) -> tuple[int, int]:
    """Upper bounds ``(rows, cols)`` on the LP size for this chain."""
    n = len(chain)
    s = 1 + sum(chain.group.orders)
    return n * n * s + len(chain.words), n**3 * s + n * n


def _fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _row_name(label) -> str:
    if not (isinstance(label, tuple) and len(label) == 2):
        return str(label)
    kind, data = label
    if kind == "edge":
        return f"edge_{data[0]}_{data[1]}"
    if kind == "group":
        return f"group_{data[0]}_{data[1]}_{data[2]}"
    return f"degree_{data}"


def lp_to_text(lp: LinearProgram) -> str:
    """Plain-text equality-form dump with exact rational coefficients.

    Layout::

        \\ x<j> = <piece description>
        minimize
          obj: <coef> x<j> + ...
        subject to
          <row name>: <coef> x<j> + ... = <rhs>
        bounds
          all variables >= 0
        end
    """
    lines = []
    for j, piece in enumerate(lp.columns):
        label = describe(lp.chain, piece) if lp.chain is not None else repr(piece)
        lines.append(f"\\ x{j} = {label}")

    def terms(pairs) -> str:
        parts = []
        for j, a in pairs:
            a = Fraction(a)
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            coef = "" if mag == 1 else _fmt(mag) + " "
            parts.append(f"{sign} {coef}x{j}")
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s

    lines.append("minimize")
    lines.append("  obj: " + terms((j, c) for j, c in enumerate(lp.cost) if c != 0))
    lines.append("subject to")
    for r, row in enumerate(lp.rows()):
        lines.append(f"  {_row_name(lp.row_labels[r])}: {terms(sorted(row.items()))} = {_fmt(lp.rhs[r])}")
    lines.append("bounds")
    lines.append("  all variables >= 0")
    lines.append("end")
    return "\n".join(lines) + "\n"

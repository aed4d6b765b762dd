"""Exact two-phase revised simplex over the rationals.

Solves ``min c.x  s.t.  A x = b, x >= 0`` with every pivot decision made in
exact rational arithmetic (``gmpy2.mpq``).  The basis inverse is kept as a
list of sparse rows and updated in place at each pivot.

Pivoting: Dantzig's rule (most negative reduced cost) while the objective
keeps moving; after a run of degenerate pivots the solver switches to Bland's
rule until the next strict improvement.  The objective never increases and
Bland's rule cannot cycle at a fixed objective value, so the method always
terminates.  ``pivot_rule="bland"`` uses Bland's rule throughout.

By default a floating-point solve (HiGHS) proposes a starting basis.  The
basis is re-factored in exact arithmetic and only accepted if it is primal
feasible; exact phase 2 then runs from it, so the returned optimum is decided
by exact reduced costs alone.  A rejected proposal falls back to the cold
two-phase start.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from gmpy2 import mpq

__all__ = ["Solution", "SolverError", "solve", "certify", "reduced_costs"]

log = logging.getLogger(__name__)

_ZERO = mpq(0)


class SolverError(RuntimeError):
    """Internal contract breach: unbounded LP, pivot limit, or a broken invariant."""


@dataclass
class Solution:
    status: str  # "optimal" | "infeasible"
    value: Fraction | None = None
    vertex: dict[int, Fraction] = field(default_factory=dict)
    basis: list[int] = field(default_factory=list)
    duals: list[Fraction] = field(default_factory=list)
    pivots: int = 0
    phase1_pivots: int = 0
    warm_started: bool = False

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def as_vector(self, n: int) -> list[Fraction]:
        return [self.vertex.get(j, Fraction(0)) for j in range(n)]


def _q(a) -> mpq:
    if isinstance(a, Fraction):
        return mpq(a.numerator, a.denominator)
    return mpq(a)


def _frac(a: mpq) -> Fraction:
    return Fraction(int(a.numerator), int(a.denominator))


class _Tableau:
    """Revised-simplex state.  Columns ``n..n+m-1`` are artificial unit columns."""

    def __init__(self, lp):
        self.m = m = len(lp.rhs)
        self.n = n = len(lp.matrix)
        flip = [_q(b) < 0 for b in lp.rhs]
        self.b = [-_q(b) if f else _q(b) for b, f in zip(lp.rhs, flip)]
        self.cols: list[tuple[tuple[int, mpq], ...]] = []
        for col in lp.matrix:
            entries = []
            for r, a in sorted(col.items()):
                a = _q(a)
                if a != 0:
                    entries.append((r, -a if flip[r] else a))
            self.cols.append(tuple(entries))
        for r in range(m):
            self.cols.append(((r, mpq(1)),))
        self.cost2 = [_q(c) for c in lp.cost] + [_ZERO] * m
        self.cost1 = [_ZERO] * n + [mpq(1)] * m
        self.basis = [n + r for r in range(m)]
        self.pos = [-1] * n + list(range(m))
        self.binv: list[dict[int, mpq]] = [{r: mpq(1)} for r in range(m)]
        self.x = list(self.b)
        self.pivots = 0

    # basic linear algebra ---------------------------------------------------

    def ftran(self, j: int) -> list[mpq]:
        col = self.cols[j]
        out = []
        for row in self.binv:
            s = _ZERO
            for r, a in col:
                v = row.get(r)
                if v is not None:
                    s += v * a
            out.append(s)
        return out

    def duals(self, cost: list[mpq]) -> list[mpq]:
        y = [_ZERO] * self.m
        for i, row in enumerate(self.binv):
            cb = cost[self.basis[i]]
            if cb:
                for k, v in row.items():
                    y[k] += cb * v
        return y

    def reduced_cost(self, j: int, cost: list[mpq], y: list[mpq]) -> mpq:
        d = cost[j]
        for r, a in self.cols[j]:
            d -= a * y[r]
        return d

    def pivot(self, r: int, q: int, alpha: list[mpq]) -> None:
        ar = alpha[r]
        new_r = {k: v / ar for k, v in self.binv[r].items()}
        self.binv[r] = new_r
        theta = self.x[r] / ar
        items = list(new_r.items())
        for i, ai in enumerate(alpha):
            if i == r or not ai:
                continue
            row = self.binv[i]
            for k, v in items:
                nv = row.get(k, _ZERO) - ai * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            if theta:
                self.x[i] -= theta * ai
        self.x[r] = theta
        old = self.basis[r]
        self.pos[old] = -1
        self.basis[r] = q
        self.pos[q] = r
        self.pivots += 1

    def objective(self, cost: list[mpq]) -> mpq:
        return sum((cost[self.basis[i]] * self.x[i] for i in range(self.m)), _ZERO)

    # simplex loop -------------------------------------------------------------

    def run(self, cost: list[mpq], candidates: range, rule: str, max_pivots: int,
            pin_artificials: bool, stall_limit: int = 30) -> None:
        """Pivot to optimality for ``cost`` over entering ``candidates``.

        With ``pin_artificials`` every basic artificial column must stay at zero,
        so it blocks (ratio 0) whenever the entering column touches its row.
        """
        n = self.n
        y = self.duals(cost)
        use_bland = rule == "bland"
        stall = 0
        while True:
            if self.pivots >= max_pivots:
                raise SolverError(f"pivot limit {max_pivots} reached")
            q = -1
            if use_bland:
                for j in candidates:
                    if self.pos[j] < 0 and self.reduced_cost(j, cost, y) < 0:
                        q = j
                        break
                dq = self.reduced_cost(q, cost, y) if q >= 0 else _ZERO
            else:
                dq = _ZERO
                for j in candidates:
                    if self.pos[j] < 0:
                        d = self.reduced_cost(j, cost, y)
                        if d < dq:
                            dq, q = d, j
            if q < 0:
                return
            alpha = self.ftran(q)
            r = -1
            best = None
            for i, ai in enumerate(alpha):
                if not ai:
                    continue
                if pin_artificials and self.basis[i] >= n:
                    ratio = _ZERO
                elif ai > 0:
                    ratio = self.x[i] / ai
                else:
                    continue
                if (best is None or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[r])):
                    best, r = ratio, i
            if r < 0:
                raise SolverError("LP is unbounded")
            self.pivot(r, q, alpha)
            row_r = self.binv[r]
            for k, v in row_r.items():
                y[k] += dq * v
            if best == 0:
                stall += 1
                if rule != "bland" and stall >= stall_limit:
                    use_bland = True
            else:
                stall = 0
                if rule != "bland":
                    use_bland = False


def _float_basis(lp, m: int, n: int):
    """Optimal basis from HiGHS in floating point: (basic columns, basic rows) or None."""
    try:
        import highspy
        import numpy as np
    except ImportError:  # pragma: no cover
        log.warning("highspy not available; warm start disabled")
        return None
    starts, index, value = [0], [], []
    for col in lp.matrix:
        for r, a in sorted(col.items()):
            index.append(r)
            value.append(float(a))
        starts.append(len(index))
    model = highspy.HighsLp()
    model.num_col_ = n
    model.num_row_ = m
    model.col_cost_ = np.array([float(c) for c in lp.cost])
    model.col_lower_ = np.zeros(n)
    model.col_upper_ = np.full(n, highspy.kHighsInf)
    rhs = np.array([float(b) for b in lp.rhs])
    model.row_lower_ = rhs
    model.row_upper_ = rhs
    model.a_matrix_.format_ = highspy.MatrixFormat.kColwise
    model.a_matrix_.start_ = np.array(starts, dtype=np.int32)
    model.a_matrix_.index_ = np.array(index, dtype=np.int32)
    model.a_matrix_.value_ = np.array(value)
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("solver", "simplex")
    h.setOptionValue("random_seed", 0)
    h.passModel(model)
    h.run()
    if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
        return None
    basis = h.getBasis()
    if not basis.valid:
        return None
    basic = highspy.HighsBasisStatus.kBasic
    cols = [j for j in range(n) if basis.col_status[j] == basic]
    rows = [i for i in range(m) if basis.row_status[i] == basic]
    return cols, rows


def _warm_basis(lp, tab: _Tableau) -> bool:
    """Load a floating-point optimal basis into ``tab``, exactly.

    Returns False (leaving ``tab`` unusable) if the proposed basis is singular
    or not primal feasible in exact arithmetic.
    """
    proposal = _float_basis(lp, tab.m, tab.n)
    if proposal is None:
        return False
    cols, rows = proposal
    if len(cols) + len(rows) != tab.m:
        return False
    reserved = set(rows)
    n = tab.n
    for j in cols:
        alpha = tab.ftran(j)
        r = next((i for i, ai in enumerate(alpha)
                  if ai and tab.basis[i] >= n and i not in reserved), -1)
        if r < 0:
            return False
        tab.pivot(r, j, alpha)
    # crash pivots ignore feasibility, so recompute x = B^-1 b
    x = []
    for row in tab.binv:
        s = _ZERO
        for k, v in row.items():
            s += v * tab.b[k]
        x.append(s)
    if any(v < 0 for v in x) or any(x[i] for i in range(tab.m) if tab.basis[i] >= n):
        return False
    tab.x = x
    tab.pivots = 0
    return True


def solve(lp, *, warm_start: bool = True, pivot_rule: str = "hybrid",
          max_pivots: int = 10_000_000, verbose: bool = False) -> Solution:
    """Exact optimum of ``lp`` (any object with ``matrix``, ``rhs``, ``cost``).

    Returns a Solution with status ``"optimal"`` or ``"infeasible"``; raises
    SolverError if the LP is unbounded.
    """
    if pivot_rule not in ("hybrid", "bland"):
        raise ValueError(f"unknown pivot rule {pivot_rule!r}")
    tab = _Tableau(lp)
    n, m = tab.n, tab.m
    warmed = False
    phase1 = 0
    if warm_start and n and m:
        warmed = _warm_basis(lp, tab)
        if not warmed:
            log.info("warm start rejected; starting from the artificial basis")
            tab = _Tableau(lp)
    if not warmed:
        tab.run(tab.cost1, range(n), pivot_rule, max_pivots, pin_artificials=False)
        phase1 = tab.pivots
        if tab.objective(tab.cost1) != 0:
            return Solution("infeasible", pivots=tab.pivots, phase1_pivots=phase1)
    tab.run(tab.cost2, range(n), pivot_rule, max_pivots, pin_artificials=True)

    vertex = {}
    for i, j in enumerate(tab.basis):
        if j < n and tab.x[i]:
            vertex[j] = _frac(tab.x[i])
        elif j >= n and tab.x[i]:
            raise SolverError("artificial variable left positive in phase 2")
    y = tab.duals(tab.cost2)
    # undo the row flips used to make b >= 0
    duals = []
    for r in range(m):
        v = _frac(y[r])
        duals.append(-v if _q(lp.rhs[r]) < 0 else v)
    value = _frac(tab.objective(tab.cost2))
    if verbose:
        log.info("simplex: %d rows, %d cols, %d pivots (%d in phase 1)%s",
                 m, n, tab.pivots, phase1, ", warm start" if warmed else "")
        log.info("final basis: %s", sorted(j for j in tab.basis if j < n))
    return Solution("optimal", value, vertex, list(tab.basis), duals,
                    tab.pivots, phase1, warmed)


def reduced_costs(lp, duals: Iterable[Fraction]) -> list[Fraction]:
    y = list(duals)
    out = []
    for c, col in zip(lp.cost, lp.matrix):
        d = Fraction(c)
        for r, a in col.items():
            d -= a * y[r]
        out.append(d)
    return out


def certify(lp, solution: Solution) -> bool:
    """Re-check optimality exactly: primal feasibility, dual feasibility, equal objectives."""
    if not solution.optimal or solution.value is None:
        return False
    n, m = len(lp.matrix), len(lp.rhs)
    if len(solution.duals) != m:
        return False
    x = solution.as_vector(n)
    if any(v < 0 for v in x):
        return False
    lhs = [Fraction(0)] * m
    for j, col in enumerate(lp.matrix):
        if x[j]:
            for r, a in col.items():
                lhs[r] += a * x[j]
    if any(l != Fraction(b) for l, b in zip(lhs, lp.rhs)):
        return False
    primal = sum((Fraction(c) * v for c, v in zip(lp.cost, x)), Fraction(0))
    if primal != solution.value:
        return False
    d = reduced_costs(lp, solution.duals)
    if any(v < 0 for v in d):
        return False
    basic = {j for j in solution.basis if j < n}
    if any(d[j] != 0 for j in basic) or any(x[j] and j not in basic for j in range(n)):
        return False
    dual_value = sum((Fraction(b) * y for b, y in zip(lp.rhs, solution.duals)), Fraction(0))
    return dual_value == primal

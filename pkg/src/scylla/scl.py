"""One-call pipeline: parse, build the LP, solve exactly, optionally assemble a surface."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .chain import Chain, GroupSpec, parse_chain, parse_group
from .lp import LinearProgram, build_lp
from .simplex import Solution, SolverError, solve
from .surface import SurfaceComplex, extract_surface

__all__ = ["SCLResult", "compute_scl", "format_rational"]


@dataclass
class SCLResult:
    chain: Chain
    value: Fraction
    lp: LinearProgram | None = None
    solution: Solution | None = None

    def surface(self) -> SurfaceComplex:
        return extract_surface(self.chain, self.lp, self.solution)

    def __str__(self) -> str:
        return format_rational(self.value)


def format_rational(q) -> str:
    """``"p/q"`` in lowest terms, or a bare integer."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def compute_scl(group: GroupSpec | str, words: str | Sequence[str] | Chain, *,
                warm_start: bool = True, pivot_rule: str = "hybrid") -> SCLResult:
    """Exact scl of a chain.

    >>> str(compute_scl("a3b2", "ab"))
    '1/12'
    """
    if isinstance(words, Chain):
        chain = words
    else:
        if isinstance(group, str):
            group = parse_group(group)
        chain = parse_chain(group, words)
    if chain.is_empty:
        return SCLResult(chain, Fraction(0))
    lp = build_lp(chain)
    sol = solve(lp, warm_start=warm_start, pivot_rule=pivot_rule)
    if not sol.optimal:
        # Every valid chain bounds some admissible surface.
        raise SolverError(f"LP for {chain} reported {sol.status}")
    if sol.value < 0:
        raise SolverError(f"negative optimum {sol.value} for {chain}")
    return SCLResult(chain, sol.value, lp, sol)

"""Exact stable commutator length in free products of cyclic groups.

>>> from scylla import compute_scl
>>> str(compute_scl("a0b0", "abAB"))
'1/2'
"""
from .chain import Chain, ChainError, GroupSpec, parse_chain, parse_group
from .lp import LinearProgram, build_lp
from .pieces import GroupTooth, Rectangle, Triangle, enumerate_pieces
from .scl import SCLResult, compute_scl, format_rational
from .simplex import Solution, SolverError, certify, solve
from .surface import SurfaceComplex, SurfaceError, export, extract_surface, verify_extremal

__version__ = "0.1.0"

__all__ = [
    "Chain",
    "ChainError",
    "GroupSpec",
    "GroupTooth",
    "LinearProgram",
    "Rectangle",
    "SCLResult",
    "Solution",
    "SolverError",
    "SurfaceComplex",
    "SurfaceError",
    "Triangle",
    "build_lp",
    "certify",
    "compute_scl",
    "enumerate_pieces",
    "export",
    "extract_surface",
    "format_rational",
    "parse_chain",
    "parse_group",
    "solve",
    "verify_extremal",
]

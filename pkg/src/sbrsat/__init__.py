"""CDCL SAT solver with pluggable learned-clause reduction strategies."""

from .dimacs import Instance, normalize_clause, parse_dimacs, read_dimacs, to_dimacs
from .prng import Rng
from .strategies import KINDS, StrategyConfig
from .clausedb import DbConfig
from .solver import Limits, SolveResult, Solver, Stats, solve

__all__ = [
    "DbConfig",
    "Instance",
    "KINDS",
    "Limits",
    "Rng",
    "SolveResult",
    "Solver",
    "Stats",
    "StrategyConfig",
    "normalize_clause",
    "parse_dimacs",
    "read_dimacs",
    "solve",
    "to_dimacs",
]

__version__ = "0.1.0"

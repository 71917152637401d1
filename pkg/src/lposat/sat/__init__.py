"""CNF conversion, an embedded CDCL solver and DIMACS exchange."""

from .cnf import CnfInstance, tseitin
from .dimacs import MalformedOutputError, read_dimacs, read_external_result, run_external, write_dimacs
from .solver import ResourceLimitExceeded, SatResult, Solver, solve

__all__ = [
    "CnfInstance",
    "tseitin",
    "SatResult",
    "Solver",
    "solve",
    "ResourceLimitExceeded",
    "write_dimacs",
    "read_dimacs",
    "read_external_result",
    "run_external",
    "MalformedOutputError",
]

"""LPO termination of term rewrite systems through SAT encodings of
partial-order constraints."""

from importlib import resources

from .encode import (
    Precedence,
    SymbolCoding,
    decode_atom_model,
    decode_solution,
    encode_atom_based,
    encode_eq_bits,
    encode_gt_bits,
    encode_symbol_based,
    precedence_of,
)
from .lpo import QUASI, STRICT, OrderVariant, lex_gt, lpo_check_ground, lpo_gt, term_equiv, trs_constraint
from .poc import (
    FALSE,
    TRUE,
    Atom,
    Formula,
    Rel,
    brute_force_sat,
    domain_graph,
    eq,
    evaluate,
    ge,
    gt,
    mk_and,
    mk_or,
    negate,
    scc_partition,
    solution_to_model,
)
from .prover import BatchSummary, ProveOptions, ProveReport, batch, prove, prove_text, solve_constraint
from .sat import CnfInstance, SatResult, read_external_result, solve, tseitin, write_dimacs
from .trs import App, Rule, Symbol, Term, Trs, Var, parse_term, parse_trs, term_vars

__version__ = "0.1.0"


def example_path(name: str) -> str:
    """Path of a bundled example system, e.g. ``example_path("idiv.trs")``."""
    return str(resources.files(__package__).joinpath("data", name))

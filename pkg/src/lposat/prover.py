"""End-to-end LPO termination proving: parse, unfold, encode, solve, report."""

from __future__ import annotations

import concurrent.futures
import json
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import poc
from .encode import (
    decode_atom_model,
    decode_solution,
    encode_atom_based,
    encode_symbol_based,
    precedence_of,
)
from .lpo import OrderVariant, STRICT, trs_constraint
from .poc import TRUE, Formula
from .sat import CnfInstance, ResourceLimitExceeded, run_external, solve, tseitin, write_dimacs
from .trs import Trs, UnsupportedFormatError, parse_trs

__all__ = [
    "ProveOptions",
    "ProveReport",
    "BatchRow",
    "BatchSummary",
    "ConstraintResult",
    "solve_constraint",
    "prove",
    "prove_text",
    "prove_trs",
    "batch",
]

ENCODINGS = ("symbol", "atom")


@dataclass
class ProveOptions:
    order: OrderVariant = STRICT
    encoding: str = "symbol"
    scc: bool = False
    solver: str = "internal"  # or "external:<command>"
    timeout: float | None = None
    dimacs: str | None = None

    def __post_init__(self):
        self.order = OrderVariant(self.order)
        if self.encoding not in ENCODINGS:
            raise ValueError(f"encoding must be one of {ENCODINGS}, not {self.encoding!r}")
        if self.solver != "internal" and not self.solver.startswith("external:"):
            raise ValueError("solver must be 'internal' or 'external:<command>'")


@dataclass
class ConstraintResult:
    satisfiable: bool
    solution: dict[str, int] | None
    cnf_vars: int = 0
    cnf_clauses: int = 0
    instances: list[CnfInstance] = field(default_factory=list, repr=False)
    times_ms: dict[str, float] = field(default_factory=lambda: {"encode": 0.0, "solve": 0.0})


def _run_solver(cnf: CnfInstance, opts: ProveOptions, deadline: float | None):
    remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
    if opts.solver == "internal":
        return solve(cnf, time_limit=remaining)
    return run_external(cnf, opts.solver[len("external:"):], timeout=remaining)


def _solve_one(phi: Formula, opts: ProveOptions, deadline, out: ConstraintResult):
    """Encode, convert and solve one constraint, accumulating into ``out``."""
    t0 = time.perf_counter()
    if opts.encoding == "symbol":
        enc = encode_symbol_based(phi)
    else:
        enc = encode_atom_based(phi)
    cnf = tseitin(enc.formula, enc.pool)
    t1 = time.perf_counter()
    out.instances.append(cnf)
    out.cnf_vars += cnf.num_vars
    out.cnf_clauses += cnf.num_clauses
    out.times_ms["encode"] += (t1 - t0) * 1e3
    if opts.dimacs:
        _write_instance(opts.dimacs, cnf, len(out.instances) - 1 if opts.scc else None)
    try:
        result = _run_solver(cnf, opts, deadline)
    finally:
        out.times_ms["solve"] += (time.perf_counter() - t1) * 1e3
    if not result.satisfiable:
        return None
    if opts.encoding == "symbol":
        return decode_solution(result.model, enc.coding, phi)
    return decode_atom_model(result.model, enc, phi)


def _ranks(theta: dict[str, int], break_ties: bool) -> dict[str, int]:
    """Renumber from 0 preserving order; optionally make all values distinct."""
    if break_ties:
        order = sorted(theta, key=lambda f: (theta[f], f))
        return {f: i for i, f in enumerate(order)}
    values = sorted(set(theta.values()))
    index = {v: i for i, v in enumerate(values)}
    return {f: index[v] for f, v in theta.items()}


def solve_constraint(phi: Formula, opts: ProveOptions | None = None) -> ConstraintResult:
    """Decide ``phi`` and, when satisfiable, return a solution over its symbols.

    With ``opts.scc`` the constraint is split into the restrictions to the
    strongly connected components of its domain graph, each solved on its own;
    the component solutions are stacked in topological order of the component
    graph so every atom crossing components holds.
    """
    opts = opts or ProveOptions()
    deadline = None if opts.timeout is None else time.monotonic() + opts.timeout
    out = ConstraintResult(False, None)
    # ties may only be broken when no equality atom needs them
    strict = opts.order is STRICT and all(a.rel is poc.Rel.GT for a in poc.atoms(phi))
    if not opts.scc:
        theta = _solve_one(phi, opts, deadline, out)
        if theta is not None:
            out.satisfiable = True
            out.solution = _ranks(theta, strict)
        return out

    combined: dict[str, int] = {}
    offset = 0
    # components arrive sinks first, so each one stacks above those before it
    for comp, part in poc.scc_components(phi):
        if part is TRUE:
            local = {f: 0 for f in comp}
        else:
            local = _solve_one(part, opts, deadline, out)
            if local is None:
                return out
        local = _ranks({f: local.get(f, 0) for f in comp}, strict)
        for f, x in local.items():
            combined[f] = offset + x
        offset += max(local.values(), default=-1) + 1
    if not poc.evaluate(phi, combined):
        raise AssertionError("combined component solutions violate the constraint")
    out.satisfiable = True
    out.solution = combined
    return out


@dataclass
class ProveReport:
    verdict: str
    variant: str
    encoding: str
    precedence: list[list[str]] | None
    statistics: dict
    path: str | None = None

    def __post_init__(self):
        if (self.verdict == "YES") != (self.precedence is not None):
            raise ValueError("a precedence is reported exactly for YES verdicts")

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @property
    def precedence_text(self) -> str:
        if self.precedence is None:
            return ""
        return " > ".join(" = ".join(c) for c in self.precedence)

    def to_text(self, print_model: bool = False, stats: bool = False) -> str:
        lines = []
        what = f"{self.variant}-LPO"
        if self.verdict == "YES":
            lines.append(f"YES ({what} terminating, {self.encoding}-based encoding)")
            if print_model:
                lines.append(f"precedence: {self.precedence_text or '(any)'}")
        else:
            lines.append(f"NO ({self.encoding}-based encoding)")
            lines.append(
                f"no {what} termination proof exists for this system; "
                "this does not show that the system is non-terminating"
            )
        if stats:
            s = self.statistics
            lines.append(f"symbols: {s['symbols']} (largest SCC {s['largest_scc']})")
            lines.append(f"cnf: {s['cnf_vars']} vars / {s['cnf_clauses']} clauses")
            t = s["times_ms"]
            lines.append("time (ms): " + ", ".join(f"{k} {v:.1f}" for k, v in t.items()))
        return "\n".join(lines)


def _write_instance(path: str, cnf: CnfInstance, index: int | None):
    p = Path(path)
    if index is not None:
        p = p.with_name(f"{p.stem}.{index}{p.suffix}")
    p.write_text(write_dimacs(cnf))


def prove_trs(trs: Trs, opts: ProveOptions | None = None, times: dict | None = None) -> ProveReport:
    opts = opts or ProveOptions()
    times = dict(times or {})
    t0 = time.perf_counter()
    phi = trs_constraint(trs, opts.order)
    t1 = time.perf_counter()
    times["unfold"] = (t1 - t0) * 1e3

    graph = poc.domain_graph(phi)
    sccs = graph.sccs()
    result = solve_constraint(phi, opts)
    times.update(result.times_ms)

    stats = {
        "symbols": len(graph.vertices),
        "largest_scc": max((len(c) for c in sccs), default=0),
        "cnf_vars": result.cnf_vars,
        "cnf_clauses": result.cnf_clauses,
        "times_ms": times,
    }
    prec = precedence_of(result.solution).as_lists() if result.satisfiable else None
    return ProveReport(
        "YES" if result.satisfiable else "NO",
        opts.order.value,
        opts.encoding,
        prec,
        stats,
    )


def prove_text(text: str, opts: ProveOptions | None = None) -> ProveReport:
    t0 = time.perf_counter()
    trs = parse_trs(text)
    return prove_trs(trs, opts, {"parse": (time.perf_counter() - t0) * 1e3})


def prove(path: str | os.PathLike, opts: ProveOptions | None = None) -> ProveReport:
    report = prove_text(Path(path).read_text(), opts)
    report.path = str(path)
    return report


# --------------------------------------------------------------------------
# Batch mode


@dataclass
class BatchRow:
    path: str
    status: str  # YES, NO, SKIPPED or ERROR
    seconds: float
    detail: str = ""


@dataclass
class BatchSummary:
    file_count: int
    yes_count: int
    no_count: int
    skipped_count: int
    error_count: int
    total_time: float
    average_time: float
    max_time: float
    rows: list[BatchRow] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def to_text(self) -> str:
        width = max((len(r.path) for r in self.rows), default=4)
        lines = [f"{r.path:<{width}}  {r.status:<7}  {r.seconds:8.3f}  {r.detail}".rstrip()
                 for r in self.rows]
        lines.append(
            f"files {self.file_count}: YES {self.yes_count}, NO {self.no_count}, "
            f"skipped {self.skipped_count}, errors {self.error_count}"
        )
        lines.append(
            f"time (s): total {self.total_time:.3f}, average {self.average_time:.3f}, "
            f"max {self.max_time:.3f}"
        )
        return "\n".join(lines)


def _batch_one(path: str, opts: ProveOptions) -> BatchRow:
    t0 = time.perf_counter()
    try:
        report = prove(path, opts)
    except UnsupportedFormatError as exc:
        return BatchRow(path, "SKIPPED", time.perf_counter() - t0, str(exc))
    except (ValueError, ResourceLimitExceeded, OSError) as exc:
        return BatchRow(path, "ERROR", time.perf_counter() - t0, f"{type(exc).__name__}: {exc}")
    detail = report.precedence_text if report.verdict == "YES" else ""
    return BatchRow(path, report.verdict, time.perf_counter() - t0, detail)


def batch(directory: str | os.PathLike, opts: ProveOptions | None = None, jobs: int = 1) -> BatchSummary:
    """Prove every ``.trs`` file below ``directory``; rows are sorted by path.

    Skipped files (THEORY/STRATEGY sections) and errors are counted apart and
    excluded from the timing totals.
    """
    opts = opts or ProveOptions()
    root = Path(directory)
    if not root.is_dir():
        raise NotADirectoryError(f"not a readable directory: {directory}")
    paths = sorted(str(p) for p in root.rglob("*.trs"))
    if jobs > 1 and len(paths) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_batch_one, paths, [opts] * len(paths)))
    else:
        rows = [_batch_one(p, opts) for p in paths]
    counted = [r for r in rows if r.status in ("YES", "NO")]
    total = sum(r.seconds for r in counted)
    return BatchSummary(
        file_count=len(counted),
        yes_count=sum(r.status == "YES" for r in counted),
        no_count=sum(r.status == "NO" for r in counted),
        skipped_count=sum(r.status == "SKIPPED" for r in rows),
        error_count=sum(r.status == "ERROR" for r in rows),
        total_time=total,
        average_time=total / len(counted) if counted else 0.0,
        max_time=max((r.seconds for r in counted), default=0.0),
        rows=rows,
    )

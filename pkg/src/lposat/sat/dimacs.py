"""DIMACS CNF text and external SAT solver output."""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile

from .cnf import CnfInstance
from .solver import ResourceLimitExceeded, SatResult

__all__ = [
    "write_dimacs",
    "read_dimacs",
    "read_external_result",
    "run_external",
    "MalformedOutputError",
]


class MalformedOutputError(ValueError):
    pass


def write_dimacs(cnf: CnfInstance) -> str:
    """``c`` lines for the provenance map, the ``p cnf`` header, then one clause per line."""
    lines = [f"c var {v} {label}" for v, label in sorted(cnf.provenance.items())]
    lines.append(f"p cnf {cnf.num_vars} {len(cnf.clauses)}")
    lines.extend(" ".join(map(str, c + (0,))) for c in cnf.clauses)
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> CnfInstance:
    num_vars = None
    expected = None
    provenance: dict[int, str] = {}
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("c"):
            parts = line.split(None, 3)
            if len(parts) == 4 and parts[1] == "var" and parts[2].isdigit():
                provenance[int(parts[2])] = parts[3]
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: bad problem line {line!r}")
            num_vars, expected = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            raise ValueError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if num_vars is None:
        raise ValueError("missing problem line")
    if expected != len(clauses):
        raise ValueError(f"header announces {expected} clauses, found {len(clauses)}")
    return CnfInstance(num_vars, clauses, provenance)


def _model_from_literals(tokens: list[str], num_vars: int | None) -> dict[int, bool]:
    model: dict[int, bool] = {}
    for tok in tokens:
        try:
            lit = int(tok)
        except ValueError:
            raise MalformedOutputError(f"not a literal: {tok!r}") from None
        if lit != 0:
            model[abs(lit)] = lit > 0
    if num_vars is not None:
        for v in range(1, num_vars + 1):
            model.setdefault(v, False)
    return model


def read_external_result(text: str, num_vars: int | None = None) -> SatResult:
    """Parse solver output in either common convention.

    SAT competition style: ``s SATISFIABLE`` / ``s UNSATISFIABLE`` with the
    model on ``v`` lines.  MiniSat result-file style: ``SAT`` or ``UNSAT`` on
    the first line and the model on the next.  Unmentioned variables are
    false when ``num_vars`` is given.
    """
    lines = [l.strip() for l in text.splitlines() if l.strip()]
    status = [l for l in lines if l.startswith("s ")]
    if status:
        verdict = status[0][2:].strip()
        if verdict == "UNSATISFIABLE":
            return SatResult(False)
        if verdict == "SATISFIABLE":
            toks = [t for l in lines if l.startswith("v ") for t in l[2:].split()]
            return SatResult(True, _model_from_literals(toks, num_vars))
        if verdict in ("UNKNOWN", "INDETERMINATE"):
            raise ResourceLimitExceeded("external solver gave up")
        raise MalformedOutputError(f"unknown status {verdict!r}")
    body = [l for l in lines if not l.startswith("c ")]
    if not body:
        raise MalformedOutputError("empty solver output")
    head = body[0].upper()
    if head in ("UNSAT", "UNSATISFIABLE"):
        return SatResult(False)
    if head in ("SAT", "SATISFIABLE"):
        toks = [t for l in body[1:] for t in l.split()]
        return SatResult(True, _model_from_literals(toks, num_vars))
    if head in ("INDET", "UNKNOWN"):
        raise ResourceLimitExceeded("external solver gave up")
    raise MalformedOutputError(f"unrecognised solver output starting {body[0]!r}")


def run_external(cnf: CnfInstance, command: str, timeout: float | None = None) -> SatResult:
    """Run a solver as a child process on a temporary DIMACS file.

    ``command`` may use ``{input}`` and ``{output}`` placeholders; without
    ``{input}`` the DIMACS path is appended as the last argument.  With
    ``{output}`` the result is read from that file, otherwise from stdout.
    The model is checked against the clauses before it is returned.
    """
    with tempfile.TemporaryDirectory(prefix="lposat-") as tmp:
        src = os.path.join(tmp, "instance.cnf")
        out = os.path.join(tmp, "result.txt")
        with open(src, "w") as fh:
            fh.write(write_dimacs(cnf))
        argv = shlex.split(command)
        uses_output = any("{output}" in a for a in argv)
        if not any("{input}" in a for a in argv):
            argv.append(src)
        argv = [a.replace("{input}", src).replace("{output}", out) for a in argv]
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=timeout)
        except subprocess.TimeoutExpired:
            raise ResourceLimitExceeded(f"external solver exceeded {timeout}s") from None
        if uses_output and os.path.exists(out):
            with open(out) as fh:
                text = fh.read()
        else:
            text = proc.stdout
        if not text.strip():
            raise MalformedOutputError(
                f"no output from {argv[0]} (exit {proc.returncode}): {proc.stderr.strip()[:200]}"
            )
    result = read_external_result(text, cnf.num_vars)
    if result.satisfiable and not cnf.satisfied_by(result.model):
        raise MalformedOutputError("external model violates the instance")
    return result

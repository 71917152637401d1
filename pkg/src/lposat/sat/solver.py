"""A conflict-driven clause-learning SAT solver.

Two watched literals per clause, first-UIP learning with non-chronological
backjumping, activity-ordered decisions (VSIDS style) with phase saving, Luby
restarts and periodic reduction of the learnt-clause database.

Internally literal ``2*v`` stands for variable v and ``2*v + 1`` for its
negation, so ``lit ^ 1`` negates.
"""

from __future__ import annotations

import heapq
import random
import time
from dataclasses import dataclass, field

from .cnf import CnfInstance

__all__ = ["SatResult", "ResourceLimitExceeded", "Solver", "solve"]


class ResourceLimitExceeded(RuntimeError):
    """The conflict or time budget ran out before a verdict was reached."""


@dataclass
class SatResult:
    satisfiable: bool
    model: dict[int, bool] | None = None
    stats: dict[str, int] = field(default_factory=dict)

    def __bool__(self):
        return self.satisfiable

    def __repr__(self):
        if not self.satisfiable:
            return "SatResult(UNSAT)"
        return f"SatResult(SAT, {len(self.model)} vars)"


def _luby(i: int) -> int:
    """i-th element (from 1) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1


class Solver:
    restart_base = 100
    var_decay = 0.95
    clause_decay = 0.999

    def __init__(self, cnf: CnfInstance, seed: int = 0):
        self.cnf = cnf
        n = cnf.num_vars
        self.n = n
        self.value: list = [None] * (2 * n + 2)  # per literal: True/False/None
        self.level = [0] * (n + 1)
        self.reason: list = [None] * (n + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.watches: list[list[list[int]]] = [[] for _ in range(2 * n + 2)]
        self.clauses: list[list[int]] = []
        self.learnts: list[list[int]] = []
        self.clause_act: dict[int, float] = {}
        self.cla_inc = 1.0
        self.activity = [0.0] * (n + 1)
        self.var_inc = 1.0
        self.phase = [True] * (n + 1)  # saved phase, True means negative literal
        self.seen = [False] * (n + 1)
        self.ok = True
        self.stats = {"decisions": 0, "propagations": 0, "conflicts": 0, "restarts": 0, "learnts": 0}
        rng = random.Random(seed)
        if seed:
            for v in range(1, n + 1):
                self.activity[v] = rng.random() * 1e-5
        self.heap = [(-self.activity[v], v) for v in range(1, n + 1)]
        heapq.heapify(self.heap)

        for clause in cnf.clauses:
            if not self._add_clause(clause):
                self.ok = False
                break

    # ----------------------------------------------------------------- setup

    def _add_clause(self, clause) -> bool:
        lits = set()
        for l in clause:
            il = 2 * l if l > 0 else -2 * l + 1
            if il ^ 1 in lits:
                return True  # tautology
            lits.add(il)
        lits = [l for l in lits if self.value[l] is not False]
        if any(self.value[l] is True for l in lits):
            return True
        if not lits:
            return False
        if len(lits) == 1:
            self._assign(lits[0], None)
            return self._propagate() is None
        lits.sort()
        self._attach(lits)
        self.clauses.append(lits)
        return True

    def _attach(self, c: list[int]):
        self.watches[c[0]].append(c)
        self.watches[c[1]].append(c)

    # ------------------------------------------------------------- assignment

    def _assign(self, lit: int, reason):
        v = lit >> 1
        self.value[lit] = True
        self.value[lit ^ 1] = False
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self):
        """Unit propagation; returns a conflicting clause or None."""
        value = self.value
        watches = self.watches
        trail = self.trail
        props = 0
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            props += 1
            i = j = 0
            end = len(ws)
            while i < end:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                if value[first] is True:
                    ws[j] = c
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    if value[lk] is not False:
                        c[1] = lk
                        c[k] = false_lit
                        watches[lk].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if value[first] is False:
                        while i < end:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self.qhead = len(trail)
                        self.stats["propagations"] += props
                        return c
                    self._assign(first, c)
            del ws[j:]
        self.stats["propagations"] += props
        return None

    # ------------------------------------------------------------- learning

    def _bump_var(self, v: int):
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.n + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.n + 1)
                         if self.value[2 * u] is None]
            heapq.heapify(self.heap)
        elif self.value[2 * v] is None:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _bump_clause(self, c: list[int]):
        key = id(c)
        if key in self.clause_act:
            self.clause_act[key] += self.cla_inc
            if self.clause_act[key] > 1e20:
                for k in self.clause_act:
                    self.clause_act[k] *= 1e-20
                self.cla_inc *= 1e-20

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        seen = self.seen
        level = self.level
        cur = len(self.trail_lim)
        learnt = [0]  # slot for the asserting literal
        pending = 0
        p = None
        idx = len(self.trail) - 1
        to_clear = []
        while True:
            self._bump_clause(confl)
            for q in confl:
                if q == p:
                    continue
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    to_clear.append(v)
                    self._bump_var(v)
                    if level[v] >= cur:
                        pending += 1
                    else:
                        learnt.append(q)
            while not seen[self.trail[idx] >> 1]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            confl = self.reason[p >> 1]
            pending -= 1
            if pending <= 0:
                break
        learnt[0] = p ^ 1

        # drop literals implied by the rest of the clause (local minimization)
        keep = [learnt[0]]
        for q in learnt[1:]:
            r = self.reason[q >> 1]
            if r is None or not all(seen[x >> 1] or level[x >> 1] == 0 for x in r if x != q ^ 1):
                keep.append(q)
        learnt = keep
        for v in to_clear:
            seen[v] = False

        if len(learnt) == 1:
            back = 0
        else:
            best = max(range(1, len(learnt)), key=lambda i: level[learnt[i] >> 1])
            learnt[1], learnt[best] = learnt[best], learnt[1]
            back = level[learnt[1] >> 1]
        return learnt, back

    def _cancel_until(self, lvl: int):
        if len(self.trail_lim) <= lvl:
            return
        value = self.value
        start = self.trail_lim[lvl]
        for lit in self.trail[start:]:
            v = lit >> 1
            value[lit] = None
            value[lit ^ 1] = None
            self.reason[v] = None
            self.phase[v] = bool(lit & 1)
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = len(self.trail)

    def _pick(self) -> int | None:
        heap = self.heap
        value = self.value
        while heap:
            _, v = heapq.heappop(heap)
            if value[2 * v] is None:
                return 2 * v + (1 if self.phase[v] else 0)
        return None

    def _reduce_db(self):
        locked = {id(self.reason[l >> 1]) for l in self.trail if self.reason[l >> 1] is not None}
        ranked = sorted(self.learnts, key=lambda c: self.clause_act.get(id(c), 0.0))
        drop = set()
        for c in ranked[: len(ranked) // 2]:
            if len(c) > 2 and id(c) not in locked:
                drop.add(id(c))
        if not drop:
            return
        self.learnts = [c for c in self.learnts if id(c) not in drop]
        for k in drop:
            del self.clause_act[k]
        for ws in self.watches:
            if ws:
                ws[:] = [c for c in ws if id(c) not in drop]

    # ----------------------------------------------------------------- search

    def solve(self, conflict_limit: int | None = None, time_limit: float | None = None) -> SatResult:
        if not self.ok:
            return SatResult(False, stats=dict(self.stats))
        if self._propagate() is not None:
            self.ok = False
            return SatResult(False, stats=dict(self.stats))
        deadline = None if time_limit is None else time.monotonic() + time_limit
        max_learnts = max(1000, len(self.clauses) // 3)
        restart = 1
        budget = _luby(restart) * self.restart_base
        stats = self.stats
        while True:
            confl = self._propagate()
            if confl is not None:
                stats["conflicts"] += 1
                if not self.trail_lim:
                    self.ok = False
                    return SatResult(False, stats=dict(stats))
                learnt, back = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self._assign(learnt[0], None)
                else:
                    self._attach(learnt)
                    self.learnts.append(learnt)
                    self.clause_act[id(learnt)] = self.cla_inc
                    stats["learnts"] += 1
                    self._assign(learnt[0], learnt)
                self.var_inc /= self.var_decay
                self.cla_inc /= self.clause_decay
                budget -= 1
                if conflict_limit is not None and stats["conflicts"] >= conflict_limit:
                    raise ResourceLimitExceeded(f"conflict limit {conflict_limit} reached")
                if deadline is not None and stats["conflicts"] % 64 == 0 and time.monotonic() > deadline:
                    raise ResourceLimitExceeded(f"time limit {time_limit}s reached")
                continue
            if budget <= 0:
                stats["restarts"] += 1
                restart += 1
                budget = _luby(restart) * self.restart_base
                self._cancel_until(0)
                if deadline is not None and time.monotonic() > deadline:
                    raise ResourceLimitExceeded(f"time limit {time_limit}s reached")
            if len(self.learnts) - len(self.trail) >= max_learnts:
                self._reduce_db()
                max_learnts = int(max_learnts * 1.1)
            lit = self._pick()
            if lit is None:
                model = {v: self.value[2 * v] is True for v in range(1, self.n + 1)}
                if not self.cnf.satisfied_by(model):
                    raise AssertionError("solver produced a model violating the input clauses")
                return SatResult(True, model, dict(stats))
            stats["decisions"] += 1
            self.trail_lim.append(len(self.trail))
            self._assign(lit, None)


def solve(
    cnf: CnfInstance,
    conflict_limit: int | None = None,
    time_limit: float | None = None,
    seed: int = 0,
) -> SatResult:
    """Decide ``cnf``.  Every returned model has been checked against all clauses.

    Raises :class:`ResourceLimitExceeded` when a budget runs out.
    """
    return Solver(cnf, seed=seed).solve(conflict_limit=conflict_limit, time_limit=time_limit)

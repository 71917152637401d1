"""Unfolding the lexicographic path ordering into partial-order constraints.

``lpo_gt(s, t, v)`` is the constraint on the symbol precedence under which
``s >lpo t`` holds.  Under ``STRICT`` the precedence is a strict order and the
"equivalent terms" test is syntactic identity; under ``QUASI`` symbols may be
equated and terms are equivalent up to equated head symbols.
"""

from __future__ import annotations

import enum
from typing import Mapping, Sequence

from .poc import FALSE, TRUE, Formula, eq, gt, mk_and, mk_or
from .trs import App, Term, Trs, Var

__all__ = [
    "OrderVariant",
    "STRICT",
    "QUASI",
    "Unfolder",
    "lpo_gt",
    "term_equiv",
    "lex_gt",
    "trs_constraint",
    "lpo_check_ground",
]


class OrderVariant(enum.Enum):
    STRICT = "strict"
    QUASI = "quasi"

    def __str__(self):
        return self.value


STRICT = OrderVariant.STRICT
QUASI = OrderVariant.QUASI


class Unfolder:
    """One unfolding session; results are memoized on (s, t) term pairs.

    Terms are interned, so the memo keys are identity-hashed and a shared
    sub-problem yields the very same formula node for every parent.
    """

    def __init__(self, variant: OrderVariant = STRICT):
        self.variant = OrderVariant(variant)
        self._gt: dict[tuple[Term, Term], Formula] = {}
        self._equiv: dict[tuple[Term, Term], Formula] = {}

    def head_equal(self, s: App, t: App) -> Formula:
        if self.variant is STRICT:
            return TRUE if s.symbol == t.symbol else FALSE
        return eq(s.name, t.name)

    def equiv(self, s: Term, t: Term) -> Formula:
        if s is t:
            return TRUE
        if self.variant is STRICT:
            return FALSE
        if isinstance(s, Var) or isinstance(t, Var):
            return FALSE
        if len(s.args) != len(t.args):
            return FALSE
        key = (s, t)
        out = self._equiv.get(key)
        if out is None:
            parts = [eq(s.name, t.name)]
            for a, b in zip(s.args, t.args):
                parts.append(self.equiv(a, b))
                if parts[-1] is FALSE:
                    break
            out = self._equiv[key] = mk_and(parts)
        return out

    def gt(self, s: Term, t: Term) -> Formula:
        if isinstance(s, Var):
            return FALSE
        key = (s, t)
        out = self._gt.get(key)
        if out is None:
            out = self._gt[key] = self._unfold(s, t)
        return out

    def _unfold(self, s: App, t: Term) -> Formula:
        # some argument of s is equivalent to or greater than t
        case2 = mk_or(mk_or([self.equiv(si, t), self.gt(si, t)]) for si in s.args)
        if case2 is TRUE or isinstance(t, Var):
            return case2
        same = self.head_equal(s, t)
        lexed = FALSE if same is FALSE else mk_and([same, self.lex(s.args, t.args)])
        heads = mk_or([gt(s.name, t.name), lexed])
        if heads is FALSE:
            return case2
        case1 = mk_and([heads] + [self.gt(s, tj) for tj in t.args])
        return mk_or([case1, case2])

    def lex(self, ss: Sequence[Term], ts: Sequence[Term]) -> Formula:
        # right fold from the end of the shorter tuple
        n = min(len(ss), len(ts))
        out = TRUE if len(ss) > len(ts) else FALSE
        for i in range(n - 1, -1, -1):
            out = mk_or([
                self.gt(ss[i], ts[i]),
                mk_and([self.equiv(ss[i], ts[i]), out]),
            ])
        return out

    def rules(self, trs: Trs) -> Formula:
        return mk_and(self.gt(r.lhs, r.rhs) for r in trs.rules)


def lpo_gt(s: Term, t: Term, variant: OrderVariant = STRICT) -> Formula:
    return Unfolder(variant).gt(s, t)


def term_equiv(s: Term, t: Term, variant: OrderVariant = STRICT) -> Formula:
    return Unfolder(variant).equiv(s, t)


def lex_gt(ss: Sequence[Term], ts: Sequence[Term], variant: OrderVariant = STRICT) -> Formula:
    return Unfolder(variant).lex(list(ss), list(ts))


def trs_constraint(trs: Trs, variant: OrderVariant = STRICT) -> Formula:
    """Conjunction of ``lhs >lpo rhs`` over all rules, in rule order."""
    return Unfolder(variant).rules(trs)


# --------------------------------------------------------------------------
# Direct decision procedure for a fixed precedence, used as a test oracle.


def lpo_check_ground(
    s: Term, t: Term, prec: Mapping[str, int], variant: OrderVariant = STRICT
) -> bool:
    """Decide ``s >lpo t`` under the precedence ``f > g iff prec[f] > prec[g]``.

    Under ``STRICT`` heads are equal only when they are the same symbol; under
    ``QUASI`` whenever their precedence values coincide.
    """
    variant = OrderVariant(variant)
    quasi = variant is QUASI

    def same_head(f: App, g: App) -> bool:
        if quasi:
            return prec[f.name] == prec[g.name]
        return f.symbol == g.symbol

    def equiv(a: Term, b: Term) -> bool:
        if not quasi or isinstance(a, Var) or isinstance(b, Var):
            return a == b
        return (
            len(a.args) == len(b.args)
            and prec[a.name] == prec[b.name]
            and all(equiv(x, y) for x, y in zip(a.args, b.args))
        )

    def lex(ss, ts) -> bool:
        for a, b in zip(ss, ts):
            if greater(a, b):
                return True
            if not equiv(a, b):
                return False
        return len(ss) > len(ts)

    def greater(a: Term, b: Term) -> bool:
        if isinstance(a, Var):
            return False
        if any(equiv(ai, b) or greater(ai, b) for ai in a.args):
            return True
        if isinstance(b, Var):
            return False
        if not all(greater(a, bj) for bj in b.args):
            return False
        if prec[a.name] > prec[b.name]:
            return True
        return same_head(a, b) and lex(a.args, b.args)

    return greater(s, t)

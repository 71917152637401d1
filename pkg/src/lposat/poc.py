"""Partial-order constraints: negation-free formulas over (f>g) and (f=g).

Formulas are hash-consed DAGs.  The smart constructors :func:`mk_and` and
:func:`mk_or` never build a node with a constant child, so a formula is either
``TRUE``, ``FALSE`` or free of constants altogether.
"""

from __future__ import annotations

import enum
import functools
import itertools
import threading
import weakref
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "Rel",
    "Formula",
    "Atom",
    "And",
    "Or",
    "TRUE",
    "FALSE",
    "gt",
    "eq",
    "ge",
    "mk_and",
    "mk_or",
    "negate",
    "atoms",
    "symbols",
    "nodes",
    "evaluate",
    "brute_force_sat",
    "TooManySymbolsError",
    "solution_to_model",
    "model_to_solution",
    "DomainGraph",
    "domain_graph",
    "strongly_connected_components",
    "restrict",
    "scc_components",
    "scc_partition",
    "format_formula",
]


class Rel(enum.Enum):
    GT = ">"
    EQ = "="

    def __str__(self):
        return self.value


_lock = threading.Lock()
_table: "weakref.WeakValueDictionary[tuple, Formula]" = weakref.WeakValueDictionary()


def _intern(cls, key, **attrs):
    node = _table.get(key)
    if node is not None:
        return node
    with _lock:
        node = _table.get(key)
        if node is None:
            node = object.__new__(cls)
            for name, value in attrs.items():
                object.__setattr__(node, name, value)
            _table[key] = node
    return node


class Formula:
    """Base of all constraint nodes.  Instances are unique per structure."""

    __slots__ = ("__weakref__",)

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    def __str__(self):
        return format_formula(self)

    def __and__(self, other: "Formula") -> "Formula":
        return mk_and([self, other])

    def __or__(self, other: "Formula") -> "Formula":
        return mk_or([self, other])

    def __invert__(self) -> "Formula":
        return negate(self)


class _Const(Formula):
    __slots__ = ("value",)

    def __repr__(self):
        return "TRUE" if self.value else "FALSE"

    def __reduce__(self):
        return (_const, (self.value,))


def _const(value: bool) -> "_Const":
    return TRUE if value else FALSE


TRUE = _intern(_Const, ("const", True), value=True)
FALSE = _intern(_Const, ("const", False), value=False)


class Atom(Formula):
    """``(lhs > rhs)`` or ``(lhs = rhs)``; equalities keep ``lhs < rhs``."""

    __slots__ = ("lhs", "rel", "rhs")

    def __new__(cls, lhs: str, rel: Rel, rhs: str):
        if lhs == rhs:
            raise ValueError(f"reflexive atom on {lhs!r}; use gt()/eq()")
        if rel is Rel.EQ and rhs < lhs:
            lhs, rhs = rhs, lhs
        return _intern(cls, ("atom", lhs, rel, rhs), lhs=lhs, rel=rel, rhs=rhs)

    def __repr__(self):
        return f"Atom({self.lhs!r}, {self.rel.name}, {self.rhs!r})"

    def __reduce__(self):
        return (Atom, (self.lhs, self.rel, self.rhs))


class _Connective(Formula):
    __slots__ = ("parts",)
    _tag = ""

    def __new__(cls, parts: Sequence[Formula]):
        parts = tuple(parts)
        return _intern(cls, (cls._tag, parts), parts=parts)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.parts)!r})"

    def __reduce__(self):
        return (type(self), (self.parts,))


class And(_Connective):
    __slots__ = ()
    _tag = "and"


class Or(_Connective):
    __slots__ = ()
    _tag = "or"


def gt(f: str, g: str) -> Formula:
    """The atom (f>g); ``gt(f, f)`` is ``FALSE``."""
    return FALSE if f == g else Atom(f, Rel.GT, g)


def eq(f: str, g: str) -> Formula:
    """The atom (f=g); ``eq(f, f)`` is ``TRUE``."""
    return TRUE if f == g else Atom(f, Rel.EQ, g)


def ge(f: str, g: str) -> Formula:
    return mk_or([gt(f, g), eq(f, g)])


def _connect(cls, unit: Formula, zero: Formula, parts: Iterable[Formula]) -> Formula:
    out: list[Formula] = []
    seen: set[int] = set()
    for p in parts:
        if p is zero:
            return zero
        if p is unit:
            continue
        children = p.parts if type(p) is cls else (p,)
        for c in children:
            if id(c) not in seen:
                seen.add(id(c))
                out.append(c)
    if not out:
        return unit
    if len(out) == 1:
        return out[0]
    return cls(out)


def mk_and(parts: Iterable[Formula]) -> Formula:
    return _connect(And, TRUE, FALSE, parts)


def mk_or(parts: Iterable[Formula]) -> Formula:
    return _connect(Or, FALSE, TRUE, parts)


def nodes(phi: Formula) -> list[Formula]:
    """Distinct DAG nodes of ``phi`` in post-order (children first)."""
    order: list[Formula] = []
    done: set[int] = set()
    stack: list[tuple[Formula, bool]] = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in done:
            continue
        if expanded or not isinstance(node, _Connective):
            done.add(id(node))
            order.append(node)
            continue
        stack.append((node, True))
        for c in reversed(node.parts):
            if id(c) not in done:
                stack.append((c, False))
    return order


def _rebuild(phi: Formula, leaf) -> Formula:
    """Rebuild ``phi`` bottom-up, mapping each atom through ``leaf``."""
    memo: dict[int, Formula] = {}
    for node in nodes(phi):
        if isinstance(node, Atom):
            memo[id(node)] = leaf(node)
        elif isinstance(node, And):
            memo[id(node)] = mk_and(memo[id(c)] for c in node.parts)
        elif isinstance(node, Or):
            memo[id(node)] = mk_or(memo[id(c)] for c in node.parts)
        else:
            memo[id(node)] = node
    return memo[id(phi)]


def _negate_atom(a: Atom) -> Formula:
    f, g = a.lhs, a.rhs
    if a.rel is Rel.GT:
        return mk_or([gt(g, f), eq(g, f)])
    return mk_or([gt(f, g), gt(g, f)])


def negate(phi: Formula) -> Formula:
    """Negation-free formula equivalent to ``not phi`` over total orders."""
    memo: dict[int, Formula] = {}
    for node in nodes(phi):
        if isinstance(node, Atom):
            memo[id(node)] = _negate_atom(node)
        elif isinstance(node, And):
            memo[id(node)] = mk_or(memo[id(c)] for c in node.parts)
        elif isinstance(node, Or):
            memo[id(node)] = mk_and(memo[id(c)] for c in node.parts)
        else:
            memo[id(node)] = FALSE if node is TRUE else TRUE
    return memo[id(phi)]


def atoms(phi: Formula) -> list[Atom]:
    return [n for n in nodes(phi) if isinstance(n, Atom)]


def symbols(phi: Formula) -> list[str]:
    """Symbols occurring in ``phi``, sorted by name."""
    out: set[str] = set()
    for a in atoms(phi):
        out.add(a.lhs)
        out.add(a.rhs)
    return sorted(out)


def evaluate(phi: Formula, theta: Mapping[str, int]) -> bool:
    """Truth of ``phi`` when (f>g) means theta[f] > theta[g] and likewise for =."""
    memo: dict[int, bool] = {}
    for node in nodes(phi):
        if isinstance(node, Atom):
            try:
                a, b = theta[node.lhs], theta[node.rhs]
            except KeyError as exc:
                raise KeyError(f"solution has no value for symbol {exc.args[0]!r}") from None
            memo[id(node)] = a > b if node.rel is Rel.GT else a == b
        elif isinstance(node, And):
            memo[id(node)] = all(memo[id(c)] for c in node.parts)
        elif isinstance(node, Or):
            memo[id(node)] = any(memo[id(c)] for c in node.parts)
        else:
            memo[id(node)] = node.value
    return memo[id(phi)]


class TooManySymbolsError(ValueError):
    pass


eval = evaluate  # noqa: A001  shadows the builtin only inside this module


def brute_force_sat(phi: Formula, max_symbols: int = 7) -> dict[str, int] | None:
    """Search every map from the n symbols of ``phi`` into {1..n}.

    Returns the first satisfying assignment in lexicographic order of the
    value tuple (symbols sorted by name), or ``None``.  The full n**n space is
    evaluated at once as integer arrays.
    """
    syms = symbols(phi)
    n = len(syms)
    if n > max_symbols:
        raise TooManySymbolsError(f"{n} symbols exceeds the limit of {max_symbols}")
    if phi is TRUE:
        return {}
    if phi is FALSE:
        return None
    # grid[:, i] is the value of syms[i]; rows enumerate {1..n}^n lexicographically
    grid = np.indices((n,) * n, dtype=np.int8).reshape(n, -1) + 1
    col = {s: grid[i] for i, s in enumerate(syms)}
    memo: dict[int, np.ndarray] = {}
    for node in nodes(phi):
        if isinstance(node, Atom):
            a, b = col[node.lhs], col[node.rhs]
            memo[id(node)] = a > b if node.rel is Rel.GT else a == b
        elif isinstance(node, And):
            memo[id(node)] = np.logical_and.reduce([memo[id(c)] for c in node.parts])
        else:
            memo[id(node)] = np.logical_or.reduce([memo[id(c)] for c in node.parts])
    hits = np.flatnonzero(memo[id(phi)])
    if hits.size == 0:
        return None
    row = grid[:, hits[0]]
    return {s: int(v) for s, v in zip(syms, row)}


def solution_to_model(theta: Mapping[str, int], syms: Iterable[str]) -> frozenset[tuple[str, str, str]]:
    """The atom set {(f R g) | theta(f) R theta(g)}, reflexive equalities included."""
    syms = list(syms)
    model = set()
    for f in syms:
        for g in syms:
            if theta[f] > theta[g]:
                model.add((f, ">", g))
            elif theta[f] == theta[g]:
                model.add((f, "=", g))
    return frozenset(model)


def model_to_solution(model: Iterable[tuple[str, str, str]], syms: Iterable[str]) -> dict[str, int]:
    """Linearize a total-order model into a solution with values in {1..n}.

    ``model`` must satisfy the partial-order axioms including comparability.
    Symbols are sorted ascending and consecutive values increase by one across
    each strict step and stay put across each equality.
    """
    model = frozenset(model)

    def cmp(f, g):
        if (f, ">", g) in model:
            return 1
        if (g, ">", f) in model:
            return -1
        if (f, "=", g) in model:
            return 0
        raise ValueError(f"model does not compare {f} and {g}")

    order = sorted(syms, key=functools.cmp_to_key(cmp))
    theta: dict[str, int] = {}
    for prev, cur in zip([None] + order, order):
        if prev is None:
            theta[cur] = 1
        else:
            theta[cur] = theta[prev] + (1 if (cur, ">", prev) in model else 0)
    return theta


# --------------------------------------------------------------------------
# Domain graph and SCC decomposition


@dataclass(frozen=True)
class DomainGraph:
    vertices: frozenset[str]
    edges: frozenset[tuple[str, str]]

    def successors(self) -> dict[str, list[str]]:
        succ: dict[str, list[str]] = {v: [] for v in self.vertices}
        for f, g in self.edges:
            succ[f].append(g)
        for v in succ:
            succ[v].sort()
        return succ

    def sccs(self) -> list[frozenset[str]]:
        return strongly_connected_components(sorted(self.vertices), self.successors())


def domain_graph(phi: Formula) -> DomainGraph:
    edges = set()
    for a in atoms(phi):
        edges.add((a.lhs, a.rhs))
        if a.rel is Rel.EQ:
            edges.add((a.rhs, a.lhs))
    return DomainGraph(frozenset(symbols(phi)), frozenset(edges))


def strongly_connected_components(
    vertices: Sequence[str], succ: Mapping[str, Sequence[str]]
) -> list[frozenset[str]]:
    """Tarjan's algorithm, iterative.

    Components come out in reverse topological order of the condensation:
    if an edge leads from component A to component B then B precedes A.
    """
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    out: list[frozenset[str]] = []
    counter = itertools.count()

    for root in vertices:
        if root in index:
            continue
        index[root] = low[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        work: list[tuple[str, Iterator[str]]] = [(root, iter(succ.get(root, ())))]
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = next(counter)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    pushed = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                out.append(frozenset(comp))
    return out


def restrict(phi: Formula, keep: Iterable[str]) -> Formula:
    """Replace by TRUE every atom not entirely over ``keep``, then simplify."""
    keep = frozenset(keep)
    return _rebuild(phi, lambda a: a if a.lhs in keep and a.rhs in keep else TRUE)


def scc_components(phi: Formula) -> list[tuple[frozenset[str], Formula]]:
    """(component, restriction) pairs, components in reverse topological order.

    A constant ``phi`` has no symbols; ``FALSE`` is returned as a single
    component over no symbols so that the result stays unsatisfiable.
    """
    if phi is FALSE:
        return [(frozenset(), FALSE)]
    return [(comp, restrict(phi, comp)) for comp in domain_graph(phi).sccs()]


def scc_partition(phi: Formula, drop_trivial: bool = False) -> list[Formula]:
    parts = [f for _, f in scc_components(phi)]
    if drop_trivial:
        parts = [f for f in parts if f is not TRUE]
    return parts


# --------------------------------------------------------------------------


def format_formula(phi: Formula) -> str:
    """Infix rendering: atoms as ``(f>g)``, conjunction ``/\\``, disjunction ``\\/``."""

    def go(node: Formula, parent: type | None) -> str:
        if isinstance(node, _Const):
            return "true" if node.value else "false"
        if isinstance(node, Atom):
            return f"({node.lhs}{node.rel}{node.rhs})"
        sep = " /\\ " if isinstance(node, And) else " \\/ "
        body = sep.join(go(c, type(node)) for c in node.parts)
        return body if parent is None else f"({body})"

    return go(phi, None)

"""Propositional formulas prior to CNF conversion.

Nodes are hash-consed like constraint formulas, so a sub-circuit built twice
(say the bit equivalence ``f_k <-> g_k`` that appears in both the ``>`` and the
``=`` comparator) is one node and is converted to CNF once.  Variables are
plain positive integers; their meaning is recorded by a :class:`VarPool`.
"""

from __future__ import annotations

import threading
import weakref
from typing import Iterable, Mapping

__all__ = [
    "Prop",
    "PVar",
    "PNot",
    "PAnd",
    "POr",
    "PIff",
    "PTRUE",
    "PFALSE",
    "var",
    "neg",
    "conj",
    "disj",
    "iff",
    "prop_nodes",
    "prop_vars",
    "prop_eval",
    "VarPool",
]

_lock = threading.Lock()
_table: "weakref.WeakValueDictionary[tuple, Prop]" = weakref.WeakValueDictionary()


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


class Prop:
    __slots__ = ("__weakref__",)

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    @property
    def children(self) -> tuple["Prop", ...]:
        return ()


class _PConst(Prop):
    __slots__ = ("value",)

    def __repr__(self):
        return "PTRUE" if self.value else "PFALSE"


PTRUE = _intern(_PConst, ("const", True), value=True)
PFALSE = _intern(_PConst, ("const", False), value=False)


class PVar(Prop):
    __slots__ = ("id",)

    def __new__(cls, id: int):
        if id < 1:
            raise ValueError("variable ids start at 1")
        return _intern(cls, ("var", id), id=id)

    def __repr__(self):
        return f"PVar({self.id})"


class PNot(Prop):
    __slots__ = ("arg",)

    def __new__(cls, arg: Prop):
        return _intern(cls, ("not", arg), arg=arg)

    @property
    def children(self):
        return (self.arg,)

    def __repr__(self):
        return f"PNot({self.arg!r})"


class _PNary(Prop):
    __slots__ = ("parts",)
    _tag = ""

    def __new__(cls, parts):
        parts = tuple(parts)
        if len(parts) < 2:
            raise ValueError(f"{cls.__name__} needs at least two parts")
        return _intern(cls, (cls._tag, parts), parts=parts)

    @property
    def children(self):
        return self.parts

    def __repr__(self):
        return f"{type(self).__name__}({list(self.parts)!r})"


class PAnd(_PNary):
    __slots__ = ()
    _tag = "and"


class POr(_PNary):
    __slots__ = ()
    _tag = "or"


class PIff(Prop):
    __slots__ = ("left", "right")

    def __new__(cls, left: Prop, right: Prop):
        return _intern(cls, ("iff", left, right), left=left, right=right)

    @property
    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"PIff({self.left!r}, {self.right!r})"


def var(id: int) -> Prop:
    return PVar(id)


def neg(p: Prop) -> Prop:
    if p is PTRUE:
        return PFALSE
    if p is PFALSE:
        return PTRUE
    if isinstance(p, PNot):
        return p.arg
    return PNot(p)


def _nary(cls, unit, zero, parts: Iterable[Prop]) -> Prop:
    out: list[Prop] = []
    seen: set[int] = set()
    for p in parts:
        if p is zero:
            return zero
        if p is unit:
            continue
        for c in (p.parts if type(p) is cls else (p,)):
            if id(c) in seen:
                continue
            seen.add(id(c))
            out.append(c)
    for c in out:
        if isinstance(c, PNot) and id(c.arg) in seen:
            return zero
    if not out:
        return unit
    if len(out) == 1:
        return out[0]
    return cls(out)


def conj(parts: Iterable[Prop]) -> Prop:
    return _nary(PAnd, PTRUE, PFALSE, parts)


def disj(parts: Iterable[Prop]) -> Prop:
    return _nary(POr, PFALSE, PTRUE, parts)


def iff(a: Prop, b: Prop) -> Prop:
    if a is b:
        return PTRUE
    if a is PTRUE:
        return b
    if b is PTRUE:
        return a
    if a is PFALSE:
        return neg(b)
    if b is PFALSE:
        return neg(a)
    if neg(a) is b:
        return PFALSE
    return PIff(a, b)


def prop_nodes(p: Prop) -> list[Prop]:
    """Distinct nodes of ``p``, children before parents."""
    order: list[Prop] = []
    done: set[int] = set()
    stack: list[tuple[Prop, bool]] = [(p, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in done:
            continue
        kids = node.children
        if expanded or not kids:
            done.add(id(node))
            order.append(node)
            continue
        stack.append((node, True))
        for c in reversed(kids):
            if id(c) not in done:
                stack.append((c, False))
    return order


def prop_vars(p: Prop) -> set[int]:
    return {n.id for n in prop_nodes(p) if isinstance(n, PVar)}


def prop_eval(p: Prop, assignment: Mapping[int, bool]) -> bool:
    memo: dict[int, bool] = {}
    for node in prop_nodes(p):
        if isinstance(node, PVar):
            val = bool(assignment[node.id])
        elif isinstance(node, _PConst):
            val = node.value
        elif isinstance(node, PNot):
            val = not memo[id(node.arg)]
        elif isinstance(node, PAnd):
            val = all(memo[id(c)] for c in node.parts)
        elif isinstance(node, POr):
            val = any(memo[id(c)] for c in node.parts)
        else:
            val = memo[id(node.left)] == memo[id(node.right)]
        memo[id(node)] = val
    return memo[id(p)]


class VarPool:
    """Allocates dense variable ids from 1 and remembers what each one means."""

    def __init__(self, start: int = 1):
        self._next = start
        self.labels: dict[int, str] = {}

    def fresh(self, label: str) -> int:
        v = self._next
        self._next += 1
        self.labels[v] = label
        return v

    def __len__(self):
        return self._next - 1

    @property
    def top(self) -> int:
        """Highest id handed out so far (0 if none)."""
        return self._next - 1

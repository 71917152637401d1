"""Propositional encodings of partial-order constraints, and model decoding.

Two encodings are provided:

* :func:`encode_symbol_based` gives every symbol a k-bit unsigned integer,
  ``k = max(1, ceil(log2 n))``, and turns each atom into a bit comparator.
  The order axioms hold for free because integers are totally ordered.
* :func:`encode_atom_based` gives every atom its own variable and adds the
  order axioms as explicit clauses, which costs Theta(n^2) variables and
  Theta(n^3) clauses.

Both conjoin the constraint skeleton, in which every atom ``a`` is replaced by
a proxy variable, with definitions tying the proxies to their meaning.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .poc import TRUE, And, Atom, Formula, Or, Rel, atoms, evaluate, nodes, symbols
from .prop import PTRUE, PFALSE, Prop, VarPool, conj, disj, iff, neg, var

__all__ = [
    "SymbolCoding",
    "SymbolEncoding",
    "AtomEncoding",
    "Precedence",
    "bit_width",
    "make_coding",
    "encode_eq_bits",
    "encode_gt_bits",
    "skeleton",
    "encode_symbol_based",
    "encode_atom_based",
    "decode_solution",
    "decode_atom_model",
    "precedence_of",
    "IncompleteModelError",
]


class IncompleteModelError(ValueError):
    pass


def bit_width(n: int) -> int:
    """Bits needed to give n symbols distinct values; at least one."""
    return max(1, (n - 1).bit_length()) if n > 0 else 1


@dataclass(frozen=True)
class SymbolCoding:
    """``bits[f][i - 1]`` is the variable of bit i of f; bit 1 is least significant."""

    k: int
    bits: Mapping[str, tuple[int, ...]]

    def __contains__(self, f: str) -> bool:
        return f in self.bits

    def vector(self, f: str) -> tuple[int, ...]:
        try:
            return self.bits[f]
        except KeyError:
            raise KeyError(f"symbol {f!r} has no bit vector") from None


def make_coding(syms: Iterable[str], pool: VarPool) -> SymbolCoding:
    syms = sorted(set(syms))
    k = bit_width(len(syms))
    bits = {f: tuple(pool.fresh(f"{f}.bit{i}") for i in range(1, k + 1)) for f in syms}
    return SymbolCoding(k, bits)


def encode_eq_bits(f: str, g: str, coding: SymbolCoding) -> Prop:
    fb, gb = coding.vector(f), coding.vector(g)
    return conj(iff(var(a), var(b)) for a, b in zip(fb, gb))


def encode_gt_bits(f: str, g: str, coding: SymbolCoding) -> Prop:
    """Unsigned ``f > g``, decided at the most significant differing bit."""
    fb, gb = coding.vector(f), coding.vector(g)
    out = PFALSE
    for a, b in zip(fb, gb):
        fi, gi = var(a), var(b)
        out = disj([conj([fi, neg(gi)]), conj([iff(fi, gi), out])])
    return out


def skeleton(phi: Formula, proxy: Mapping[Atom, int]) -> Prop:
    """``phi`` with every atom replaced by its proxy variable."""
    memo: dict[int, Prop] = {}
    for node in nodes(phi):
        if isinstance(node, Atom):
            memo[id(node)] = var(proxy[node])
        elif isinstance(node, And):
            memo[id(node)] = conj(memo[id(c)] for c in node.parts)
        elif isinstance(node, Or):
            memo[id(node)] = disj(memo[id(c)] for c in node.parts)
        else:
            memo[id(node)] = PTRUE if node is TRUE else PFALSE
    return memo[id(phi)]


class SymbolEncoding(NamedTuple):
    formula: Prop
    coding: SymbolCoding
    proxies: dict[Atom, int]
    pool: VarPool


def encode_symbol_based(phi: Formula, pool: VarPool | None = None) -> SymbolEncoding:
    pool = pool if pool is not None else VarPool()
    coding = make_coding(symbols(phi), pool)
    proxies: dict[Atom, int] = {}
    defs = []
    for a in atoms(phi):
        p = proxies[a] = pool.fresh(f"[{a.lhs}{a.rel}{a.rhs}]")
        meaning = (encode_gt_bits if a.rel is Rel.GT else encode_eq_bits)(a.lhs, a.rhs, coding)
        defs.append(iff(var(p), meaning))
    return SymbolEncoding(conj([skeleton(phi, proxies)] + defs), coding, proxies, pool)


class AtomEncoding(NamedTuple):
    formula: Prop
    atom_vars: dict[tuple[str, str, str], int]
    proxies: dict[Atom, int]
    symbols: list[str]
    full: bool
    pool: VarPool


def encode_atom_based(phi: Formula, mode: str = "auto", pool: VarPool | None = None) -> AtomEncoding:
    """Atom variables plus explicit order axioms over the symbols of ``phi``.

    ``mode="reduced"`` emits only transitivity and asymmetry of ``>`` and is
    only sound without equality atoms; ``"auto"`` picks it in that case and
    ``"full"`` otherwise.  Full mode quantifies the three-symbol axioms over
    pairwise distinct triples, so equality/strictness exclusion
    ``not((f>g) and (f=g))`` is emitted explicitly for every f != g.
    """
    pool = pool if pool is not None else VarPool()
    syms = symbols(phi)
    found = atoms(phi)
    has_eq = any(a.rel is Rel.EQ for a in found)
    if mode == "auto":
        full = has_eq
    elif mode in ("full", "reduced"):
        full = mode == "full"
        if not full and has_eq:
            raise ValueError("reduced mode cannot encode equality atoms")
    else:
        raise ValueError(f"unknown mode {mode!r}")

    av: dict[tuple[str, str, str], int] = {}
    for f, g in itertools.permutations(syms, 2):
        av[(f, ">", g)] = pool.fresh(f"[{f}>{g}]")
    if full:
        for f, g in itertools.product(syms, repeat=2):
            av[(f, "=", g)] = pool.fresh(f"[{f}={g}]")

    def gtv(f, g):
        return var(av[(f, ">", g)])

    def eqv(f, g):
        return var(av[(f, "=", g)])

    proxies = {a: av[(a.lhs, str(a.rel), a.rhs)] for a in found}
    axioms: list[Prop] = []
    pairs = list(itertools.combinations(syms, 2))
    triples = list(itertools.permutations(syms, 3))
    # asymmetry and transitivity of >
    axioms += [disj([neg(gtv(f, g)), neg(gtv(g, f))]) for f, g in pairs]
    axioms += [disj([neg(gtv(f, g)), neg(gtv(g, h)), gtv(f, h)]) for f, g, h in triples]
    if full:
        axioms += [eqv(f, f) for f in syms]
        axioms += [disj([neg(eqv(f, g)), eqv(g, f)]) for f, g in itertools.permutations(syms, 2)]
        axioms += [disj([neg(gtv(f, g)), neg(eqv(f, g))]) for f, g in itertools.permutations(syms, 2)]
        axioms += [disj([neg(eqv(f, g)), neg(eqv(g, h)), eqv(f, h)]) for f, g, h in triples]
        axioms += [disj([neg(gtv(f, g)), neg(eqv(g, h)), gtv(f, h)]) for f, g, h in triples]
        axioms += [disj([neg(eqv(f, g)), neg(gtv(g, h)), gtv(f, h)]) for f, g, h in triples]
        axioms += [disj([gtv(f, g), gtv(g, f), eqv(f, g)]) for f, g in pairs]
    formula = conj([skeleton(phi, proxies)] + axioms)
    return AtomEncoding(formula, av, proxies, syms, full, pool)


def decode_solution(
    model: Mapping[int, bool], coding: SymbolCoding, phi: Formula | None = None
) -> dict[str, int]:
    """Read each symbol's bit vector as an unsigned integer.

    When ``phi`` is given the decoded solution is checked against it.
    """
    theta = {}
    for f, vec in coding.bits.items():
        value = 0
        for i, v in enumerate(vec):
            try:
                bit = model[v]
            except KeyError:
                raise IncompleteModelError(f"model lacks bit variable {v} of {f!r}") from None
            value |= int(bool(bit)) << i
        theta[f] = value
    if phi is not None and not evaluate(phi, theta):
        raise AssertionError("decoded solution does not satisfy the constraint")
    return theta


def decode_atom_model(
    model: Mapping[int, bool], enc: AtomEncoding, phi: Formula | None = None
) -> dict[str, int]:
    """Turn an atom-variable model into a solution.

    Symbols related by a true equality variable share a class; classes are
    numbered by the length of the longest strict chain below them.
    """
    cls = {f: f for f in enc.symbols}

    def find(f):
        while cls[f] != f:
            cls[f] = cls[cls[f]]
            f = cls[f]
        return f

    def holds(key):
        try:
            return bool(model[enc.atom_vars[key]])
        except KeyError:
            raise IncompleteModelError(f"model lacks atom variable for {key}") from None

    if enc.full:
        for f, g in itertools.combinations(enc.symbols, 2):
            if holds((f, "=", g)):
                cls[find(f)] = find(g)
    below: dict[str, set[str]] = {find(f): set() for f in enc.symbols}
    for f, g in itertools.permutations(enc.symbols, 2):
        if holds((f, ">", g)) and find(f) != find(g):
            below[find(f)].add(find(g))

    height: dict[str, int] = {}
    visiting: set[str] = set()

    def depth(c):
        if c in height:
            return height[c]
        if c in visiting:
            raise AssertionError("strict atoms of the model form a cycle")
        visiting.add(c)
        height[c] = 1 + max((depth(d) for d in below[c]), default=-1)
        return height[c]

    theta = {f: depth(find(f)) for f in enc.symbols}
    if phi is not None and not evaluate(phi, theta):
        raise AssertionError("decoded solution does not satisfy the constraint")
    return theta


@dataclass(frozen=True)
class Precedence:
    """Symbols grouped into equivalence classes, strongest class first."""

    classes: tuple[tuple[str, ...], ...]

    def __str__(self):
        return " > ".join(" = ".join(c) for c in self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def as_lists(self) -> list[list[str]]:
        return [list(c) for c in self.classes]


def precedence_of(theta: Mapping[str, int]) -> Precedence:
    groups: dict[int, list[str]] = {}
    for f, v in theta.items():
        groups.setdefault(v, []).append(f)
    return Precedence(tuple(tuple(sorted(groups[v])) for v in sorted(groups, reverse=True)))

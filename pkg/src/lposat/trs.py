"""Terms, rewrite rules and a reader for the TPDB "old" ``.trs`` format.

Terms are interned: building the same term twice yields the same object, so
equality is identity and terms are cheap dictionary keys.  The LPO unfolder
relies on this for memoization.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Symbol",
    "Term",
    "Var",
    "App",
    "Rule",
    "Trs",
    "TrsError",
    "ParseError",
    "ArityError",
    "UnboundVariableError",
    "UnsupportedFormatError",
    "parse_trs",
    "parse_term",
    "format_term",
    "format_trs",
    "term_vars",
    "subterms",
]


class TrsError(ValueError):
    """Base class for everything the reader rejects."""


class ParseError(TrsError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class ArityError(TrsError):
    pass


class UnboundVariableError(TrsError):
    pass


class UnsupportedFormatError(TrsError):
    """The file declares a THEORY or STRATEGY section."""


@dataclass(frozen=True, order=True)
class Symbol:
    name: str
    arity: int

    def __post_init__(self):
        if not self.name:
            raise ValueError("symbol name must be non-empty")
        if self.arity < 0:
            raise ValueError(f"negative arity for {self.name!r}")

    def __str__(self):
        return self.name


_intern_lock = threading.Lock()
_intern: dict = {}


class Term:
    __slots__ = ("_hash", "__weakref__")

    def is_var(self) -> bool:
        return isinstance(self, Var)

    def __str__(self):
        return format_term(self)


class Var(Term):
    __slots__ = ("name",)

    def __new__(cls, name: str):
        key = ("var", name)
        term = _intern.get(key)
        if term is None:
            with _intern_lock:
                term = _intern.get(key)
                if term is None:
                    term = object.__new__(cls)
                    term.name = name
                    term._hash = hash(key)
                    _intern[key] = term
        return term

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"

    def __reduce__(self):
        return (Var, (self.name,))


class App(Term):
    __slots__ = ("symbol", "args")

    def __new__(cls, symbol: Symbol | str, args: Sequence[Term] = ()):
        args = tuple(args)
        if isinstance(symbol, str):
            symbol = Symbol(symbol, len(args))
        if len(args) != symbol.arity:
            raise ArityError(
                f"{symbol.name} expects {symbol.arity} arguments, got {len(args)}"
            )
        key = ("app", symbol, args)
        term = _intern.get(key)
        if term is None:
            with _intern_lock:
                term = _intern.get(key)
                if term is None:
                    term = object.__new__(cls)
                    term.symbol = symbol
                    term.args = args
                    term._hash = hash(key)
                    _intern[key] = term
        return term

    @property
    def name(self) -> str:
        return self.symbol.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.args:
            return f"App({self.symbol.name!r})"
        return f"App({self.symbol.name!r}, {list(self.args)!r})"

    def __reduce__(self):
        return (App, (self.symbol, self.args))


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term

    def __post_init__(self):
        unbound = term_vars(self.rhs) - term_vars(self.lhs)
        if unbound:
            names = ", ".join(sorted(unbound))
            raise UnboundVariableError(
                f"rule {format_term(self.lhs)} -> {format_term(self.rhs)}: "
                f"right-hand side variable(s) {names} not bound in left-hand side"
            )

    def __str__(self):
        return f"{format_term(self.lhs)} -> {format_term(self.rhs)}"


@dataclass(frozen=True)
class Trs:
    rules: tuple[Rule, ...] = ()
    signature: frozenset[Symbol] = field(default=frozenset())

    @classmethod
    def from_rules(cls, rules: Iterable[Rule]) -> "Trs":
        rules = tuple(rules)
        sig: dict[str, Symbol] = {}
        for rule in rules:
            for side in (rule.lhs, rule.rhs):
                for sub in subterms(side):
                    if isinstance(sub, App):
                        known = sig.setdefault(sub.symbol.name, sub.symbol)
                        if known.arity != sub.symbol.arity:
                            raise ArityError(
                                f"symbol {known.name} used with arities "
                                f"{known.arity} and {sub.symbol.arity}"
                            )
        return cls(rules, frozenset(sig.values()))

    def __len__(self):
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)


def subterms(t: Term) -> Iterator[Term]:
    """All subterms of ``t`` (including ``t``), pre-order, repeats included."""
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        if isinstance(u, App):
            stack.extend(reversed(u.args))


def term_vars(t: Term) -> set[str]:
    return {u.name for u in subterms(t) if isinstance(u, Var)}


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.symbol.name
    return f"{t.symbol.name}({','.join(format_term(a) for a in t.args)})"


def format_trs(trs: Trs) -> str:
    names = sorted(set().union(*(term_vars(r.lhs) for r in trs.rules)))
    lines = [f"(VAR {' '.join(names)})" if names else "(VAR)", "(RULES"]
    lines.extend(f"  {rule}" for rule in trs.rules)
    lines.append(")")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Reader

_DELIMS = set("(),\"|\\")


class _Lexer:
    """Tokens: '(' ')' ',' '->' and identifiers, each with its position."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self._peeked = None

    def _advance(self, n: int = 1):
        for ch in self.text[self.pos:self.pos + n]:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n

    def _scan(self):
        text = self.text
        while self.pos < len(text) and text[self.pos].isspace():
            self._advance()
        line, col = self.line, self.col
        if self.pos >= len(text):
            return ("eof", "", line, col)
        ch = text[self.pos]
        if text.startswith("->", self.pos):
            self._advance(2)
            return ("arrow", "->", line, col)
        if ch in "(),":
            self._advance()
            return (ch, ch, line, col)
        if ch in _DELIMS:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        start = self.pos
        while (
            self.pos < len(text)
            and not text[self.pos].isspace()
            and text[self.pos] not in _DELIMS
            and not text.startswith("->", self.pos)
        ):
            self._advance()
        return ("ident", text[start:self.pos], line, col)

    def peek(self):
        if self._peeked is None:
            self._peeked = self._scan()
        return self._peeked

    def next(self):
        tok = self.peek()
        self._peeked = None
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            what = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {what!r}", tok[2], tok[3])
        return tok

    def skip_balanced(self):
        """Skip raw text up to the ')' closing an already-opened section."""
        depth = 1
        text = self.text
        self._peeked = None
        while self.pos < len(text):
            ch = text[self.pos]
            self._advance()
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    return
        raise ParseError("unterminated section", self.line, self.col)


class _Reader:
    def __init__(self, text: str):
        self.lex = _Lexer(text)
        self.variables: set[str] = set()
        self.arities: dict[str, int] = {}

    def term(self) -> Term:
        kind, name, line, col = self.lex.next()
        if kind != "ident":
            raise ParseError(f"expected a term, found {name or 'end of input'!r}", line, col)
        args: list[Term] = []
        if self.lex.peek()[0] == "(":
            self.lex.next()
            if self.lex.peek()[0] != ")":
                args.append(self.term())
                while self.lex.peek()[0] == ",":
                    self.lex.next()
                    args.append(self.term())
            self.lex.expect(")")
        if name in self.variables:
            if args:
                raise ParseError(f"variable {name} applied to arguments", line, col)
            return Var(name)
        known = self.arities.setdefault(name, len(args))
        if known != len(args):
            raise ArityError(
                f"{line}:{col}: symbol {name} used with arity {len(args)}, "
                f"previously {known}"
            )
        return App(Symbol(name, len(args)), args)

    def rules(self) -> list[Rule]:
        rules = []
        while self.lex.peek()[0] == "ident":
            _, _, line, col = self.lex.peek()
            lhs = self.term()
            self.lex.expect("arrow")
            rhs = self.term()
            try:
                rules.append(Rule(lhs, rhs))
            except UnboundVariableError as exc:
                raise UnboundVariableError(f"{line}:{col}: {exc}") from None
        return rules

    def read(self) -> Trs:
        rules: list[Rule] = []
        lex = self.lex
        while lex.peek()[0] != "eof":
            lex.expect("(")
            kind, section, line, col = lex.next()
            if kind != "ident":
                raise ParseError("expected a section name", line, col)
            key = section.upper()
            if key == "VAR":
                while lex.peek()[0] == "ident":
                    self.variables.add(lex.next()[1])
                lex.expect(")")
            elif key == "RULES":
                rules.extend(self.rules())
                lex.expect(")")
            elif key in ("THEORY", "STRATEGY"):
                raise UnsupportedFormatError(
                    f"{line}:{col}: {key} sections are not supported"
                )
            elif key == "COMMENT":
                lex.skip_balanced()
            else:
                raise ParseError(f"unknown section {section!r}", line, col)
        return Trs.from_rules(rules)


def parse_trs(text: str) -> Trs:
    """Parse TPDB old-format text into a :class:`Trs`.

    Identifiers declared in the ``(VAR ...)`` section are variables; every
    other identifier is a function symbol whose arity is fixed by its first
    occurrence.  ``COMMENT`` sections are skipped.
    """
    return _Reader(text).read()


def parse_term(text: str, variables: Iterable[str] = ()) -> Term:
    """Parse a single term; identifiers in ``variables`` become variables."""
    reader = _Reader(text)
    reader.variables.update(variables)
    t = reader.term()
    tok = reader.lex.peek()
    if tok[0] != "eof":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2], tok[3])
    return t

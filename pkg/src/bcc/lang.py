"""Textual contract language: parsing, well-formedness, compilation.

Grammar (one definition per line, '#' starts a comment):

    def     := NAME "=" term
    term    := item { "+" item }
    item    := "rec" VAR "." term | prefix "." item | atom
    prefix  := "tau" | "?" NAME | "!" NAME
    atom    := "0" | VAR | "(" term ")"

Prefix binds tighter than "+"; "rec" extends to the right as far as
possible.  "tau" and "rec" are reserved words.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

from .errors import (
    DuplicateNameError,
    IllFormedError,
    ParseError,
    StateExplosionError,
)
from .lts import TAU, ContractGraph, Label, inp, out

DEFAULT_MAX_STATES = 1024

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_RESERVED = ("tau", "rec")


class Term:
    """Abstract contract syntax."""

    __slots__ = ()


@dataclass(frozen=True)
class Nil(Term):
    pass


@dataclass(frozen=True)
class Prefix(Term):
    label: Label
    body: Term


@dataclass(frozen=True)
class Choice(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Rec(Term):
    var: str
    body: Term


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Violation:
    kind: str  # "unbound-variable" | "unguarded-recursion"
    var: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.var}"


@dataclass(frozen=True)
class ContractDef:
    name: str
    term: Term
    line: int = 0


# -- tokenizer -----------------------------------------------------------


def _tokenize(text: str, line_no: int) -> list:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        col = i + 1
        if ch == "0":
            tokens.append(("zero", "0", line_no, col))
            i += 1
        elif ch in "?!.+()=":
            tokens.append(("punct", ch, line_no, col))
            i += 1
        else:
            m = _NAME_RE.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {ch!r}", line_no, col)
            word = m.group()
            kind = word if word in _RESERVED else "name"
            tokens.append((kind, word, line_no, col))
            i = m.end()
    tokens.append(("eof", "", line_no, len(text) + 1))
    return tokens


class _TermParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None):
        kind, text, line, col = tok or self.peek()
        raise ParseError(message, line, col)

    def expect_punct(self, ch):
        kind, text, line, col = self.advance()
        if kind != "punct" or text != ch:
            raise ParseError(
                f"expected {ch!r}, found {text or 'end of line'!r}", line, col
            )

    def expect_name(self, what):
        kind, text, line, col = self.advance()
        if kind != "name":
            raise ParseError(
                f"expected {what}, found {text or 'end of line'!r}", line, col
            )
        return text

    def term(self) -> Term:
        t = self.item()
        while self.peek()[:2] == ("punct", "+"):
            self.advance()
            t = Choice(t, self.item())
        return t

    def item(self) -> Term:
        kind, text, _, _ = self.peek()
        if kind == "rec":
            self.advance()
            var = self.expect_name("a recursion variable")
            self.expect_punct(".")
            return Rec(var, self.term())
        if kind == "tau":
            self.advance()
            self.expect_punct(".")
            return Prefix(TAU, self.item())
        if kind == "punct" and text in "?!":
            self.advance()
            name = self.expect_name("an action name")
            self.expect_punct(".")
            return Prefix(inp(name) if text == "?" else out(name), self.item())
        return self.atom()

    def atom(self) -> Term:
        kind, text, line, col = self.advance()
        if kind == "zero":
            return Nil()
        if kind == "name":
            return Var(text)
        if kind == "punct" and text == "(":
            t = self.term()
            self.expect_punct(")")
            return t
        raise ParseError(
            f"expected a term, found {text or 'end of line'!r}", line, col
        )


def parse_term(text: str) -> Term:
    """Parse a single term (newlines are treated as spaces)."""
    parser = _TermParser(_tokenize(text.replace("\n", " "), 1))
    t = parser.term()
    kind, text_, line, col = parser.peek()
    if kind != "eof":
        raise ParseError(f"unexpected {text_!r} after term", line, col)
    return t


def parse(text: str) -> list:
    """Parse a contract file into its definitions, in source order."""
    defs = []
    first_line = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0]
        if not stripped.strip():
            continue
        tokens = _tokenize(stripped, line_no)
        parser = _TermParser(tokens)
        name = parser.expect_name("a contract name")
        parser.expect_punct("=")
        term = parser.term()
        kind, text_, line, col = parser.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {text_!r} after definition", line, col)
        if name in first_line:
            raise DuplicateNameError(
                f"duplicate contract name {name!r} "
                f"(first defined on line {first_line[name]})",
                line_no,
                1,
            )
        first_line[name] = line_no
        defs.append(ContractDef(name, term, line_no))
    return defs


# -- pretty-printer ------------------------------------------------------


def _pp(t: Term) -> tuple:
    """Render a term; the flag marks text ending in an open rec body,
    which would swallow a following '+' on re-parse."""
    if isinstance(t, Nil):
        return "0", False
    if isinstance(t, Var):
        return t.name, False
    if isinstance(t, Rec):
        body, _ = _pp(t.body)
        return f"rec {t.var}.{body}", True
    if isinstance(t, Prefix):
        body, open_rec = _pp(t.body)
        if isinstance(t.body, Choice):
            body, open_rec = f"({body})", False
        return f"{t.label}.{body}", open_rec
    if isinstance(t, Choice):
        left, left_open = _pp(t.left)
        if left_open:
            left = f"({left})"
        right, right_open = _pp(t.right)
        if isinstance(t.right, Choice):
            right, right_open = f"({right})", False
        return f"{left} + {right}", right_open
    raise TypeError(f"not a term: {t!r}")


def pretty(t: Term) -> str:
    """Concrete syntax for a term; parse(pretty(t)) == t."""
    return _pp(t)[0]


# -- well-formedness -----------------------------------------------------


def well_formed(t: Term) -> list:
    """Closedness and guardedness violations, in discovery order (empty = ok)."""
    found = {}

    def walk(t, bound, unguarded):
        if isinstance(t, Var):
            if t.name not in bound:
                found.setdefault(Violation("unbound-variable", t.name))
            elif t.name in unguarded:
                found.setdefault(Violation("unguarded-recursion", t.name))
        elif isinstance(t, Prefix):
            walk(t.body, bound, frozenset())
        elif isinstance(t, Choice):
            walk(t.left, bound, unguarded)
            walk(t.right, bound, unguarded)
        elif isinstance(t, Rec):
            walk(t.body, bound | {t.var}, unguarded | {t.var})

    walk(t, frozenset(), frozenset())
    return list(found)


# -- compilation ---------------------------------------------------------


def _subst(t: Term, var: str, value: Term) -> Term:
    if isinstance(t, Var):
        return value if t.name == var else t
    if isinstance(t, Prefix):
        return Prefix(t.label, _subst(t.body, var, value))
    if isinstance(t, Choice):
        return Choice(_subst(t.left, var, value), _subst(t.right, var, value))
    if isinstance(t, Rec):
        if t.var == var:  # shadowed
            return t
        return Rec(t.var, _subst(t.body, var, value))
    return t


def _transitions(t: Term, memo: dict) -> tuple:
    """Initial (label, target-term) moves of a closed guarded term,
    deduplicated and ordered by label."""
    cached = memo.get(t)
    if cached is not None:
        return cached
    if isinstance(t, Nil):
        moves = ()
    elif isinstance(t, Prefix):
        moves = ((t.label, t.body),)
    elif isinstance(t, Choice):
        seen = dict.fromkeys(
            _transitions(t.left, memo) + _transitions(t.right, memo)
        )
        moves = tuple(sorted(seen, key=lambda m: m[0]))
    elif isinstance(t, Rec):
        moves = _transitions(_subst(t.body, t.var, t), memo)
    else:
        raise ValueError(f"cannot take transitions of open term {t!r}")
    memo[t] = moves
    return moves


def compile_term(
    term: Term, max_states: int = DEFAULT_MAX_STATES, *, name: str = ""
) -> ContractGraph:
    """Compile a closed guarded term to its transition graph.

    States are the reachable one-step unfoldings of the term, hash-consed,
    numbered in BFS discovery order; the terminal state (when reachable)
    always receives id 0.  Transition-free terms (0 itself, but also e.g.
    0 + 0) all collapse onto the terminal state, keeping it the unique sink.
    """
    violations = well_formed(term)
    if violations:
        raise IllFormedError(violations)
    memo = {}
    nil = Nil()

    def key(t):
        return nil if not _transitions(t, memo) else t

    root = key(term)
    discovered = {root: None}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for _, v in _transitions(u, memo):
            v = key(v)
            if v not in discovered:
                if len(discovered) >= max_states:
                    raise StateExplosionError(
                        f"more than {max_states} states while compiling"
                        + (f" {name!r}" if name else "")
                    )
                discovered[v] = None
                queue.append(v)

    has_nil = nil in discovered
    ids = {}
    if has_nil:
        ids[nil] = 0
    next_id = 1 if has_nil else 0
    for u in discovered:
        if u == nil:
            continue
        ids[u] = next_id
        next_id += 1

    edges = []
    for u in discovered:
        for lab, v in _transitions(u, memo):
            edges.append((ids[u], lab, ids[key(v)]))
    return ContractGraph(
        next_id, ids[root], edges, 0 if has_nil else None, name=name
    )


def compile_definitions(
    defs, max_states: int = DEFAULT_MAX_STATES
) -> dict:
    """Compile a list of ContractDefs to named graphs, keyed by name."""
    return {
        d.name: compile_term(d.term, max_states, name=d.name) for d in defs
    }

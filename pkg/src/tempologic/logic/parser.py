"""Recursive-descent parser for the formula DSL.

Grammar (operator precedence ! > & > | > -> > <->, quantifier bodies extend
maximally right):

    formula := iff
    iff     := imp ("<->" imp)*            (left associative)
    imp     := or ("->" or)*               (right associative)
    or      := and ("|" and)*
    and     := un ("&" un)*
    un      := "!" un | quant | prim
    prim    := atom | "(" formula ")"
    quant   := ("exists"|"forall") IDENT [":" SORT] "." formula
             | ("Exists"|"Forall") IDENT ["sub" SORT] "." formula
    atom    := IDENT "(" term ("," term)* ")" | term "=" term | term "in" IDENT

"#" starts a comment running to end of line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from ..errors import FormulaSyntaxError, UnknownSortError
from .ast import (
    And,
    Eq,
    ExistsElem,
    ExistsSet,
    ForallElem,
    ForallSet,
    Formula,
    Iff,
    Implies,
    Member,
    Not,
    Or,
    RelAtom,
    SORT_NAMES,
)

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>\#[^\n]*)
      | (?P<arrow2><->)
      | (?P<arrow>->)
      | (?P<sym>[()!&|=.,:])
      | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)

KEYWORDS = {"exists", "forall", "Exists", "Forall", "in", "sub"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        raw = m.group()
        if kind not in ("ws", "comment"):
            if kind == "ident" and raw in KEYWORDS:
                tokens.append(Token(raw, raw, line, col))
            elif kind == "ident":
                tokens.append(Token("ident", raw, line, col))
            else:
                tokens.append(Token(raw if kind in ("arrow", "arrow2") else raw, raw, line, col))
        newlines = raw.count("\n")
        if newlines:
            line += newlines
            col = len(raw) - raw.rfind("\n")
        else:
            col += len(raw)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise FormulaSyntaxError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.line, tok.col
            )
        return self.next()

    def fail(self, message: str):
        tok = self.peek()
        raise FormulaSyntaxError(message, tok.line, tok.col)

    # precedence-climbing layers ------------------------------------------

    def formula(self) -> Formula:
        return self.iff()

    def iff(self) -> Formula:
        node = self.imp()
        while self.peek().kind == "<->":
            self.next()
            node = Iff(node, self.imp())
        return node

    def imp(self) -> Formula:
        parts = [self.disjunction()]
        while self.peek().kind == "->":
            self.next()
            parts.append(self.disjunction())
        node = parts[-1]
        for left in reversed(parts[:-1]):
            node = Implies(left, node)
        return node

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.peek().kind == "|":
            self.next()
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.peek().kind == "&":
            self.next()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "!":
            self.next()
            return Not(self.unary())
        if tok.kind in ("exists", "forall"):
            self.next()
            var = self.expect("ident").text
            sort = None
            if self.peek().kind == ":":
                self.next()
                sort = self._sort()
            self.expect(".")
            body = self.formula()
            cls = ExistsElem if tok.kind == "exists" else ForallElem
            return cls(var, sort, body)
        if tok.kind in ("Exists", "Forall"):
            self.next()
            var = self.expect("ident").text
            sort = None
            if self.peek().kind == "sub":
                self.next()
                sort = self._sort()
            self.expect(".")
            body = self.formula()
            cls = ExistsSet if tok.kind == "Exists" else ForallSet
            return cls(var, sort, body)
        return self.prim()

    def _sort(self) -> str:
        tok = self.expect("ident")
        if tok.text not in SORT_NAMES:
            raise UnknownSortError(
                f"unknown sort {tok.text!r} at line {tok.line}, column {tok.col}"
            )
        return tok.text

    def prim(self) -> Formula:
        tok = self.peek()
        if tok.kind == "(":
            self.next()
            node = self.formula()
            self.expect(")")
            return node
        if tok.kind == "ident":
            name = self.next().text
            nxt = self.peek()
            if nxt.kind == "(":
                self.next()
                terms = [self.expect("ident").text]
                while self.peek().kind == ",":
                    self.next()
                    terms.append(self.expect("ident").text)
                self.expect(")")
                return RelAtom(name, tuple(terms))
            if nxt.kind == "=":
                self.next()
                right = self.expect("ident").text
                return Eq(name, right)
            if nxt.kind == "in":
                self.next()
                set_var = self.expect("ident").text
                return Member(name, set_var)
            self.fail(f"dangling term {name!r}: expected '(', '=' or 'in'")
        self.fail(f"unexpected {tok.text or 'end of input'!r}")


def parse_formula(text: str) -> Formula:
    parser = _Parser(tokenize(text))
    node = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise FormulaSyntaxError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return node

"""Concrete syntax for terms, formulas and equations.

Grammar (loosest to tightest): ``->`` right-associative, then ``|``, then
``*``, then modal application ``name(arg)``; parentheses override.  Atoms
are ``0``, ``1``, ``bot`` (same as 0), ``top`` (sugar for ``bot -> bot``)
and variables ``v0``, ``v1``, ...
"""

from __future__ import annotations

import re

from .terms import BOT, TOP, Const, Equation, Imp, Join, ModalApp, Prod, Term, Var


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(r"\s*(->|\||\*|\(|\)|=|[01]|[A-Za-z_][A-Za-z0-9_]*)")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             len(text) - len(stripped))
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    tokens.append((None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def pos(self):
        return self.tokens[self.i][1]

    def take(self, expected=None):
        tok, pos = self.tokens[self.i]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", pos)
        self.i += 1
        return tok

    def parse_term(self) -> Term:
        lhs = self.parse_join()
        if self.peek() == "->":
            self.take()
            return Imp(lhs, self.parse_term())  # right-associative
        return lhs

    def parse_join(self) -> Term:
        out = self.parse_prod()
        while self.peek() == "|":
            self.take()
            out = Join(out, self.parse_prod())
        return out

    def parse_prod(self) -> Term:
        out = self.parse_atom()
        while self.peek() == "*":
            self.take()
            out = Prod(out, self.parse_atom())
        return out

    def parse_atom(self) -> Term:
        tok, pos = self.tokens[self.i]
        if tok == "(":
            self.take()
            inner = self.parse_term()
            self.take(")")
            return inner
        if tok == "0" or tok == "bot":
            self.take()
            return BOT
        if tok == "1":
            self.take()
            return Const(1)
        if tok == "top":
            self.take()
            return TOP
        if tok is not None and re.fullmatch(r"v\d+", tok):
            self.take()
            return Var(int(tok[1:]))
        if tok is not None and tok.isidentifier():
            self.take()
            self.take("(")
            arg = self.parse_term()
            self.take(")")
            return ModalApp(tok, arg)
        raise ParseError(f"expected a term, found {tok!r}", pos)

    def expect_end(self):
        tok, pos = self.tokens[self.i]
        if tok is not None:
            raise ParseError(f"trailing input {tok!r}", pos)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.parse_term()
    p.expect_end()
    return t


# formulas share the term grammar; the alias marks intent at call sites
parse_formula = parse_term


def parse_equation(text: str) -> Equation:
    p = _Parser(text)
    lhs = p.parse_term()
    p.take("=")
    rhs = p.parse_term()
    p.expect_end()
    return Equation(lhs, rhs)


def _level(t: Term) -> int:
    match t:
        case Imp(_, _):
            return 0
        case Join(_, _):
            return 1
        case Prod(_, _):
            return 2
    return 3


def format_term(t: Term) -> str:
    def fmt(t, min_level):
        lvl = _level(t)
        match t:
            case Var(i):
                s = f"v{i}"
            case Const(w):
                s = str(w)
            case ModalApp(name, a):
                s = f"{name}({fmt(a, 0)})"
            case Imp(l, r):
                s = f"{fmt(l, 1)} -> {fmt(r, 0)}"
            case Join(l, r):
                s = f"{fmt(l, 1)} | {fmt(r, 2)}"
            case Prod(l, r):
                s = f"{fmt(l, 2)} * {fmt(r, 3)}"
            case _:
                raise TypeError(f"not a term: {t!r}")
        return f"({s})" if lvl < min_level else s

    return fmt(t, 0)


def format_equation(eq: Equation) -> str:
    return f"{format_term(eq.lhs)} = {format_term(eq.rhs)}"

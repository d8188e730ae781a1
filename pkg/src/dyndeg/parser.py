"""Parser for comma separated lists of integer polynomial expressions.

Grammar::

    list   := expr (',' expr)*
    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | atom (('^' | '**') INT)?
    atom   := INT | NAME | '(' expr ')'

Polynomials come back as ``{exponent tuple: int}`` dicts over the given
variable names.
"""

from __future__ import annotations

import re
from typing import Sequence

from .poly import add as _add, mul as _mul

Terms = dict[tuple[int, ...], int]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^(),]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vars = {name: j for j, name in enumerate(variables)}
        self.n = len(variables)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def const(self, c: int) -> Terms:
        return {(0,) * self.n: c} if c else {}

    def parse_list(self) -> list[Terms]:
        out = [self.expr()]
        while self.peek()[:2] == ("op", ","):
            self.take()
            out.append(self.expr())
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return out

    def expr(self) -> Terms:
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            acc = _add(acc, self.term(), 1 if op == "+" else -1)
        return acc

    def term(self) -> Terms:
        acc = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = _mul(acc, self.factor())
        return acc

    def factor(self) -> Terms:
        kind, val, pos = self.peek()
        if kind == "op" and val in ("+", "-"):
            self.take()
            inner = self.factor()
            return inner if val == "+" else {e: -c for e, c in inner.items()}
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] in ("^", "**"):
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer literal", pos)
            result = self.const(1)
            for _ in range(int(val)):
                result = _mul(result, base)
            return result
        return base

    def atom(self) -> Terms:
        kind, val, pos = self.take()
        if kind == "int":
            return self.const(int(val))
        if kind == "name":
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r}", pos)
            e = [0] * self.n
            e[self.vars[val]] = 1
            return {tuple(e): 1}
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_polynomials(text: str, variables: Sequence[str]) -> list[Terms]:
    """Parse a comma separated list of polynomials in ``variables``."""
    return _Parser(text, variables).parse_list()

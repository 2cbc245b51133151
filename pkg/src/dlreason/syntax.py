"""Text format for terminologies.

One s-expression per line-oriented stream, ``;`` starts a comment:

    (define-primitive-concept A C)   A <= C
    (define-concept A C)             A == C
    (implies C D)                    C <= D
    (equal C D)                      C == D

Concepts: ``top | bottom | NAME | (not C) | (and C...) | (or C...) |
(some R C) | (all R C)``; roles: ``NAME | (inv NAME)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .concepts import (
    BOTTOM,
    TOP,
    Atom,
    Axiom,
    Concept,
    Eq,
    Exists,
    Forall,
    Not,
    Role,
    Sub,
    TBox,
    mk_and,
    mk_or,
    tbox,
)


class TBoxSyntaxError(ValueError):
    """Raised on malformed input, with 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass
class _Token:
    text: str
    line: int
    column: int


_PUNCT = "()"


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in _PUNCT:
            tokens.append(_Token(ch, line, col))
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < n and text[i] not in " \t\r\n;()":
                i += 1
                col += 1
            tokens.append(_Token(text[start:i], line, start_col))
    return tokens


_SExpr = Union[_Token, list]


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def _error(self, message: str, tok: _Token | None = None) -> TBoxSyntaxError:
        if tok is None:
            if self.tokens:
                last = self.tokens[-1]
                return TBoxSyntaxError(message, last.line, last.column)
            return TBoxSyntaxError(message, 1, 1)
        return TBoxSyntaxError(message, tok.line, tok.column)

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> _Token:
        tok = self._peek()
        if tok is None:
            raise self._error("unexpected end of input")
        self.pos += 1
        return tok

    def sexpr(self) -> _SExpr:
        tok = self._next()
        if tok.text == "(":
            items: list[_SExpr] = []
            while True:
                nxt = self._peek()
                if nxt is None:
                    raise self._error("unclosed parenthesis", tok)
                if nxt.text == ")":
                    self.pos += 1
                    return items
                items.append(self.sexpr())
        if tok.text == ")":
            raise self._error("unexpected ')'", tok)
        return tok


def _head(sx: _SExpr) -> _Token:
    if not isinstance(sx, list) or not sx or not isinstance(sx[0], _Token):
        raise _position_error("expected an operator expression", sx)
    return sx[0]


def _position_error(message: str, sx: _SExpr) -> TBoxSyntaxError:
    if isinstance(sx, _Token):
        return TBoxSyntaxError(message, sx.line, sx.column)
    if sx and isinstance(sx[0], _Token):
        return TBoxSyntaxError(message, sx[0].line, sx[0].column)
    return TBoxSyntaxError(message, 1, 1)


def _parse_role(sx: _SExpr) -> Role:
    if isinstance(sx, _Token):
        return Role(sx.text)
    head = _head(sx)
    if head.text != "inv":
        raise _position_error(f"unknown role operator '{head.text}'", sx)
    if len(sx) != 2 or not isinstance(sx[1], _Token):
        raise _position_error("'inv' takes a single role name", sx)
    return Role(sx[1].text, inverted=True)


def _parse_concept(sx: _SExpr) -> Concept:
    if isinstance(sx, _Token):
        if sx.text == "top":
            return TOP
        if sx.text == "bottom":
            return BOTTOM
        return Atom(sx.text)
    head = _head(sx)
    op = head.text
    body = sx[1:]
    if op == "not":
        if len(body) != 1:
            raise _position_error("'not' takes one argument", sx)
        return Not(_parse_concept(body[0]))
    if op in ("and", "or"):
        if len(body) < 1:
            raise _position_error(f"'{op}' needs at least one argument", sx)
        args = [_parse_concept(b) for b in body]
        return mk_and(args) if op == "and" else mk_or(args)
    if op in ("some", "all"):
        if len(body) != 2:
            raise _position_error(f"'{op}' takes a role and a concept", sx)
        role = _parse_role(body[0])
        filler = _parse_concept(body[1])
        return Exists(role, filler) if op == "some" else Forall(role, filler)
    raise _position_error(f"unknown operator '{op}'", sx)


def _parse_axiom(sx: _SExpr) -> Axiom:
    head = _head(sx)
    op = head.text
    body = sx[1:]
    if op in ("define-primitive-concept", "define-concept"):
        if len(body) != 2 or not isinstance(body[0], _Token):
            raise _position_error(f"'{op}' takes a concept name and a concept", sx)
        lhs: Concept = Atom(body[0].text)
        rhs = _parse_concept(body[1])
        return Sub(lhs, rhs) if op == "define-primitive-concept" else Eq(lhs, rhs)
    if op in ("implies", "equal"):
        if len(body) != 2:
            raise _position_error(f"'{op}' takes two concepts", sx)
        lhs = _parse_concept(body[0])
        rhs = _parse_concept(body[1])
        return Sub(lhs, rhs) if op == "implies" else Eq(lhs, rhs)
    raise _position_error(f"unknown axiom form '{op}'", sx)


def parse_tbox(text: str) -> TBox:
    """Parse a terminology, preserving textual axiom order."""
    parser = _Parser(text)
    axioms = []
    while parser._peek() is not None:
        axioms.append(_parse_axiom(parser.sexpr()))
    return tbox(axioms)


def parse_concept(text: str) -> Concept:
    """Parse a single concept expression."""
    parser = _Parser(text)
    sx = parser.sexpr()
    c = _parse_concept(sx)
    trailing = parser._peek()
    if trailing is not None:
        raise TBoxSyntaxError("trailing input after concept", trailing.line, trailing.column)
    return c


def render_concept(c: Concept) -> str:
    return str(c)


def render_axiom(ax: Axiom) -> str:
    if isinstance(ax, Sub) and isinstance(ax.lhs, Atom):
        return f"(define-primitive-concept {ax.lhs.name} {ax.rhs})"
    if isinstance(ax, Eq) and isinstance(ax.lhs, Atom):
        return f"(define-concept {ax.lhs.name} {ax.rhs})"
    if isinstance(ax, Sub):
        return f"(implies {ax.lhs} {ax.rhs})"
    return f"(equal {ax.lhs} {ax.rhs})"


def render_tbox(t: TBox) -> str:
    return "\n".join(render_axiom(ax) for ax in t) + ("\n" if len(t) else "")

# -*- coding: utf-8 -*-
"""
Recursive descent parser for ordinal and space expressions.

Ordinals:
    Ord  := Prod ('+' Prod)*
    Prod := Atom ('*' nat)?
    Atom := 'w' ('^' Atom)? | nat | '(' Ord ')'

Spaces:
    Space := SProd ('(+)' SProd)*
    SProd := SAtom ('x' SAtom)*
    SAtom := 'can(' Ord ',' nat ')' | 'D(' Space ')' | 'D[' Ord '](' Space ')'
           | '(' Space ')' | 'empty'

``cantor ord`` input:
    OrdExpr := Ord ('(+)' Ord)*      folded with the natural sum

'ω' is accepted for 'w'. Ordinal sums are normalized by ordinal addition, so
non-canonical input such as ``w + w^2`` is accepted. See docs/grammar.md.
"""

import re
from dataclasses import dataclass
from typing import Callable, List, Optional, Union

from core.errors import CantorError
from core.ordinal_cnf import ONE, Ordinal, add, from_natural, mul, natural_sum, omega_pow
from core.space_algebra import EMPTY, CanonicalSpace
from core.space_expr import Canonical, Derivative, DisjointUnion, IteratedDerivative, Product, SpaceExpr

MAX_NESTING = 100
# int() refuses longer decimal strings by default
MAX_DIGITS = 4000

_TOKEN_PATTERN = re.compile(
    r"(?P<space>\s+)"
    r"|(?P<nsum>\(\+\))"
    r"|(?P<nat>[0-9]+)"
    # keywords first, so "xcan" reads as x can
    r"|(?P<word>can|empty|[Dxwω]|[A-Za-z_]+)"
    r"|(?P<punct>[()\[\],+*^])"
)

_WORDS = {"w": "w", "ω": "w", "can": "can", "D": "D", "x": "x", "empty": "empty"}

_DESCRIPTIONS = {
    "nsum": "'(+)'",
    "nat": "natural number",
    "end": "end of input",
}


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets [start, end) into the UTF-8 encoded input"""

    start: int
    end: int


class ParseError(CantorError):
    """Malformed expression text"""

    error_code = "parse"

    def __init__(self, span: SourceSpan, expected: str, found: str, source: str = ""):
        self.span = span
        self.expected = expected
        self.found = found
        self.source = source
        super().__init__(
            f"expected {expected}, found {found}",
            details={"start": span.start, "end": span.end, "expected": expected, "found": found},
        )

    def line_col(self):
        prefix = self.source.encode("utf-8")[: self.span.start].decode("utf-8", errors="replace")
        line = prefix.count("\n") + 1
        col = len(prefix) - (prefix.rfind("\n") + 1) + 1
        return line, col

    def render(self) -> str:
        """``line:col: expected X, found Y`` followed by the source line and a caret line"""
        line, col = self.line_col()
        header = f"{line}:{col}: expected {self.expected}, found {self.found}"
        if not self.source:
            return header
        source_line = self.source.split("\n")[line - 1]
        width = len(
            self.source.encode("utf-8")[self.span.start : self.span.end].decode("utf-8", errors="replace")
        )
        return f"{header}\n{source_line}\n{' ' * (col - 1)}{'^' * max(width, 1)}"


class Token:
    def __init__(self, kind: str, text: str, start: int, end: int):
        self.kind = kind
        self.text = text
        self.start = start
        self.end = end

    def describe(self) -> str:
        if self.kind == "end":
            return "end of input"
        if self.kind == "nat":
            return f"number {self.text}"
        return f"'{self.text}'"

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r})"


def _byte_offsets(text: str) -> List[int]:
    offsets = [0]
    for ch in text:
        offsets.append(offsets[-1] + len(ch.encode("utf-8")))
    return offsets


def tokenize(text: str) -> List[Token]:
    offsets = _byte_offsets(text)
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_PATTERN.match(text, pos)
        if match is None:
            span = SourceSpan(offsets[pos], offsets[pos + 1])
            raise ParseError(span, "an expression", f"'{text[pos]}'", text)
        kind = match.lastgroup
        value = match.group()
        if kind == "word":
            if value not in _WORDS:
                span = SourceSpan(offsets[pos], offsets[match.end()])
                raise ParseError(span, "'w', 'can', 'D', 'x' or 'empty'", f"'{value}'", text)
            kind = _WORDS[value]
        elif kind == "punct":
            kind = value
        if kind != "space":
            tokens.append(Token(kind, value, offsets[pos], offsets[match.end()]))
        pos = match.end()
    tokens.append(Token("end", "", offsets[-1], offsets[-1]))
    return tokens


class ExprParser:
    """One parse over a token list; ``depth`` bounds nesting"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.depth = 0

    # helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, expected: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(SourceSpan(token.start, token.end), expected, token.describe(), self.text)

    def accept(self, kind: str) -> Optional[Token]:
        if self.current.kind == kind:
            token = self.current
            self.pos += 1
            return token
        return None

    def expect(self, kind: str, description: Optional[str] = None) -> Token:
        token = self.accept(kind)
        if token is None:
            raise self.error(description or _DESCRIPTIONS.get(kind, f"'{kind}'"))
        return token

    def finish(self):
        if self.current.kind != "end":
            raise self.error("end of input")

    def nested(self, rule: Callable):
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise self.error(f"at most {MAX_NESTING} levels of nesting")
        try:
            return rule()
        finally:
            self.depth -= 1

    def natural(self) -> int:
        token = self.expect("nat")
        if len(token.text) > MAX_DIGITS:
            raise self.error(f"a number of at most {MAX_DIGITS} digits", token)
        return int(token.text)

    # ordinals

    def ordinal(self) -> Ordinal:
        value = self.product()
        while self.accept("+"):
            value = add(value, self.product())
        return value

    def product(self) -> Ordinal:
        value = self.atom()
        if self.accept("*"):
            token = self.current
            coefficient = self.natural()
            if coefficient == 0:
                raise self.error("a positive coefficient", token)
            value = mul(value, from_natural(coefficient))
        return value

    def atom(self) -> Ordinal:
        if self.accept("w"):
            if self.accept("^"):
                return omega_pow(self.nested(self.atom))
            return omega_pow(ONE)
        if self.current.kind == "nat":
            return from_natural(self.natural())
        if self.accept("("):
            value = self.nested(self.ordinal)
            self.expect(")", "')'")
            return value
        raise self.error("'w', a natural number or '('")

    def ordinal_expression(self) -> Ordinal:
        value = self.ordinal()
        while self.accept("nsum"):
            value = natural_sum(value, self.ordinal())
        return value

    # spaces

    def space(self) -> SpaceExpr:
        value = self.space_product()
        while self.accept("nsum"):
            value = DisjointUnion(value, self.space_product())
        return value

    def space_product(self) -> SpaceExpr:
        value = self.space_atom()
        while self.accept("x"):
            value = Product(value, self.space_atom())
        return value

    def space_atom(self) -> SpaceExpr:
        if self.accept("empty"):
            return Canonical(EMPTY)
        if self.accept("can"):
            self.expect("(", "'('")
            cb_star = self.nested(self.ordinal)
            self.expect(",", "','")
            token = self.current
            degree = self.natural()
            if degree == 0:
                raise self.error("a positive degree", token)
            self.expect(")", "')'")
            return Canonical(CanonicalSpace(cb_star, degree))
        if self.accept("D"):
            order = None
            if self.accept("["):
                order = self.nested(self.ordinal)
                self.expect("]", "']'")
            self.expect("(", "'('")
            inner = self.nested(self.space)
            self.expect(")", "')'")
            return Derivative(inner) if order is None else IteratedDerivative(inner, order)
        if self.accept("("):
            inner = self.nested(self.space)
            self.expect(")", "')'")
            return inner
        raise self.error("'can(', 'D', 'empty' or '('")


def _decode(text: Union[str, bytes]) -> str:
    if isinstance(text, str):
        return text
    try:
        return text.decode("utf-8")
    except UnicodeDecodeError as e:
        found = f"byte 0x{text[e.start]:02x}"
        raise ParseError(SourceSpan(e.start, e.end), "UTF-8 text", found) from e


def _run(text: Union[str, bytes], rule: str):
    source = _decode(text)
    parser = ExprParser(source)
    try:
        value = getattr(parser, rule)()
    except RecursionError as e:
        end = len(source.encode("utf-8"))
        raise ParseError(SourceSpan(0, end), "shallower nesting", "too deeply nested input", source) from e
    parser.finish()
    return value


def parse_ordinal(text: Union[str, bytes]) -> Ordinal:
    return _run(text, "ordinal")


def parse_space(text: Union[str, bytes]) -> SpaceExpr:
    return _run(text, "space")


def parse_ordinal_expression(text: Union[str, bytes]) -> Ordinal:
    """Ordinals joined by '(+)', combined with the natural (Hessenberg) sum"""
    return _run(text, "ordinal_expression")


__all__ = [
    "SourceSpan",
    "ParseError",
    "Token",
    "tokenize",
    "ExprParser",
    "parse_ordinal",
    "parse_space",
    "parse_ordinal_expression",
]

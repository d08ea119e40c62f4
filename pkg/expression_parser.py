#!/usr/bin/env python3
"""
Expression Parser

Reads the end-space term syntax, e.g. "conv(cantor(p), scat(w+1, 2, np))",
and renders terms back to it.
"""

from typing import Callable, Dict, List

from endspace import EMPTY, Cantor, Conv, Label, Pt, Scat, SpaceExpr, Sum, ensure_valid
from errors import ParseError
from ordinal import OrdinalParser

LABELS: Dict[str, Label] = {"p": Label.P, "np": Label.NP, "no": Label.NO}


class ExpressionParser:
    """Recursive descent parser over the term syntax"""

    def __init__(self, text: str):
        self.text = text
        self.position = 0
        self.handlers: Dict[str, Callable[[], SpaceExpr]] = {
            "pt": lambda: Pt(self.label()),
            "cantor": lambda: Cantor(self.label()),
            "scat": self.scat,
            "sum": self.sum,
            "conv": self.conv,
        }

    def parse(self) -> SpaceExpr:
        """Parse the whole text as one term"""
        expr = self.expr()
        self.skip_spaces()
        if self.position != len(self.text):
            raise ParseError(f"unexpected {self.text[self.position]!r}", self.position)
        return expr

    def expr(self) -> SpaceExpr:
        start = self.skip_spaces()
        word = self.word()
        if word == "empty":
            return EMPTY
        handler = self.handlers.get(word)
        if handler is None:
            found = repr(word or self.text[start:start + 1]) if start < len(self.text) else "end of input"
            raise ParseError(f"expected a term, found {found}", start)
        self.expect("(")
        expr = handler()
        self.expect(")")
        return expr

    def scat(self) -> SpaceExpr:
        alpha, self.position = OrdinalParser(self.text).parse_at(self.position)
        self.expect(",")
        n = self.integer()
        self.expect(",")
        return Scat(alpha, n, self.label())

    def sum(self) -> SpaceExpr:
        parts: List[SpaceExpr] = [self.expr()]
        while self.peek() == ",":
            self.position += 1
            parts.append(self.expr())
        return Sum(*parts)

    def conv(self) -> SpaceExpr:
        body = self.expr()
        self.expect(",")
        return Conv(body, self.expr())

    def label(self) -> Label:
        start = self.skip_spaces()
        word = self.word()
        if word not in LABELS:
            raise ParseError(f"expected a label p, np or no, found {word!r}", start)
        return LABELS[word]

    def integer(self) -> int:
        start = self.skip_spaces()
        while self.position < len(self.text) and self.text[self.position].isdigit():
            self.position += 1
        if start == self.position:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.position])

    def word(self) -> str:
        start = self.position
        while self.position < len(self.text) and self.text[self.position].isalpha():
            self.position += 1
        return self.text[start:self.position].lower()

    def peek(self) -> str:
        self.skip_spaces()
        return self.text[self.position] if self.position < len(self.text) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise ParseError(f"expected {char!r}, found {found}", self.position)
        self.position += 1

    def skip_spaces(self) -> int:
        while self.position < len(self.text) and self.text[self.position].isspace():
            self.position += 1
        return self.position


def parse_expr(text: str) -> SpaceExpr:
    """Parse and validate a term"""
    return ensure_valid(ExpressionParser(text).parse())


def render_expr(e: SpaceExpr) -> str:
    return str(e)

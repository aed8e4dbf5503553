"""Text format for scheme expressions.

Grammar (whitespace-insensitive)::

    scheme  := "SpecZ" | "SpecOF(" field ")" | "SpecF(" int ")" | "A1(" int ")"
             | "Curve(" int ";" intlist ")"
             | "remove(" scheme ";" targets ")"
             | "union(" [scheme {"," scheme}] ")"
             | "glue(" scheme "@" point "," scheme "@" point ")"
    field   := "Q" | "Quad(" int ")" | "Cyclo(" int ")" | "CycloPlus(" int ")"
             | "Abelian(" int ";" [intlist] ")"
    targets := int {"," int} | "deg" int {"," ["deg"] int}
    point   := "p=" int ["#" int] | "deg=" int

Curve coefficients are listed low degree first, constant term included.
Semicolons separate argument groups, commas separate list items; one token
of lookahead decides every production.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DSLSyntaxError, SourceSpan
from .fields import AbelianByModulus, Cyclotomic, CyclotomicReal, Quadratic, RationalField
from .scheme import (
    AffineLine,
    Curve,
    CurvePoint,
    Disjoint,
    FiberOver,
    Glue,
    NumberRing,
    SchemeExpr,
    SpecFq,
    normalize,
    remove_points,
)

_TOKEN = re.compile(r"(?P<int>-?\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<punct>[();,@=#])")


@dataclass
class Token:
    kind: str  # "int", "name", "punct", "eof"
    text: str
    start: int
    end: int


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[Token] = []
        pos, n = 0, len(text)
        while True:
            while pos < n and text[pos].isspace():
                pos += 1
            if pos >= n:
                break
            m = _TOKEN.match(text, pos)
            if m is None:
                raise DSLSyntaxError(f"unexpected character {text[pos]!r}", self.span(pos, pos + 1))
            kind = m.lastgroup
            self.tokens.append(Token(kind, m.group(), pos, m.end()))
            pos = m.end()
        self.tokens.append(Token("eof", "", n, n))

    def span(self, start: int, end: int) -> SourceSpan:
        line = self.text.count("\n", 0, start) + 1
        col = start - (self.text.rfind("\n", 0, start) + 1) + 1
        bstart = len(self.text[:start].encode("utf-8"))
        bend = bstart + len(self.text[start:end].encode("utf-8"))
        return SourceSpan(bstart, bend, line, col)


class _Parser:
    def __init__(self, text: str):
        self.lexer = _Lexer(text)
        self.tokens = self.lexer.tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str) -> DSLSyntaxError:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        return DSLSyntaxError(f"{msg}, found {found}", self.lexer.span(t.start, t.end))

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("punct", "name") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise self.error(f"expected {text!r}")

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.error("expected an integer")
        v = int(self.tok.text)
        self.i += 1
        return v

    def intlist(self, allow_empty: bool = False) -> list[int]:
        if allow_empty and self.tok.kind != "int":
            return []
        out = [self.integer()]
        while self.accept(","):
            out.append(self.integer())
        return out

    def name(self) -> str:
        if self.tok.kind != "name":
            raise self.error("expected a scheme constructor")
        v = self.tok.text
        self.i += 1
        return v

    # scheme := ...
    def scheme(self) -> SchemeExpr:
        head = self.tok
        kw = self.name()
        if kw == "SpecZ":
            return NumberRing(RationalField())
        if kw == "SpecOF":
            self.expect("(")
            f = self.field()
            self.expect(")")
            return NumberRing(f)
        if kw in ("SpecF", "A1"):
            self.expect("(")
            q = self.integer()
            self.expect(")")
            return SpecFq(q) if kw == "SpecF" else AffineLine(q)
        if kw == "Curve":
            self.expect("(")
            q = self.integer()
            self.expect(";")
            coeffs = self.intlist()
            self.expect(")")
            return Curve(q, tuple(coeffs))
        if kw == "remove":
            self.expect("(")
            inner = self.scheme()
            self.expect(";")
            primes, degrees = self.targets()
            self.expect(")")
            return remove_points(inner, primes=primes, degrees=degrees)
        if kw == "union":
            self.expect("(")
            parts = []
            if not self.accept(")"):
                parts.append(self.scheme())
                while self.accept(","):
                    parts.append(self.scheme())
                self.expect(")")
            return Disjoint(tuple(parts))
        if kw == "glue":
            self.expect("(")
            left = self.scheme()
            self.expect("@")
            lsel = self.point()
            self.expect(",")
            right = self.scheme()
            self.expect("@")
            rsel = self.point()
            self.expect(")")
            return Glue(left, right, lsel, rsel)
        raise DSLSyntaxError(f"unknown scheme constructor {kw!r}", self.lexer.span(head.start, head.end))

    def field(self):
        head = self.tok
        kw = self.name()
        if kw == "Q":
            return RationalField()
        if kw in ("Quad", "Cyclo", "CycloPlus"):
            self.expect("(")
            v = self.integer()
            self.expect(")")
            return {"Quad": Quadratic, "Cyclo": Cyclotomic, "CycloPlus": CyclotomicReal}[kw](v)
        if kw == "Abelian":
            self.expect("(")
            m = self.integer()
            self.expect(";")
            gens = self.intlist(allow_empty=True)
            self.expect(")")
            return AbelianByModulus(m, tuple(gens))
        raise DSLSyntaxError(f"unknown field {kw!r}", self.lexer.span(head.start, head.end))

    def targets(self) -> tuple[list[int], list[int]]:
        if self.accept("deg"):
            self.accept("=")
            degrees = [self.integer()]
            while self.accept(","):
                if self.accept("deg"):
                    self.accept("=")
                degrees.append(self.integer())
            return [], degrees
        return self.intlist(), []

    def point(self):
        if self.accept("p"):
            self.expect("=")
            p = self.integer()
            index = self.integer_after("#")
            return FiberOver(p, index)
        if self.accept("deg"):
            self.expect("=")
            return CurvePoint(self.integer())
        raise self.error("expected a point 'p=' or 'deg='")

    def integer_after(self, sep: str) -> int:
        return self.integer() if self.accept(sep) else 0


def parse(text: str) -> SchemeExpr:
    """Parse DSL text into a normalized scheme expression."""
    p = _Parser(text)
    expr = p.scheme()
    if p.tok.kind != "eof":
        raise p.error("expected end of input")
    return normalize(expr)


def _field_text(f) -> str:
    if isinstance(f, RationalField):
        return "Q"
    if isinstance(f, Quadratic):
        return f"Quad({f.D})"
    if isinstance(f, Cyclotomic):
        return f"Cyclo({f.m})"
    if isinstance(f, CyclotomicReal):
        return f"CycloPlus({f.m})"
    if isinstance(f, AbelianByModulus):
        return f"Abelian({f.m}; {', '.join(map(str, f.H))})" if f.H else f"Abelian({f.m};)"
    raise TypeError(repr(f))


def _point_text(sel) -> str:
    if isinstance(sel, FiberOver):
        return f"p={sel.p}#{sel.index}" if sel.index else f"p={sel.p}"
    return f"deg={sel.degree}"


def to_text(expr: SchemeExpr) -> str:
    """Canonical text for a normalized expression; parse(to_text(e)) == e."""
    if isinstance(expr, NumberRing):
        base = "SpecZ" if isinstance(expr.field, RationalField) else f"SpecOF({_field_text(expr.field)})"
        if expr.removed:
            return f"remove({base}; {', '.join(map(str, sorted(expr.removed)))})"
        return base
    if isinstance(expr, SpecFq):
        return f"SpecF({expr.q})"
    if isinstance(expr, AffineLine):
        return f"A1({expr.q})"
    if isinstance(expr, Curve):
        base = f"Curve({expr.q}; {', '.join(map(str, expr.numerator))})"
        if expr.removed:
            return f"remove({base}; deg {', '.join(map(str, expr.removed))})"
        return base
    if isinstance(expr, Disjoint):
        return f"union({', '.join(to_text(p) for p in expr.parts)})"
    if isinstance(expr, Glue):
        return (
            f"glue({to_text(expr.left)}@{_point_text(expr.left_sel)}, "
            f"{to_text(expr.right)}@{_point_text(expr.right_sel)})"
        )
    raise TypeError(f"not a scheme expression: {expr!r}")


print_expr = to_text

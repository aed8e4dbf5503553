"""Exception hierarchy.

Every exception carries a ``code``: the stable error name printed by the
command line front end and matched by callers that script against it.
"""

from __future__ import annotations


class ZetaCheckError(Exception):
    code = "ZetaCheckError"

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


# scheme model
class SchemeError(ZetaCheckError):
    code = "SchemeError"


class InvalidField(SchemeError):
    code = "InvalidField"


class InvalidCurve(SchemeError):
    code = "InvalidCurve"


class GlueMismatch(SchemeError):
    code = "GlueMismatch"


class MissingPoint(SchemeError):
    code = "MissingPoint"


class InvalidRemoval(SchemeError):
    code = "InvalidRemoval"


class NonNegativeWeight(ZetaCheckError, ValueError):
    code = "NonNegativeWeight"


# numerics
class PrecisionUnachievable(ZetaCheckError):
    code = "PrecisionUnachievable"


class NotAVanishingPoint(ZetaCheckError):
    code = "NotAVanishingPoint"


# zeta engine
class ExactUnavailable(ZetaCheckError):
    code = "ExactUnavailable"


class InternalInconsistency(ZetaCheckError):
    code = "InternalInconsistency"


# cohomology ledger
class MalformedData(ZetaCheckError):
    code = "MalformedData"


class InconsistentWithStructure(ZetaCheckError):
    code = "InconsistentWithStructure"


class WeightMismatch(ZetaCheckError):
    code = "WeightMismatch"


class IncompleteProfile(ZetaCheckError):
    code = "IncompleteProfile"


class NonIntegralT1(ZetaCheckError):
    code = "NonIntegralT1"


class RegulatorRequired(ZetaCheckError):
    code = "RegulatorRequired"


class OrderMismatch(ZetaCheckError):
    code = "OrderMismatch"


# DSL
class SourceSpan:
    """Location of a token: byte offsets plus 1-based line and column."""

    __slots__ = ("start", "end", "line", "column")

    def __init__(self, start: int, end: int, line: int, column: int):
        if start > end:
            raise ValueError("span start after end")
        self.start = start
        self.end = end
        self.line = line
        self.column = column

    def __repr__(self) -> str:
        return f"SourceSpan({self.start}, {self.end}, line={self.line}, column={self.column})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SourceSpan):
            return NotImplemented
        return (self.start, self.end, self.line, self.column) == (
            other.start,
            other.end,
            other.line,
            other.column,
        )


class DSLSyntaxError(ZetaCheckError):
    code = "SyntaxError"

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} (line {span.line}, column {span.column})")
        self.message = message
        self.span = span

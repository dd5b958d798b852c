"""Text grammar for scalars, vectors and matrices.

Scalars (whitespace-insensitive)::

    scalar   := ['-'] term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := ['-'] primary ['^' integer]
    primary  := rational | 't' | '(' scalar ')'
    rational := digits ['/' digits]          (a plain quotient of integers)
    integer  := ['-' | '+'] digits

This is a superset of the documented form ``t^m*(num)/(den)``: unary minus
and ``^`` on parenthesised groups are accepted.  Matrices are rows separated
by ``;`` with entries separated by ``,``; a vector is a one-row matrix.
"""

from __future__ import annotations

import re

from .errors import ScalarDomainError, ScalarSyntaxError
from .fields import QQ, CoefficientField
from .scalar import LaurentScalar, t_power

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace remains
            break
        if m.group(1) is not None:
            toks.append(("int", m.group(1), m.start(1)))
        else:
            ch = m.group(2)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "t^+-*/()":
                raise ScalarSyntaxError(f"unexpected character {ch!r}", m.start(2))
            toks.append((ch, ch, m.start(2)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, field: CoefficientField):
        self.toks = _tokenize(text)
        self.i = 0
        self.field = field

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, kind: str | None = None) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "a number" if kind == "int" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ScalarSyntaxError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def scalar(self) -> LaurentScalar:
        neg = False
        if self.peek()[0] == "-":
            self.take()
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> LaurentScalar:
        acc = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.factor()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs:
                    raise ScalarDomainError(f"denominator is identically zero (col {pos + 1})")
                acc = acc / rhs
        return acc

    def factor(self) -> LaurentScalar:
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        base = self.primary()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            e = self.integer()
            if e < 0 and not base:
                raise ScalarDomainError(f"negative power of zero (col {pos + 1})")
            base = base ** e
        return base

    def integer(self) -> int:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        return sign * int(self.take("int")[1])

    def primary(self) -> LaurentScalar:
        kind, text, pos = self.peek()
        if kind == "int":
            self.take()
            return LaurentScalar.constant(int(text), self.field)
        if kind == "t":
            self.take()
            return t_power(1, self.field)
        if kind == "(":
            self.take()
            inner = self.scalar()
            self.take(")")
            return inner
        got = "end of input" if kind == "end" else repr(text)
        raise ScalarSyntaxError(f"expected a number, 't' or '(', found {got}", pos)


def parse_scalar(text: str, field: CoefficientField = QQ) -> LaurentScalar:
    """Parse and canonicalize one scalar; errors carry the character position."""
    p = _Parser(text, field)
    try:
        value = p.scalar()
    except ZeroDivisionError as exc:  # e.g. a rational with denominator divisible by p
        raise ScalarDomainError(str(exc)) from None
    kind, txt, pos = p.peek()
    if kind != "end":
        raise ScalarSyntaxError(f"unexpected {txt!r} after complete scalar", pos)
    return value


def _shift_error(exc: ScalarSyntaxError, offset: int) -> ScalarSyntaxError:
    pos = None if exc.position is None else exc.position + offset
    msg = exc.message
    return ScalarSyntaxError(msg, pos)


def parse_row(text: str, field: CoefficientField = QQ) -> list[LaurentScalar]:
    out = []
    offset = 0
    for piece in text.split(","):
        try:
            out.append(parse_scalar(piece, field))
        except ScalarSyntaxError as exc:
            raise _shift_error(exc, offset) from None
        offset += len(piece) + 1
    return out


def parse_rows(text: str, field: CoefficientField = QQ) -> list[list[LaurentScalar]]:
    """``"a, b; c, d"`` -> ``[[a, b], [c, d]]``; empty/blank text gives ``[]``."""
    if not text.strip():
        return []
    rows = []
    offset = 0
    for piece in text.split(";"):
        try:
            rows.append(parse_row(piece, field))
        except ScalarSyntaxError as exc:
            raise _shift_error(exc, offset) from None
        offset += len(piece) + 1
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ScalarSyntaxError(f"ragged rows: lengths {sorted(widths)}")
    return rows


def format_rows(rows) -> str:
    return "; ".join(", ".join(str(x) for x in row) for row in rows)

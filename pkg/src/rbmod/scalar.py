"""Exact elements of A = k((t)) and the Rota-Baxter projection P onto k[[t]].

Every nonzero scalar is stored as ``t^val * num(t) / den(t)`` with
``num(0) != 0``, ``den(0) == 1`` and ``gcd(num, den) == 1``.  That form is
unique, so structural equality is value equality and the valuation is read off
directly.  Only rational functions regular away from t = 0 are representable;
this subfield of k((t)) is closed under the field operations, under P and under
the singular part, which is all the classification needs.

P is the projection of A = k[[t]] + t^-1 k[t^-1] onto the first summand.  It
satisfies the Rota-Baxter identity

    P(x)P(y) = P(P(x)y) + P(xP(y)) + lam*P(xy)

with weight lam = -1 (take x = t^-1, y = t to see that no other weight works).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import ScalarDivisionByZero, ScalarDomainError
from .fields import QQ, CoefficientField

#: weight of the Rota-Baxter identity satisfied by P
RB_WEIGHT = -1


def _low_order(poly) -> int:
    for i, c in enumerate(poly.coeffs()):
        if c != 0:
            return i
    raise ValueError("zero polynomial has no low order")


def _poly_terms(poly) -> list[tuple[int, object]]:
    return [(i, c) for i, c in enumerate(poly.coeffs()) if c != 0]


def format_poly(field: CoefficientField, poly) -> str:
    """Ascending-order text for a polynomial in t, e.g. ``1 - 2*t + 1/3*t^2``."""
    out = []
    for i, c in _poly_terms(poly):
        if field.characteristic:
            neg, mag = False, field.format(c)
        else:
            neg, mag = c < 0, field.format(-c if c < 0 else c)
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) if out else "0"


class LaurentScalar:
    """An element ``t^val * num/den`` of k((t)); immutable and hashable."""

    __slots__ = ("field", "val", "num", "den", "_hash")

    def __init__(self, field: CoefficientField, val: int, num, den):
        # trusted constructor: callers guarantee canonical form
        self.field = field
        self.val = val
        self.num = num
        self.den = den
        self._hash = None

    # -- construction -------------------------------------------------------
    @classmethod
    def from_polys(cls, num, den=None, shift: int = 0, field: CoefficientField = QQ) -> "LaurentScalar":
        """Canonicalize ``t^shift * num/den`` (``den`` may contain powers of t)."""
        if den is None:
            den = field.one_poly
        if den.is_zero():
            raise ScalarDomainError("denominator is identically zero")
        if num.is_zero():
            return zero(field)
        k = _low_order(num)
        if k:
            num = num.right_shift(k)
            shift += k
        k = _low_order(den)
        if k:
            den = den.right_shift(k)
            shift -= k
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
        c = den[0]
        if c != 1:
            inv = c ** -1
            num = num * inv
            den = den * inv
        return cls(field, shift, num, den)

    @classmethod
    def from_terms(cls, terms: dict[int, object] | Iterable[tuple[int, object]],
                   field: CoefficientField = QQ) -> "LaurentScalar":
        """Laurent polynomial ``sum c_e t^e`` from an exponent -> coefficient map."""
        items = dict(terms).items() if not isinstance(terms, dict) else terms.items()
        items = [(e, field(c)) for e, c in items]
        items = [(e, c) for e, c in items if c != 0]
        if not items:
            return zero(field)
        lo = min(e for e, _ in items)
        hi = max(e for e, _ in items)
        coeffs = [field.zero] * (hi - lo + 1)
        for e, c in items:
            coeffs[e - lo] += c
        return cls.from_polys(field.poly(coeffs), None, lo, field)

    @classmethod
    def constant(cls, c, field: CoefficientField = QQ) -> "LaurentScalar":
        c = field(c)
        if c == 0:
            return zero(field)
        return cls(field, 0, field.poly([c]), field.one_poly)

    @classmethod
    def monomial(cls, c, e: int, field: CoefficientField = QQ) -> "LaurentScalar":
        c = field(c)
        if c == 0:
            return zero(field)
        return cls(field, e, field.poly([c]), field.one_poly)

    # -- predicates / accessors --------------------------------------------
    @property
    def zero_flag(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def valuation(self) -> float | int:
        return math.inf if self.num.is_zero() else self.val

    def leading_coefficient(self):
        """Coefficient of ``t^val`` in the expansion (zero for 0)."""
        return self.field.zero if self.num.is_zero() else self.num[0]

    @property
    def size(self) -> int:
        """deg num + deg den: the pivot heuristic of the elimination routines."""
        if self.num.is_zero():
            return 0
        return self.num.degree() + self.den.degree()

    def is_integral(self) -> bool:
        """Membership in O = k[[t]]."""
        return self.num.is_zero() or self.val >= 0

    def is_laurent_polynomial(self) -> bool:
        return self.num.is_zero() or self.den.is_one()

    def in_polys_of_tinv(self) -> bool:
        """Membership in k[t^-1]."""
        if self.num.is_zero():
            return True
        return self.den.is_one() and self.val + self.num.degree() <= 0

    def unit_part(self) -> "LaurentScalar":
        """``num/den``: the O-unit with ``self = t^val * unit``."""
        if self.num.is_zero():
            raise ScalarDomainError("zero has no unit part")
        return LaurentScalar(self.field, 0, self.num, self.den)

    def shift(self, e: int) -> "LaurentScalar":
        """Multiply by ``t^e``."""
        if self.num.is_zero() or e == 0:
            return self
        return LaurentScalar(self.field, self.val + e, self.num, self.den)

    def _check(self, other) -> "LaurentScalar":
        if isinstance(other, LaurentScalar):
            if other.field is not self.field and other.field != self.field:
                raise TypeError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return LaurentScalar.constant(other, self.field)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        a, b = (self, other) if self.val <= other.val else (other, self)
        d = b.val - a.val
        if a.den == b.den:
            num = a.num + b.num.left_shift(d)
            den = a.den
        else:
            num = a.num * b.den + (b.num * a.den).left_shift(d)
            den = a.den * b.den
        return LaurentScalar.from_polys(num, den, a.val, self.field)

    __radd__ = __add__

    def __neg__(self):
        if self.num.is_zero():
            return self
        return LaurentScalar(self.field, self.val, -self.num, self.den)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return self
        if other.num.is_zero():
            return other
        u1, w1, u2, w2 = self.num, self.den, other.num, other.den
        if not w2.is_one():
            g = u1.gcd(w2)
            if not g.is_one():
                u1, w2 = u1 // g, w2 // g
        if not w1.is_one():
            g = u2.gcd(w1)
            if not g.is_one():
                u2, w1 = u2 // g, w1 // g
        num, den = u1 * u2, w1 * w2
        c = den[0]
        if c != 1:
            inv = c ** -1
            num, den = num * inv, den * inv
        return LaurentScalar(self.field, self.val + other.val, num, den)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentScalar":
        if self.num.is_zero():
            raise ScalarDivisionByZero("division by the zero scalar")
        c = self.num[0]
        inv = c ** -1
        return LaurentScalar(self.field, -self.val, self.den * inv, self.num * inv)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out = LaurentScalar.constant(1, self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.constant(other, self.field)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return self.num.is_zero() and other.num.is_zero()
        return (self.field == other.field and self.val == other.val
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            if self.num.is_zero():
                self._hash = hash((self.field.characteristic, "zero"))
            else:
                self._hash = hash((self.field.characteristic, self.val,
                                   tuple(self.num.coeffs()), tuple(self.den.coeffs())))
        return self._hash

    # -- series -------------------------------------------------------------
    def series_coefficients(self, count: int) -> list:
        """First ``count`` power-series coefficients of the unit part ``num/den``."""
        return _unit_series(self.field, self.num, self.den, count)

    def coefficient(self, e: int):
        if self.num.is_zero() or e < self.val:
            return self.field.zero
        return self.series_coefficients(e - self.val + 1)[-1]

    def __str__(self) -> str:
        if self.num.is_zero():
            return "0"
        prefix = "" if not self.val else ("t" if self.val == 1 else f"t^{self.val}")
        nterms = len(_poly_terms(self.num))
        nstr = format_poly(self.field, self.num)
        if prefix and nterms == 1:
            # constant numerator: c*t^m
            body = prefix if nstr == "1" else ("-" + prefix if nstr == "-1" else f"{nstr}*{prefix}")
        elif prefix:
            body = f"{prefix}*({nstr})"
        else:
            body = f"({nstr})" if nterms > 1 and not self.den.is_one() else nstr
        if not self.den.is_one():
            body = f"{body}/({format_poly(self.field, self.den)})"
        return body

    def __repr__(self) -> str:
        tag = "" if self.field.characteristic == 0 else f", {self.field}"
        return f"LaurentScalar({str(self)!r}{tag})"


def _unit_series(field, num, den, count: int) -> list:
    # den(0) = 1, so c_i = u_i - sum_{j>=1} w_j c_{i-j}
    u = num.coeffs()
    w = den.coeffs()
    c = []
    for i in range(count):
        s = u[i] if i < len(u) else field.zero
        for j in range(1, min(i, len(w) - 1) + 1):
            s -= w[j] * c[i - j]
        c.append(s)
    return c


_ZEROS: dict[CoefficientField, LaurentScalar] = {}


def zero(field: CoefficientField = QQ) -> LaurentScalar:
    z = _ZEROS.get(field)
    if z is None:
        z = _ZEROS[field] = LaurentScalar(field, 0, field.zero_poly, field.one_poly)
    return z


def one(field: CoefficientField = QQ) -> LaurentScalar:
    return LaurentScalar.constant(1, field)


def t_power(e: int, field: CoefficientField = QQ) -> LaurentScalar:
    return LaurentScalar.monomial(1, e, field)


# -- the operations ---------------------------------------------------------

def arith(op: str, x: LaurentScalar, y: LaurentScalar | None = None) -> LaurentScalar:
    """Dispatch one of ``add, sub, mul, div, neg``."""
    if op == "neg":
        return -x
    if y is None:
        raise TypeError(f"{op} needs two operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def valuation(x: LaurentScalar) -> float | int:
    """t-adic valuation; ``math.inf`` for zero."""
    return x.valuation()


def singular_part(x: LaurentScalar) -> LaurentScalar:
    """``x - P(x)``: the part of the expansion with negative exponents."""
    if x.num.is_zero() or x.val >= 0:
        return zero(x.field)
    m = x.val
    c = _unit_series(x.field, x.num, x.den, -m)
    return LaurentScalar.from_polys(x.field.poly(c), None, m, x.field)


def rb_project(x: LaurentScalar) -> LaurentScalar:
    """The Rota-Baxter operator P: drop every term with negative exponent."""
    if x.num.is_zero() or x.val >= 0:
        return x
    return x - singular_part(x)


def truncate_below(x: LaurentScalar, a: int) -> LaurentScalar:
    """The Laurent polynomial of all terms of ``x`` with exponent < ``a``."""
    return singular_part(x.shift(-a)).shift(a)


def verify_rb_relation(x: LaurentScalar, y: LaurentScalar) -> bool:
    """Exact check of P(x)P(y) = P(P(x)y) + P(xP(y)) - P(xy)."""
    px, py = rb_project(x), rb_project(y)
    lhs = px * py
    rhs = rb_project(px * y) + rb_project(x * py) + RB_WEIGHT * rb_project(x * y)
    return lhs == rhs


# -- truncated series -------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSeries:
    """``sum c_e t^e`` with every coefficient of exponent < ``prec`` known exactly."""

    coeffs: tuple[tuple[int, object], ...]
    prec: int
    field: CoefficientField = QQ

    def __post_init__(self):
        exps = [e for e, _ in self.coeffs]
        if exps != sorted(set(exps)) or any(e >= self.prec for e in exps):
            raise ValueError("exponents must be strictly increasing and below prec")
        if any(c == 0 for _, c in self.coeffs):
            raise ValueError("zero coefficients are not stored")

    @classmethod
    def from_dict(cls, terms: dict[int, object], prec: int, field: CoefficientField = QQ):
        items = sorted((e, field(c)) for e, c in terms.items() if e < prec)
        return cls(tuple((e, c) for e, c in items if c != 0), prec, field)

    def as_dict(self) -> dict[int, object]:
        return dict(self.coeffs)

    def coefficient(self, e: int):
        if e >= self.prec:
            raise ValueError(f"exponent {e} is beyond precision {self.prec}")
        return self.as_dict().get(e, self.field.zero)

    @property
    def valuation(self) -> int:
        """Lowest stored exponent, or ``prec`` when nothing below ``prec`` is nonzero."""
        return self.coeffs[0][0] if self.coeffs else self.prec

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        prec = min(self.prec, other.prec)
        d = {e: c for e, c in self.coeffs if e < prec}
        for e, c in other.coeffs:
            if e < prec:
                d[e] = d.get(e, self.field.zero) + c
        return TruncatedSeries.from_dict(d, prec, self.field)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple((e, -c) for e, c in self.coeffs), self.prec, self.field)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        prec = min(self.prec + other.valuation, other.prec + self.valuation)
        d: dict[int, object] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = e1 + e2
                if e < prec:
                    d[e] = d.get(e, self.field.zero) + c1 * c2
        return TruncatedSeries.from_dict(d, prec, self.field)

    def project(self) -> "TruncatedSeries":
        """P on the known coefficients."""
        return TruncatedSeries(tuple((e, c) for e, c in self.coeffs if e >= 0), self.prec, self.field)

    def __str__(self) -> str:
        parts = [f"{self.field.format(c)}*t^{e}" for e, c in self.coeffs]
        return (" + ".join(parts) if parts else "0") + f" + O(t^{self.prec})"


def expand(x: LaurentScalar, prec: int) -> TruncatedSeries:
    """All coefficients of ``x`` with exponent < ``prec``."""
    if x.num.is_zero() or x.val >= prec:
        return TruncatedSeries((), prec, x.field)
    c = _unit_series(x.field, x.num, x.den, prec - x.val)
    return TruncatedSeries(tuple((x.val + i, ci) for i, ci in enumerate(c) if ci != 0), prec, x.field)

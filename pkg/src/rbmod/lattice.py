"""Finitely generated O-submodules of A^n, O = k[[t]], in canonical echelon form.

A lattice of rank r is stored by r basis columns ``b_1..b_r`` with pivot rows
``p_1 < ... < p_r`` such that

* ``b_j`` vanishes above row ``p_j`` and ``b_j[p_j] == t^(a_j)`` exactly;
* for ``i < j`` the entry ``b_i[p_j]`` is a Laurent polynomial with every
  exponent ``< a_j`` (reduced modulo ``t^(a_j) O``).

This is the t-adic analogue of column Hermite form and is unique, so lattice
equality is equality of stored columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, DomainError
from .fields import QQ, CoefficientField
from .linalg import MatrixA, VectorA
from .scalar import LaurentScalar, rb_project, t_power


@dataclass(frozen=True)
class FractionalIdeal:
    """One of the three shapes of an O-submodule of A: ``0``, ``A`` or ``O t^n``."""

    kind: str  # "zero" | "all" | "power"
    n: int | None = None

    @classmethod
    def power(cls, n: int) -> "FractionalIdeal":
        return cls("power", n)

    def __str__(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "all":
            return "A"
        return f"O t^{self.n}"


ZERO_IDEAL = FractionalIdeal("zero")
ALL_IDEAL = FractionalIdeal("all")


class Lattice:
    """A free O-submodule of A^n in canonical echelon form."""

    __slots__ = ("ambient_dim", "columns", "pivot_rows", "exponents", "field")

    def __init__(self, ambient_dim: int, columns: Sequence[VectorA], pivot_rows: Sequence[int],
                 exponents: Sequence[int], field: CoefficientField):
        self.ambient_dim = ambient_dim
        self.columns = tuple(columns)
        self.pivot_rows = tuple(pivot_rows)
        self.exponents = tuple(exponents)
        self.field = field

    @property
    def rank(self) -> int:
        return len(self.columns)

    @property
    def basis(self) -> MatrixA:
        return MatrixA.from_columns(self.columns, self.ambient_dim, self.field)

    # public alias: exponents are listed in pivot-row order
    @property
    def elementary_exponents(self) -> tuple[int, ...]:
        return self.exponents

    def coordinates(self, x: Sequence[LaurentScalar]) -> list[LaurentScalar] | None:
        """The unique A-coordinates of ``x`` in the basis, or ``None`` off the A-span."""
        if len(x) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(x)} in A^{self.ambient_dim}")
        r = list(x)
        coeffs = []
        for col, p, a in zip(self.columns, self.pivot_rows, self.exponents):
            c = r[p].shift(-a)
            coeffs.append(c)
            if c:
                for i in range(p, self.ambient_dim):
                    if col[i]:
                        r[i] = r[i] - c * col[i]
        if any(r):
            return None
        return coeffs

    def contains(self, x: Sequence[LaurentScalar]) -> bool:
        c = self.coordinates(x)
        return c is not None and all(ci.is_integral() for ci in c)

    __contains__ = contains

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.pivot_rows == other.pivot_rows
                and self.exponents == other.exponents and self.columns == other.columns)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.pivot_rows, self.columns))

    def __repr__(self) -> str:
        cols = "; ".join(str(c) for c in self.columns)
        return f"Lattice(n={self.ambient_dim}, basis=[{cols}])"


def lattice_from_generators(n: int, gens: Sequence[Sequence[LaurentScalar]],
                            field: CoefficientField | None = None) -> Lattice:
    """Canonical form of the O-span of ``gens`` (each of length ``n``)."""
    gens = [list(g) for g in gens]
    if any(len(g) != n for g in gens):
        raise DimensionMismatch(f"generators must have length {n}")
    if field is None:
        field = next((x.field for g in gens for x in g if isinstance(x, LaurentScalar)), QQ)
    active = [g for g in gens if any(g)]
    done: list[list[LaurentScalar]] = []
    pivots: list[int] = []
    exps: list[int] = []
    for i in range(n):
        if not active:
            break
        best = None
        for idx, c in enumerate(active):
            x = c[i]
            if x:
                key = (x.val, x.size, idx)
                if best is None or key < best[0]:
                    best = (key, idx)
        if best is None:
            continue
        piv = active.pop(best[1])
        a = piv[i].val
        u = piv[i].unit_part().inverse()
        piv = [x * u if x else x for x in piv]
        piv[i] = t_power(a, field)
        rest = []
        for c in active:
            if c[i]:
                q = c[i].shift(-a)  # integral since a is minimal in this row
                c = [x - q * y if y else x for x, y in zip(c, piv)]
            if any(c):
                rest.append(c)
        active = rest
        done.append(piv)
        pivots.append(i)
        exps.append(a)
    # reduce entries of earlier columns in each later pivot row modulo t^a O
    for j, (p, a) in enumerate(zip(pivots, exps)):
        for k in range(j):
            e = done[k][p]
            if e and e.val >= a:
                q = e.shift(-a)
            elif e:
                q = rb_project(e.shift(-a))
            else:
                continue
            if q:
                done[k] = [x - q * y if y else x for x, y in zip(done[k], done[j])]
    cols = [VectorA(c, field) for c in done]
    return Lattice(n, cols, pivots, exps, field)


def zero_lattice(n: int, field: CoefficientField = QQ) -> Lattice:
    return Lattice(n, (), (), (), field)


def standard_lattice(n: int, field: CoefficientField = QQ) -> Lattice:
    """O^n."""
    return lattice_from_generators(n, [VectorA.unit(n, i, field) for i in range(n)], field)


def membership(L: Lattice, x: Sequence[LaurentScalar]) -> bool:
    return L.contains(x)


def module_valuation(L: Lattice, x: Sequence[LaurentScalar]) -> float | int:
    """min{n : t^n x in L}; ``math.inf`` when A x meets L only in 0."""
    if not any(x):
        raise DomainError("module valuation of the zero vector")
    c = L.coordinates(x)
    if c is None:
        return math.inf
    return -min(ci.val for ci in c if ci)


def fractional_ideal_of(L, x: Sequence[LaurentScalar]) -> FractionalIdeal:
    """I_L(x) = {a in A : a x in L}.

    For a plain :class:`Lattice` the ``A`` case cannot occur (a lattice has no
    divisible vectors); general submodules override via ``fractional_ideal``.
    """
    if hasattr(L, "fractional_ideal"):
        return L.fractional_ideal(x)
    v = module_valuation(L, x)
    if v == math.inf:
        return ZERO_IDEAL
    return FractionalIdeal.power(v)


def classify_rank1(arg) -> FractionalIdeal:
    """Shape of an O-submodule of A: ``A``, ``0`` or ``O t^n``.

    Accepts a rank <= 1 lattice in A^1, one of the markers ``ALL_IDEAL`` /
    ``ZERO_IDEAL``, or any object exposing ``ambient_dim == 1`` and
    ``fractional_ideal`` (general submodules).
    """
    if isinstance(arg, FractionalIdeal):
        if arg.kind == "power":
            raise DomainError("pass a lattice, not a power ideal")
        return arg
    if arg.ambient_dim != 1:
        raise DimensionMismatch("rank-1 classification needs ambient dimension 1")
    if isinstance(arg, Lattice):
        if arg.rank == 0:
            return ZERO_IDEAL
        return FractionalIdeal.power(arg.exponents[0])
    return arg.fractional_ideal(VectorA([LaurentScalar.constant(1, arg.field)], arg.field))


def lattice_equal(L1: Lattice, L2: Lattice) -> bool:
    if L1.ambient_dim != L2.ambient_dim:
        raise DimensionMismatch("lattices live in different ambient spaces")
    return L1 == L2


def transport_lattice(L: Lattice, phi: MatrixA) -> Lattice:
    """phi(L) for phi in GL_n(A)."""
    return lattice_from_generators(L.ambient_dim, [phi @ c for c in L.columns], L.field)


"""Dense exact linear algebra over A = k((t)).

Row reduction picks, in each column, the nonzero candidate of smallest
``deg num + deg den`` (ties to the lowest row).  Reduced echelon forms are
unique, so every subspace basis returned here is canonical whatever the pivot
order was.
"""

from __future__ import annotations

import random
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, SingularMatrixError
from .fields import QQ, CoefficientField
from .scalar import LaurentScalar, one, t_power, zero


def _field_of(entries, default: CoefficientField | None) -> CoefficientField:
    for x in entries:
        if isinstance(x, LaurentScalar):
            return x.field
    return default or QQ


def _coerce(x, field: CoefficientField) -> LaurentScalar:
    if isinstance(x, LaurentScalar):
        return x
    return LaurentScalar.constant(x, field)


class VectorA(Sequence):
    """A vector in A^n."""

    __slots__ = ("entries", "field")

    def __init__(self, entries: Iterable, field: CoefficientField | None = None):
        entries = list(entries)
        self.field = _field_of(entries, field)
        self.entries = tuple(_coerce(x, self.field) for x in entries)

    @classmethod
    def zeros(cls, n: int, field: CoefficientField = QQ) -> "VectorA":
        return cls([zero(field)] * n, field)

    @classmethod
    def unit(cls, n: int, i: int, field: CoefficientField = QQ) -> "VectorA":
        z, o = zero(field), one(field)
        return cls([o if j == i else z for j in range(n)], field)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def _check(self, other: "VectorA"):
        if len(other) != len(self):
            raise DimensionMismatch(f"vector lengths {len(self)} and {len(other)}")

    def __add__(self, other: "VectorA") -> "VectorA":
        self._check(other)
        return VectorA([a + b for a, b in zip(self.entries, other.entries)], self.field)

    def __sub__(self, other: "VectorA") -> "VectorA":
        self._check(other)
        return VectorA([a - b for a, b in zip(self.entries, other.entries)], self.field)

    def __neg__(self) -> "VectorA":
        return VectorA([-a for a in self.entries], self.field)

    def scale(self, c) -> "VectorA":
        c = _coerce(c, self.field)
        return VectorA([c * a for a in self.entries], self.field)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorA):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __str__(self) -> str:
        return ", ".join(str(x) for x in self.entries)

    def __repr__(self) -> str:
        return f"VectorA([{self}])"


class MatrixA:
    """An immutable rows x cols matrix over A, stored row-major."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows: Iterable[Iterable], cols: int | None = None,
                 field: CoefficientField | None = None):
        grid = [list(r) for r in rows]
        flat = [x for r in grid for x in r]
        self.field = _field_of(flat, field)
        self.rows = len(grid)
        if cols is None:
            if not grid:
                raise DimensionMismatch("column count of an empty matrix is ambiguous")
            cols = len(grid[0])
        if any(len(r) != cols for r in grid):
            raise DimensionMismatch("ragged matrix rows")
        self.cols = cols
        self.entries = tuple(tuple(_coerce(x, self.field) for x in r) for r in grid)

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], n: int | None = None,
                     field: CoefficientField | None = None) -> "MatrixA":
        columns = [list(c) for c in columns]
        if n is None:
            if not columns:
                raise DimensionMismatch("row count of an empty column list is ambiguous")
            n = len(columns[0])
        if any(len(c) != n for c in columns):
            raise DimensionMismatch("columns of unequal length")
        field = _field_of([x for c in columns for x in c], field)
        return cls([[c[i] for c in columns] for i in range(n)], len(columns), field)

    @classmethod
    def identity(cls, n: int, field: CoefficientField = QQ) -> "MatrixA":
        z, o = zero(field), one(field)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], n, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: CoefficientField = QQ) -> "MatrixA":
        z = zero(field)
        return cls([[z] * cols for _ in range(rows)], cols, field)

    @classmethod
    def diagonal(cls, diag: Sequence, field: CoefficientField | None = None) -> "MatrixA":
        field = _field_of(diag, field)
        n = len(diag)
        z = zero(field)
        return cls([[diag[i] if i == j else z for j in range(n)] for i in range(n)], n, field)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["MatrixA"], field: CoefficientField | None = None) -> "MatrixA":
        field = field or (blocks[0].field if blocks else QQ)
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        grid = [[zero(field)] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    grid[r0 + i][c0 + j] = b.entries[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls(grid, m, field)

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> VectorA:
        return VectorA(self.entries[i], self.field)

    def column(self, j: int) -> VectorA:
        return VectorA([r[j] for r in self.entries], self.field)

    def columns(self) -> list[VectorA]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[LaurentScalar]]:
        return [list(r) for r in self.entries]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "MatrixA":
        return MatrixA([[self.entries[i][j] for j in cols] for i in rows], len(cols), self.field)

    # -- arithmetic ---------------------------------------------------------
    def __matmul__(self, other):
        if isinstance(other, VectorA):
            if len(other) != self.cols:
                raise DimensionMismatch(f"{self.shape} matrix times length-{len(other)} vector")
            z = zero(self.field)
            out = []
            for r in self.entries:
                acc = z
                for a, b in zip(r, other.entries):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
            return VectorA(out, self.field)
        if isinstance(other, MatrixA):
            if other.rows != self.cols:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            z = zero(self.field)
            ocols = [[r[j] for r in other.entries] for j in range(other.cols)]
            grid = []
            for r in self.entries:
                row = []
                for c in ocols:
                    acc = z
                    for a, b in zip(r, c):
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                grid.append(row)
            return MatrixA(grid, other.cols, self.field)
        return NotImplemented

    def __add__(self, other: "MatrixA") -> "MatrixA":
        if other.shape != self.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return MatrixA([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                       self.cols, self.field)

    def __sub__(self, other: "MatrixA") -> "MatrixA":
        return self + (-other)

    def __neg__(self) -> "MatrixA":
        return MatrixA([[-a for a in r] for r in self.entries], self.cols, self.field)

    def scale(self, c) -> "MatrixA":
        c = _coerce(c, self.field)
        return MatrixA([[c * a for a in r] for r in self.entries], self.cols, self.field)

    def transpose(self) -> "MatrixA":
        return MatrixA([[r[j] for r in self.entries] for j in range(self.cols)], self.rows, self.field)

    def hstack(self, other: "MatrixA") -> "MatrixA":
        if other.rows != self.rows:
            raise DimensionMismatch("hstack of matrices with different row counts")
        return MatrixA([list(a) + list(b) for a, b in zip(self.entries, other.entries)],
                       self.cols + other.cols, self.field)

    def inverse(self) -> "MatrixA":
        return mat_inverse(self)

    def rank(self) -> int:
        return mat_rank(self)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            (x == 1) if i == j else (not x) for i, r in enumerate(self.entries) for j, x in enumerate(r))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixA):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __str__(self) -> str:
        return "; ".join(", ".join(str(x) for x in r) for r in self.entries)

    def __repr__(self) -> str:
        return f"MatrixA({self.rows}x{self.cols}: [{self}])"


# -- elimination ---------------------------------------------------------------

def rref(rows: list[list[LaurentScalar]], pivot_cols: int | None = None
         ) -> tuple[list[list[LaurentScalar]], list[int]]:
    """Gauss-Jordan on a copy of ``rows``; only the first ``pivot_cols`` columns may hold pivots.

    Returns the reduced rows (nonzero rows first, pivot entries 1) and the pivot columns.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    limit = ncols if pivot_cols is None else pivot_cols
    pivots: list[int] = []
    top = 0
    for c in range(limit):
        if top == len(rows):
            break
        best = None
        for i in range(top, len(rows)):
            x = rows[i][c]
            if x:
                key = (x.size, i)
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            continue
        i = best[1]
        rows[top], rows[i] = rows[i], rows[top]
        prow = rows[top]
        inv = prow[c].inverse()
        prow = [x * inv if x else x for x in prow]
        rows[top] = prow
        for k in range(len(rows)):
            if k != top:
                f = rows[k][c]
                if f:
                    rows[k] = [a - f * b if b else a for a, b in zip(rows[k], prow)]
        pivots.append(c)
        top += 1
    return rows, pivots


def mat_rank(M: MatrixA) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(rref(M.to_lists())[1])


class Solution(NamedTuple):
    """A particular solution (``None`` when inconsistent) and a null-space basis."""

    particular: VectorA | None
    kernel: list[VectorA]


def mat_solve(M: MatrixA, b: VectorA) -> Solution:
    if len(b) != M.rows:
        raise DimensionMismatch(f"{M.rows}-row system with length-{len(b)} right-hand side")
    field = M.field
    z = zero(field)
    aug = [list(r) + [bi] for r, bi in zip(M.entries, b)]
    red, piv = rref(aug, M.cols) if aug else ([], [])
    for r in red[len(piv):]:
        if r[-1]:
            return Solution(None, _kernel(red, piv, M.cols, field))
    x = [z] * M.cols
    for r, c in zip(red, piv):
        x[c] = r[-1]
    return Solution(VectorA(x, field), _kernel(red, piv, M.cols, field))


def _kernel(red, piv, ncols: int, field) -> list[VectorA]:
    z, o = zero(field), one(field)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [z] * ncols
        v[f] = o
        for r, c in zip(red, piv):
            v[c] = -r[f]
        basis.append(VectorA(v, field))
    return basis


def kernel(M: MatrixA) -> list[VectorA]:
    return mat_solve(M, VectorA.zeros(M.rows, M.field)).kernel


def mat_inverse(M: MatrixA) -> MatrixA:
    if M.rows != M.cols:
        raise DimensionMismatch(f"cannot invert a {M.shape} matrix")
    n = M.rows
    field = M.field
    if n == 0:
        return M
    ident = MatrixA.identity(n, field).entries
    aug = [list(r) + list(e) for r, e in zip(M.entries, ident)]
    red, piv = rref(aug, n)
    if len(piv) < n:
        raise SingularMatrixError(f"matrix has rank {len(piv)} < {n}")
    return MatrixA([r[n:] for r in red], n, field)


def span_basis(vectors: Sequence[Sequence[LaurentScalar]], n: int,
               field: CoefficientField | None = None) -> tuple[list[VectorA], list[int]]:
    """Canonical basis of the A-span: reduced echelon vectors plus their pivot coordinates."""
    rows = [list(v) for v in vectors]
    if any(len(r) != n for r in rows):
        raise DimensionMismatch(f"expected vectors of length {n}")
    field = _field_of([x for r in rows for x in r], field)
    if not rows:
        return [], []
    red, piv = rref(rows)
    return [VectorA(r, field) for r in red[:len(piv)]], piv


def span_intersection(U: Sequence[VectorA], W: Sequence[VectorA], n: int,
                      field: CoefficientField | None = None) -> list[VectorA]:
    """Canonical basis of span(U) ∩ span(W), both given by A-independent vectors."""
    if not U or not W:
        return []
    field = field or U[0].field
    cols = list(U) + [-w for w in W]
    ker = kernel(MatrixA.from_columns(cols, n, field))
    z = VectorA.zeros(n, field)
    vecs = []
    for kv in ker:
        acc = z
        for c, u in zip(kv.entries[:len(U)], U):
            if c:
                acc = acc + u.scale(c)
        vecs.append(acc)
    return span_basis(vecs, n, field)[0]


# -- linear algebra over k (constant matrices) -------------------------------

def k_rref(rows: list[list], field: CoefficientField) -> tuple[list[list], list[int]]:
    rows = [list(r) for r in rows]
    pivots = []
    top = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        i = next((i for i in range(top, len(rows)) if rows[i][c] != 0), None)
        if i is None:
            continue
        rows[top], rows[i] = rows[i], rows[top]
        inv = rows[top][c] ** -1
        rows[top] = [x * inv for x in rows[top]]
        for k in range(len(rows)):
            if k != top and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[top])]
        pivots.append(c)
        top += 1
        if top == len(rows):
            break
    return rows, pivots


def k_nullspace(rows: list[list], ncols: int, field: CoefficientField) -> list[list]:
    """Basis of {x in k^ncols : rows . x = 0}."""
    if not rows:
        return [[field.one if j == i else field.zero for j in range(ncols)] for i in range(ncols)]
    red, piv = k_rref(rows, field)
    out = []
    for f in (c for c in range(ncols) if c not in piv):
        v = [field.zero] * ncols
        v[f] = field.one
        for r, c in zip(red, piv):
            v[c] = -r[f]
        out.append(v)
    return out


def k_inverse(rows: list[list], field: CoefficientField) -> list[list]:
    n = len(rows)
    aug = [list(r) + [field.one if i == j else field.zero for j in range(n)] for i, r in enumerate(rows)]
    red, piv = k_rref(aug, field)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("constant matrix is singular")
    return [r[n:] for r in red]


# -- random invertible matrices ------------------------------------------------

def _random_multiplier(rng: random.Random, field: CoefficientField, complexity: int) -> LaurentScalar:
    terms = {}
    for _ in range(rng.randint(1, 2)):
        terms[rng.randint(-complexity, complexity)] = field.random_element(rng, 2, nonzero=True)
    return LaurentScalar.from_terms(terms, field)


def _random_unit(rng: random.Random, field: CoefficientField) -> LaurentScalar:
    kind = rng.randrange(3)
    if kind == 0:
        return t_power(rng.choice((-1, 1)), field)
    c0 = LaurentScalar.constant(field.random_element(rng, 2, nonzero=True), field)
    if kind == 1:
        return c0
    c1 = LaurentScalar.monomial(field.random_element(rng, 2, nonzero=True), 1, field)
    return c0 + c1


def random_invertible(n: int, seed: int, complexity: int = 1, field: CoefficientField = QQ
                      ) -> tuple[MatrixA, MatrixA]:
    """A seeded element of GL_n(A) together with its exact inverse.

    Built as permutation * t-power scalings, followed (for ``complexity > 0``)
    by ``n * (complexity + 1)`` random transvections with Laurent-polynomial
    multipliers of exponents in ``[-complexity, complexity]`` and scalings by
    units of O or by ``t^±1``.  ``complexity == 0`` yields a monomial matrix.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    z = zero(field)
    perm = list(range(n))
    rng.shuffle(perm)
    M = [[z] * n for _ in range(n)]
    Minv = [[z] * n for _ in range(n)]
    for j in range(n):
        e = rng.randint(-1, 1)
        M[perm[j]][j] = t_power(e, field)
        Minv[j][perm[j]] = t_power(-e, field)
    if complexity > 0:
        for _ in range(n * (complexity + 1)):
            if n >= 2 and rng.random() < 0.75:
                i, j = rng.sample(range(n), 2)
                c = _random_multiplier(rng, field, complexity)
                # M <- M (I + c e_i e_j^T);  Minv <- (I - c e_i e_j^T) Minv
                for r in range(n):
                    if M[r][i]:
                        M[r][j] = M[r][j] + c * M[r][i]
                Minv[i] = [a - c * b if b else a for a, b in zip(Minv[i], Minv[j])]
            else:
                i = rng.randrange(n)
                u = _random_unit(rng, field)
                uinv = u.inverse()
                for r in range(n):
                    M[r][i] = M[r][i] * u
                Minv[i] = [a * uinv for a in Minv[i]]
    return MatrixA(M, n, field), MatrixA(Minv, n, field)


def random_constant_invertible(n: int, rng: random.Random, field: CoefficientField = QQ) -> MatrixA:
    """A random element of GL_n(k) (constant entries)."""
    while True:
        rows = [[field.random_element(rng, 3) for _ in range(n)] for _ in range(n)]
        try:
            k_inverse(rows, field)
        except SingularMatrixError:
            continue
        return MatrixA([[LaurentScalar.constant(c, field) for c in r] for r in rows], n, field)

"""Regular-singular decompositions (M, N) of V = A^n and their projections p.

An O-submodule M is stored as ``M~ + M_f``: ``M~`` is an A-subspace (its
divisible part) in reduced echelon form and ``M_f`` is a lattice inside the
coordinate complement of ``M~``'s pivot coordinates.  A k[t^-1]-submodule N
is stored the same way with a k[t^-1]-basis of its free part.

``build_rsd`` certifies that ``V = M (+) N`` over k through the structural
criterion

    V = M~ (+) V0 (+) N~,   V0 = AM ∩ AN = A M_f = A N_f,

together with the normal form of the singular part inside V0: written in an
O-basis ``B_f`` of ``M ∩ V0`` the k[t^-1]-module ``N ∩ V0`` must have a basis
``t^-1 * phi`` with ``phi`` in ``I + t M_r(O)``.  The certified data give the
projection p with image M and kernel N in closed form (``apply_p``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (DimensionMismatch, DomainError, NoRegularPart, SingularMatrixError,
                     SingularShapeMismatch, SpanMismatch)
from .fields import QQ, CoefficientField
from .lattice import (ALL_IDEAL, ZERO_IDEAL, FractionalIdeal, Lattice, lattice_from_generators)
from .linalg import (MatrixA, VectorA, k_inverse, k_nullspace, mat_inverse, mat_rank, mat_solve,
                     span_basis, span_intersection)
from .scalar import LaurentScalar, rb_project, t_power, zero


@dataclass(frozen=True, order=True)
class ModuleType:
    """Multiplicities (k, r, l) of A0 = (A, 0), Ar = (A, P) and A1 = (A, Id)."""

    k: int
    r: int
    l: int

    def __post_init__(self):
        if min(self.k, self.r, self.l) < 0:
            raise DomainError(f"negative multiplicity in {self}")

    @property
    def n(self) -> int:
        return self.k + self.r + self.l

    @classmethod
    def parse(cls, text: str) -> "ModuleType":
        parts = text.strip().strip("()").split(",")
        if len(parts) != 3:
            raise ValueError(f"module type needs three integers, got {text!r}")
        return cls(*(int(p) for p in parts))

    def decomposition(self) -> str:
        parts = [f"{name}^{m}" for name, m in (("A0", self.k), ("Ar", self.r), ("A1", self.l)) if m]
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return f"({self.k},{self.r},{self.l})"


def _project_along(x: Sequence[LaurentScalar], basis: Sequence[VectorA], pivots: Sequence[int]) -> list:
    """Kill the pivot coordinates of a reduced-echelon basis: projection onto the coordinate complement."""
    r = list(x)
    for d, p in zip(basis, pivots):
        c = r[p]
        if c:
            r = [a - c * b if b else a for a, b in zip(r, d)]
    return r


def _field(vectors, field):
    if field is not None:
        return field
    for v in vectors:
        for x in v:
            if isinstance(x, LaurentScalar):
                return x.field
    return QQ


class GeneralSubmodule:
    """An O-submodule ``M = M~ (+) M_f`` of A^n (canonical representation)."""

    __slots__ = ("ambient_dim", "divisible", "divisible_pivots", "free_part", "field")

    def __init__(self, ambient_dim: int, divisible: Sequence[VectorA], divisible_pivots: Sequence[int],
                 free_part: Lattice, field: CoefficientField):
        self.ambient_dim = ambient_dim
        self.divisible = tuple(divisible)
        self.divisible_pivots = tuple(divisible_pivots)
        self.free_part = free_part
        self.field = field

    @property
    def divisible_basis(self) -> MatrixA:
        return MatrixA.from_columns(self.divisible, self.ambient_dim, self.field)

    @property
    def dim_divisible(self) -> int:
        return len(self.divisible)

    @property
    def rank(self) -> int:
        return self.free_part.rank

    def project(self, x: Sequence[LaurentScalar]) -> list[LaurentScalar]:
        """Image of x in the coordinate complement of M~ (along M~)."""
        if len(x) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(x)} in A^{self.ambient_dim}")
        return _project_along(x, self.divisible, self.divisible_pivots)

    def contains(self, x: Sequence[LaurentScalar]) -> bool:
        return self.free_part.contains(self.project(x))

    __contains__ = contains

    def fractional_ideal(self, x: Sequence[LaurentScalar]) -> FractionalIdeal:
        if not any(x):
            raise DomainError("I_M(x) is only defined for x != 0")
        y = self.project(x)
        if not any(y):
            return ALL_IDEAL
        c = self.free_part.coordinates(y)
        if c is None:
            return ZERO_IDEAL
        return FractionalIdeal.power(-min(ci.val for ci in c if ci))

    def valuation(self, x: Sequence[LaurentScalar]) -> float | int:
        """nu_M(x) = min{n : t^n x in M}, possibly ±inf."""
        ideal = self.fractional_ideal(x)
        if ideal.kind == "all":
            return -math.inf
        if ideal.kind == "zero":
            return math.inf
        return ideal.n

    def a_span(self) -> list[VectorA]:
        """Canonical basis of AM."""
        return span_basis(list(self.divisible) + list(self.free_part.columns), self.ambient_dim, self.field)[0]

    def transport(self, phi: MatrixA) -> "GeneralSubmodule":
        return build_submodule(self.ambient_dim, [phi @ d for d in self.divisible],
                               [phi @ b for b in self.free_part.columns], self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneralSubmodule):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.divisible == other.divisible
                and self.free_part == other.free_part)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.divisible, self.free_part))

    def __repr__(self) -> str:
        div = "; ".join(str(d) for d in self.divisible)
        return f"GeneralSubmodule(n={self.ambient_dim}, a_span=[{div}], free={self.free_part!r})"


def build_submodule(n: int, a_span_gens: Sequence[Sequence[LaurentScalar]],
                    o_span_gens: Sequence[Sequence[LaurentScalar]],
                    field: CoefficientField | None = None) -> GeneralSubmodule:
    """M = A*a_span_gens + O*o_span_gens.

    The divisible part is exactly the A-span of ``a_span_gens``: a finitely
    generated O-module has no divisible vectors, and neither does its image
    modulo that span.
    """
    field = _field(list(a_span_gens) + list(o_span_gens), field)
    for g in list(a_span_gens) + list(o_span_gens):
        if len(g) != n:
            raise DimensionMismatch(f"generator of length {len(g)} in A^{n}")
    div, piv = span_basis(a_span_gens, n, field)
    projected = [_project_along(g, div, piv) for g in o_span_gens]
    free = lattice_from_generators(n, projected, field)
    return GeneralSubmodule(n, div, piv, free, field)


def submodule_type(M: GeneralSubmodule) -> tuple[int, int]:
    """(dim M~, rank M_f); dim_A(AM) is their sum."""
    return M.dim_divisible, M.rank


@dataclass(frozen=True)
class Flag:
    """0 ⊆ M~ ⊆ AM ⊆ V with graded dimensions (d1, d2, d3)."""

    dims: tuple[int, int, int]
    divisible: tuple[VectorA, ...]
    a_span: tuple[VectorA, ...]
    ambient_dim: int


def flag_of(M: GeneralSubmodule) -> Flag:
    d1, d2 = submodule_type(M)
    return Flag((d1, d2, M.ambient_dim - d1 - d2), M.divisible, tuple(M.a_span()), M.ambient_dim)


# -- k[t^-1]-modules ----------------------------------------------------------

def _pole_order(col: Sequence[LaurentScalar]) -> int:
    return -min(x.val for x in col if x)


def _leading_matrix(cols: Sequence[Sequence[LaurentScalar]], degs: Sequence[int], field) -> list[list]:
    nrows = len(cols[0])
    out = []
    for i in range(nrows):
        row = []
        for c, d in zip(cols, degs):
            x = c[i]
            row.append(x.leading_coefficient() if x and x.val == -d else field.zero)
        out.append(row)
    return out


def reduce_over_tinv(vectors: Sequence[Sequence[LaurentScalar]], field: CoefficientField,
                     max_steps: int = 100000) -> list[VectorA]:
    """A column-reduced k[t^-1]-basis of the k[t^-1]-span of ``vectors``.

    Degrees are pole orders at t = 0 (the degree in t^-1).  While the matrix of
    leading coefficients has a kernel vector alpha, the column of largest
    degree in its support is replaced by ``sum alpha_i t^-(d_j - d_i) c_i``,
    a unimodular step that lowers that column's degree; zero columns drop out.
    The result has linearly independent leading coefficients.
    """
    cols = [list(v) for v in vectors if any(v)]
    for _ in range(max_steps):
        if not cols:
            return []
        degs = [_pole_order(c) for c in cols]
        lead = _leading_matrix(cols, degs, field)
        ns = k_nullspace(lead, len(cols), field)
        if not ns:
            return [VectorA(c, field) for c in cols]
        alpha = ns[0]
        supp = [j for j, a in enumerate(alpha) if a != 0]
        j = max(supp, key=lambda i: (degs[i], i))
        new = [zero(field)] * len(cols[j])
        for i in supp:
            coef = LaurentScalar.monomial(alpha[i], -(degs[j] - degs[i]), field)
            new = [a + coef * b if b else a for a, b in zip(new, cols[i])]
        if any(new):
            cols[j] = new
        else:
            del cols[j]
    raise RuntimeError("column reduction over k[t^-1] did not terminate")


class SingularModule:
    """A k[t^-1]-submodule ``N = N~ (+) N_f`` of A^n."""

    __slots__ = ("ambient_dim", "divisible", "divisible_pivots", "free", "field")

    def __init__(self, ambient_dim: int, divisible: Sequence[VectorA], divisible_pivots: Sequence[int],
                 free: Sequence[VectorA], field: CoefficientField):
        self.ambient_dim = ambient_dim
        self.divisible = tuple(divisible)
        self.divisible_pivots = tuple(divisible_pivots)
        self.free = tuple(free)
        self.field = field

    @property
    def divisible_basis(self) -> MatrixA:
        return MatrixA.from_columns(self.divisible, self.ambient_dim, self.field)

    @property
    def free_basis(self) -> MatrixA:
        return MatrixA.from_columns(self.free, self.ambient_dim, self.field)

    @property
    def dim_divisible(self) -> int:
        return len(self.divisible)

    @property
    def rank(self) -> int:
        return len(self.free)

    def contains(self, x: Sequence[LaurentScalar]) -> bool:
        if len(x) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(x)} in A^{self.ambient_dim}")
        y = _project_along(x, self.divisible, self.divisible_pivots)
        if not any(y):
            return True
        if not self.free:
            return False
        sol = mat_solve(self.free_basis, VectorA(y, self.field)).particular
        return sol is not None and all(c.in_polys_of_tinv() for c in sol)

    __contains__ = contains

    def __eq__(self, other) -> bool:
        # not a canonical form: compare as sets via mutual containment of bases
        if not isinstance(other, SingularModule):
            return NotImplemented
        if (self.ambient_dim, self.divisible, self.rank) != (other.ambient_dim, other.divisible, other.rank):
            return False
        return all(other.contains(b) for b in self.free) and all(self.contains(b) for b in other.free)

    __hash__ = None

    def __repr__(self) -> str:
        div = "; ".join(str(d) for d in self.divisible)
        free = "; ".join(str(d) for d in self.free)
        return f"SingularModule(n={self.ambient_dim}, a_span=[{div}], free=[{free}])"


def build_singular(n: int, a_span_gens: Sequence[Sequence[LaurentScalar]],
                   gens: Sequence[Sequence[LaurentScalar]],
                   field: CoefficientField | None = None) -> SingularModule:
    """N = A*a_span_gens + k[t^-1]*gens."""
    field = _field(list(a_span_gens) + list(gens), field)
    for g in list(a_span_gens) + list(gens):
        if len(g) != n:
            raise DimensionMismatch(f"generator of length {len(g)} in A^{n}")
    div, piv = span_basis(a_span_gens, n, field)
    projected = [_project_along(g, div, piv) for g in gens]
    free = reduce_over_tinv(projected, field)
    return SingularModule(n, div, piv, free, field)


# -- regular-singular decompositions -----------------------------------------

@dataclass(frozen=True)
class RSDComponents:
    """The certified pieces of V = M~ (+) V0 (+) N~ with M = M~ (+) M_f, N = N~ (+) N_f."""

    divisible_regular: tuple[VectorA, ...]
    v0: tuple[VectorA, ...]
    divisible_singular: tuple[VectorA, ...]
    regular_free: Lattice
    singular_free: tuple[VectorA, ...]


class RSDecomposition:
    """A validated pair (M, N); equivalently the projection p onto M along N."""

    def __init__(self, regular: GeneralSubmodule, singular: SingularModule, v0, regular_free: Lattice,
                 singular_free, unit_frame: MatrixA, unit_frame_inv: MatrixA, frame: MatrixA,
                 frame_inv: MatrixA):
        self.regular = regular
        self.singular = singular
        self.ambient_dim = regular.ambient_dim
        self.field = regular.field
        self.v0 = tuple(v0)
        self.regular_free = regular_free
        self.singular_free = tuple(singular_free)
        self.unit_frame = unit_frame
        self.unit_frame_inv = unit_frame_inv
        self.frame = frame
        self.frame_inv = frame_inv
        self.type = ModuleType(singular.dim_divisible, regular_free.rank, regular.dim_divisible)

    @property
    def normalized_frame(self) -> MatrixA:
        """B = (basis of M~ | O-basis of M ∩ V0 | basis of N~)."""
        return self.frame

    @property
    def divisible_regular(self) -> tuple[VectorA, ...]:
        return self.regular.divisible

    @property
    def divisible_singular(self) -> tuple[VectorA, ...]:
        return self.singular.divisible

    def canonical_key(self) -> tuple:
        return (self.ambient_dim, self.divisible_regular, self.regular_free, self.divisible_singular,
                self.singular_free)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RSDecomposition):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def model_frame(self) -> MatrixA:
        """F with F(canonical model of this type) = (M, N): columns (N~ | B_f phi | M~)."""
        n, field = self.ambient_dim, self.field
        bphi = [self.regular_free.basis @ self.unit_frame.column(j) for j in range(self.type.r)]
        cols = list(self.divisible_singular) + bphi + list(self.divisible_regular)
        return MatrixA.from_columns(cols, n, field) if cols else MatrixA.zeros(0, 0, field)

    def apply(self, v: Sequence[LaurentScalar]) -> VectorA:
        return apply_p(self, v)

    def __repr__(self) -> str:
        return f"RSDecomposition(n={self.ambient_dim}, type={self.type})"


def build_rsd(M: GeneralSubmodule, N: SingularModule) -> RSDecomposition:
    """Validate (M, N) as a regular-singular decomposition of A^n."""
    if M.ambient_dim != N.ambient_dim:
        raise DimensionMismatch("M and N live in different ambient spaces")
    n, field = M.ambient_dim, M.field
    Md, Mf = list(M.divisible), list(M.free_part.columns)
    Nd, Nf = list(N.divisible), list(N.free)
    l, k = len(Md), len(Nd)
    if len(Mf) != len(Nf):
        raise SpanMismatch(f"rank of M_f is {len(Mf)} but rank of N_f is {len(Nf)}")
    r = len(Mf)
    if l + r + k != n:
        raise SpanMismatch(f"dim M~ + rank + dim N~ = {l}+{r}+{k} != {n}")
    v0 = span_intersection(Md + Mf, Nd + Nf, n, field) if r else []
    if len(v0) != r:
        raise SpanMismatch(f"AM ∩ AN has dimension {len(v0)}, expected {r}")
    if n == 0:
        empty = MatrixA.zeros(0, 0, field)
        return RSDecomposition(M, N, [], Lattice(0, (), (), (), field), [], empty, empty, empty, empty)
    T = MatrixA.from_columns(Md + v0 + Nd, n, field)
    try:
        Tinv = mat_inverse(T)
    except SingularMatrixError:
        raise SpanMismatch("M~ + V0 + N~ does not span V") from None

    def v0_part(x):
        c = Tinv @ x
        out = [zero(field)] * n
        for j in range(r):
            cj = c[l + j]
            if cj:
                out = [a + cj * b if b else a for a, b in zip(out, v0[j])]
        return out

    Bf = lattice_from_generators(n, [v0_part(f) for f in Mf], field)
    coords = []
    for g in Nf:
        y = Bf.coordinates(v0_part(g))
        if y is None:  # cannot happen once the spans check out
            raise SpanMismatch("singular generator outside A M_f")
        coords.append(y)
    C = reduce_over_tinv(coords, field) if r else []
    if len(C) != r or any(_pole_order(c) != 1 for c in C):
        degs = sorted(_pole_order(c) for c in C)
        raise SingularShapeMismatch(
            f"N ∩ V0 is not a complement of M ∩ V0: reduced degrees {degs}, expected {[1] * r}")
    if r:
        lead = _leading_matrix(C, [1] * r, field)
        linv = k_inverse(lead, field)
        tC = [[x.shift(1) for x in c] for c in C]  # columns of t*C
        phi_cols = []
        for j in range(r):
            col = [zero(field)] * r
            for i in range(r):
                a = linv[i][j]
                if a != 0:
                    s = LaurentScalar.constant(a, field)
                    col = [u + s * v if v else u for u, v in zip(col, tC[i])]
            phi_cols.append(col)
        phi = MatrixA.from_columns(phi_cols, r, field)
        phi_inv = mat_inverse(phi)
    else:
        phi = phi_inv = MatrixA.zeros(0, 0, field)
    bf_cols = list(Bf.columns)
    singular_free = []
    for j in range(r):
        acc = [zero(field)] * n
        for i in range(r):
            e = phi[i, j]
            if e:
                e = e.shift(-1)
                acc = [a + e * b if b else a for a, b in zip(acc, bf_cols[i])]
        singular_free.append(VectorA(acc, field))
    frame = MatrixA.from_columns(Md + bf_cols + Nd, n, field)
    frame_inv = mat_inverse(frame)
    return RSDecomposition(M, N, v0, Bf, singular_free, phi, phi_inv, frame, frame_inv)


def normalize_singular(rsd: RSDecomposition) -> MatrixA:
    """phi in GL_r(O), phi = I + t R, whose columns times t^-1 give N ∩ V0 in B_f-coordinates."""
    if rsd.type.r == 0:
        raise NoRegularPart("the decomposition has no regular part (r = 0)")
    return rsd.unit_frame


def apply_p(rsd: RSDecomposition, v: Sequence[LaurentScalar]) -> VectorA:
    """The projection p onto M along N."""
    n, field = rsd.ambient_dim, rsd.field
    if len(v) != n:
        raise DimensionMismatch(f"vector of length {len(v)} in A^{n}")
    if n == 0:
        return VectorA([], field)
    v = v if isinstance(v, VectorA) else VectorA(v, field)
    y = rsd.frame_inv @ v
    l, r = rsd.type.l, rsd.type.r
    out = [zero(field)] * n
    for c, d in zip(y.entries[:l], rsd.regular.divisible):
        if c:
            out = [a + c * b if b else a for a, b in zip(out, d)]
    if r:
        x0 = VectorA(y.entries[l:l + r], field)
        w = rsd.unit_frame_inv @ x0
        z = rsd.unit_frame @ VectorA([rb_project(x) for x in w], field)
        for c, b_col in zip(z.entries, rsd.regular_free.columns):
            if c:
                out = [a + c * b if b else a for a, b in zip(out, b_col)]
    return VectorA(out, field)


def verify_module_axiom(rsd: RSDecomposition, a: LaurentScalar, x: Sequence[LaurentScalar]) -> bool:
    """Exact check of P(a) p(x) = p(P(a) x + a p(x) - a x)."""
    x = x if isinstance(x, VectorA) else VectorA(x, rsd.field)
    pa = rb_project(a)
    px = apply_p(rsd, x)
    lhs = px.scale(pa)
    rhs = apply_p(rsd, x.scale(pa) + px.scale(a) - x.scale(a))
    return lhs == rhs


def canonical_rsd(mtype: ModuleType, field: CoefficientField = QQ) -> RSDecomposition:
    """Block model: coordinates [0,k) carry (0, A), [k,k+r) carry (O, A^-), [k+r,n) carry (A, 0)."""
    n = mtype.n
    k, r = mtype.k, mtype.r
    e = [VectorA.unit(n, i, field) for i in range(n)]
    tinv = t_power(-1, field)
    M = build_submodule(n, e[k + r:], e[k:k + r], field)
    N = build_singular(n, e[:k], [v.scale(tinv) for v in e[k:k + r]], field)
    return build_rsd(M, N)


def transport(rsd: RSDecomposition, phi: MatrixA) -> RSDecomposition:
    """phi(M, N) = (phi(M), phi(N)), revalidated; p transforms to phi p phi^-1."""
    n = rsd.ambient_dim
    if phi.shape != (n, n):
        raise DimensionMismatch(f"transport of A^{n} by a {phi.shape} matrix")
    if mat_rank(phi) != n:
        raise SingularMatrixError("transport by a singular matrix")
    field = rsd.field
    M = build_submodule(n, [phi @ d for d in rsd.divisible_regular],
                        [phi @ b for b in rsd.regular_free.columns], field)
    N = build_singular(n, [phi @ d for d in rsd.divisible_singular],
                       [phi @ b for b in rsd.singular_free], field)
    return build_rsd(M, N)


def rsd_decompose(rsd: RSDecomposition) -> RSDComponents:
    return RSDComponents(rsd.divisible_regular, rsd.v0, rsd.divisible_singular, rsd.regular_free,
                         rsd.singular_free)


def complete_to_rsd(M: GeneralSubmodule) -> RSDecomposition:
    """An N with (M, N) a regular-singular decomposition.

    Takes N~ spanned by the standard vectors off the pivot coordinates of AM
    and N_f = t^-1 * (O-basis of M_f).
    """
    n, field = M.ambient_dim, M.field
    am, piv = span_basis(list(M.divisible) + list(M.free_part.columns), n, field)
    comp = [VectorA.unit(n, i, field) for i in range(n) if i not in piv]
    tinv = t_power(-1, field)
    N = build_singular(n, comp, [b.scale(tinv) for b in M.free_part.columns], field)
    return build_rsd(M, N)

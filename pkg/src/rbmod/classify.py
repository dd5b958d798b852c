"""Isomorphism invariants, witnesses, orbit counts and symbolic stabilizers.

Convention: a ModuleType (k, r, l) lists the multiplicities of A0 = (A, 0),
Ar = (A, P) and A1 = (A, Id), so k = dim N~, r = rank M_f and l = dim M~.
The submodule-flag language (d1, d2, d3) = (dim M~, rank, rest) therefore
reads (l, r, k) in this convention.

Stabilizers and fibers are infinite groups; they are returned as
:class:`StructureDescriptor` values and printed in a small token grammar::

    block      := "GL(" n "," base ")" | "M(" r "x" c "," base ")" | "0"
    product    := block (" x " block)*            (empty: "1" or "0")
    triangular := "[" block (" " block)* (";" ...)* "]"   (one block: bare)
    quotient   := group " / " ("diag(" block (", " block)* ")" | block)
    base       := "A" | "O" | "k"
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import DimensionMismatch, DomainError
from .fields import QQ, CoefficientField
from .linalg import MatrixA, VectorA, k_nullspace, mat_inverse, random_constant_invertible, random_invertible
from .rsdmod import GeneralSubmodule, ModuleType, RSDecomposition, apply_p, canonical_rsd, complete_to_rsd
from .scalar import LaurentScalar, t_power, zero


# -- invariants and witnesses --------------------------------------------------

def type_of(rsd: RSDecomposition) -> ModuleType:
    return rsd.type


def are_isomorphic(r1: RSDecomposition, r2: RSDecomposition) -> bool:
    if r1.ambient_dim != r2.ambient_dim:
        raise DimensionMismatch("modules of different dimension")
    return r1.type == r2.type


def iso_witness(r1: RSDecomposition, r2: RSDecomposition) -> MatrixA | None:
    """phi in GL_n(A) with transport(r1, phi) == r2, or None for different types.

    Both model frames carry the canonical block model onto the respective
    decomposition, so ``F2 F1^-1`` carries r1 onto r2.
    """
    if not are_isomorphic(r1, r2):
        return None
    if r1.ambient_dim == 0:
        return MatrixA.zeros(0, 0, r1.field)
    f1 = r1.model_frame()
    return r2.model_frame() @ mat_inverse(f1)


def submodule_iso_witness(M1: GeneralSubmodule, M2: GeneralSubmodule) -> MatrixA | None:
    """phi with phi(M1) = M2 when (dim M~, rank) agree, else None."""
    if M1.ambient_dim != M2.ambient_dim:
        raise DimensionMismatch("submodules of different ambient spaces")
    return iso_witness(complete_to_rsd(M1), complete_to_rsd(M2))


def enumerate_types(n: int) -> Iterator[ModuleType]:
    """All (k, r, l) with k + r + l = n, k outermost, then r."""
    if n < 0:
        raise DomainError("n must be non-negative")
    for k in range(n + 1):
        for r in range(n - k + 1):
            yield ModuleType(k, r, n - k - r)


def orbit_index(mtype: ModuleType) -> int:
    """Position of the type in :func:`enumerate_types` order."""
    for i, t in enumerate(enumerate_types(mtype.n)):
        if t == mtype:
            return i
    raise AssertionError("unreachable")


def count_orbits(n: int) -> int:
    """Number of GL_n(A)-orbits of RB-module structures on A^n."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return (n + 2) * (n + 1) // 2


def count_fractional_classes(n: int) -> int:
    """Number of GL_n(A)-orbits of finitely generated O-submodules of A^n (one per rank)."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return n + 1


# -- descriptors ---------------------------------------------------------------

class Irreducible(enum.Enum):
    A0 = "A0"
    Ar = "Ar"
    A1 = "A1"

    @classmethod
    def parse(cls, text: str) -> "Irreducible":
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"irreducible must be one of A0, Ar, A1; got {text!r}") from None


@dataclass(frozen=True)
class Block:
    """``GL(n, base)``, ``M(r x c, base)`` or a zero block."""

    shape: str  # "GL" | "M" | "zero"
    rows: int
    cols: int
    base: str = "A"

    @classmethod
    def gl(cls, n: int, base: str) -> "Block":
        return cls("GL", n, n, base)

    @classmethod
    def mat(cls, r: int, c: int, base: str) -> "Block":
        return cls("M", r, c, base)

    @property
    def empty(self) -> bool:
        return self.rows == 0 or self.cols == 0

    def __str__(self) -> str:
        if self.shape == "zero":
            return "0"
        if self.shape == "GL":
            return f"GL({self.rows},{self.base})"
        return f"M({self.rows}x{self.cols},{self.base})"


@dataclass(frozen=True)
class StructureDescriptor:
    """Symbolic group/algebra; structural equality after canonical block ordering."""

    arrangement: str  # "product" | "lower_triangular" | "quotient" | "hom"
    blocks: tuple = ()
    kind: str = "group"  # "group" | "algebra"
    numerator: "StructureDescriptor | None" = None
    denominator: "StructureDescriptor | None" = None
    label: str | None = None  # hom: "0", "A" or "k"

    def __str__(self) -> str:
        if self.arrangement == "hom":
            return self.label or "0"
        if self.arrangement == "product":
            parts = [str(b) for b in self.blocks if not b.empty]
            if not parts:
                return "1" if self.kind == "group" else "0"
            return " x ".join(parts)
        if self.arrangement == "lower_triangular":
            keep = [i for i, row in enumerate(self.blocks) if not row[i].empty]
            if not keep:
                return "1"
            if len(keep) == 1:
                return str(self.blocks[keep[0]][keep[0]])
            rows = []
            for i in keep:
                rows.append(" ".join(str(self.blocks[i][j]) if j <= i else "0" for j in keep))
            return "[" + "; ".join(rows) + "]"
        if self.arrangement == "quotient":
            num, den = self.numerator, self.denominator
            if str(num) == str(den):
                return "1"
            den_blocks = [b for b in den.blocks if not b.empty]
            den_s = str(den_blocks[0]) if len(den_blocks) == 1 else \
                "diag(" + ", ".join(str(b) for b in den_blocks) + ")"
            return f"{num} / {den_s}"
        raise ValueError(self.arrangement)


@dataclass(frozen=True)
class FiberReport:
    """Both readings of the fiber over a submodule of the given type."""

    quotient: StructureDescriptor  # Phi_n^-1(M) = G_M / Aut(M, N)
    flag_type: tuple[int, int, int]  # (dim M~, rank, n - dim AM)
    bundle_fiber: str  # fiber of the orbit over the flag variety

    def __str__(self) -> str:
        return str(self.quotient)


def hom_descriptor(i: Irreducible, j: Irreducible) -> StructureDescriptor:
    if i != j:
        return StructureDescriptor("hom", label="0")
    return StructureDescriptor("hom", label="k" if i is Irreducible.Ar else "A")


def end_descriptor(mtype: ModuleType) -> StructureDescriptor:
    """M_k(A) x M_l(A) x M_r(k)."""
    return StructureDescriptor("product", (Block.mat(mtype.k, mtype.k, "A"), Block.mat(mtype.l, mtype.l, "A"),
                                           Block.mat(mtype.r, mtype.r, "k")), kind="algebra")


def _pair_stabilizer(mtype: ModuleType) -> StructureDescriptor:
    return StructureDescriptor("product", (Block.gl(mtype.k, "A"), Block.gl(mtype.l, "A"),
                                           Block.gl(mtype.r, "k")))


def _module_stabilizer(mtype: ModuleType) -> StructureDescriptor:
    k, r, l = mtype.k, mtype.r, mtype.l
    z = Block("zero", 0, 0)
    rows = (
        (Block.gl(k, "A"), z, z),
        (Block.mat(r, k, "A"), Block.gl(r, "O"), z),
        (Block.mat(l, k, "A"), Block.mat(l, r, "A"), Block.gl(l, "A")),
    )
    return StructureDescriptor("lower_triangular", rows)


def stabilizer_descriptor(mtype: ModuleType, which: str = "pair") -> StructureDescriptor:
    """``pair``: Stab(M, N).  ``module_only``: G_M = Stab(M) in coordinates (N~ | V0 | M~)."""
    if which == "pair":
        return _pair_stabilizer(mtype)
    if which == "module_only":
        return _module_stabilizer(mtype)
    raise ValueError(f"which must be 'pair' or 'module_only', got {which!r}")


def fiber_descriptor(mtype: ModuleType) -> FiberReport:
    den = StructureDescriptor("product", (Block.gl(mtype.k, "A"), Block.gl(mtype.r, "k"), Block.gl(mtype.l, "A")))
    quotient = StructureDescriptor("quotient", numerator=_module_stabilizer(mtype), denominator=den)
    bundle = f"GL({mtype.r},A) / GL({mtype.r},O)" if mtype.r else "1"
    return FiberReport(quotient, (mtype.l, mtype.r, mtype.k), bundle)


# -- stabilizer samples ----------------------------------------------------------

def _random_gl(n: int, rng: random.Random, field: CoefficientField) -> MatrixA | None:
    if n == 0:
        return None
    return random_invertible(n, rng.randrange(2 ** 32), 1, field)[0]


def sample_stabilizer_element(rsd: RSDecomposition, seed: int) -> MatrixA:
    """A random element of Stab(M, N): F diag(GL_k(A), GL_r(k), GL_l(A)) F^-1."""
    n, field = rsd.ambient_dim, rsd.field
    if n == 0:
        return MatrixA.zeros(0, 0, field)
    rng = random.Random(seed)
    k, r, l = rsd.type.k, rsd.type.r, rsd.type.l
    blocks = [_random_gl(k, rng, field),
              random_constant_invertible(r, rng, field) if r else None,
              _random_gl(l, rng, field)]
    g = MatrixA.block_diagonal([b for b in blocks if b is not None], field)
    F = rsd.model_frame()
    return F @ g @ mat_inverse(F)


def sample_module_stabilizer_element(rsd: RSDecomposition, seed: int) -> MatrixA:
    """A random element of G_M (lower block triangular, GL_r(O) in the middle) in the RSD's frame."""
    n, field = rsd.ambient_dim, rsd.field
    if n == 0:
        return MatrixA.zeros(0, 0, field)
    rng = random.Random(seed)
    k, r, l = rsd.type.k, rsd.type.r, rsd.type.l
    blocks = [_random_gl(k, rng, field), None, _random_gl(l, rng, field)]
    if r:
        c = random_constant_invertible(r, rng, field)
        tr = MatrixA([[LaurentScalar.from_terms({e: field.random_element(rng, 3) for e in (1, 2)}, field)
                       for _ in range(r)] for _ in range(r)], r, field)
        blocks[1] = c @ (MatrixA.identity(r, field) + tr)
    g = MatrixA.block_diagonal([b for b in blocks if b is not None], field).to_lists()
    # fill the strictly lower blocks with random Laurent polynomials
    offs = [0, k, k + r, n]
    for bi in range(3):
        for bj in range(bi):
            for i in range(offs[bi], offs[bi + 1]):
                for j in range(offs[bj], offs[bj + 1]):
                    g[i][j] = LaurentScalar.from_terms({rng.randint(-2, 2): field.random_element(rng, 3)}, field)
    F = rsd.model_frame()
    return F @ MatrixA(g, n, field) @ mat_inverse(F)


def negative_control_element(field: CoefficientField = QQ) -> MatrixA:
    """diag(1 + t): in GL_1(O) but not GL_1(k), so it moves the singular part of (O, A^-)."""
    return MatrixA([[LaurentScalar.from_terms({0: 1, 1: 1}, field)]], 1, field)


# -- finite-level commutant -------------------------------------------------------

def commutant_dimension(p: Callable[[VectorA], VectorA], n: int, bound: int,
                        field: CoefficientField = QQ) -> int:
    """dim_k of the A-linear maps phi with entries in span{t^-bound..t^(bound-1)} that
    commute with ``p`` on the test vectors t^j e_m, -bound <= j < bound.

    Each unknown coefficient contributes the exact defect ``E p(v) - p(E v)``;
    the answer is the nullity of the resulting linear system over k.
    """
    window = range(-bound, bound)
    tests = [VectorA([t_power(j, field) if i == m else zero(field) for i in range(n)], field)
             for m in range(n) for j in window]
    ptests = [p(v) for v in tests]
    columns = []
    for a in range(n):
        for b in range(n):
            for e in window:
                te = t_power(e, field)
                col = {}
                for ti, (v, pv) in enumerate(zip(tests, ptests)):
                    # E = t^e E_ab: (E w)_a = t^e w_b
                    ev = VectorA([te * v[b] if i == a else zero(field) for i in range(n)], field)
                    epv = VectorA([te * pv[b] if i == a else zero(field) for i in range(n)], field)
                    d = epv - p(ev)
                    for i, x in enumerate(d):
                        if x:
                            if not x.is_laurent_polynomial():
                                raise DomainError("commutant system needs a polynomial projection")
                            for s in range(x.val, x.val + x.num.degree() + 1):
                                c = x.coefficient(s)
                                if c != 0:
                                    col[(ti, i, s)] = c
                columns.append(col)
    keys = sorted({key for col in columns for key in col})
    rows = [[col.get(key, field.zero) for col in columns] for key in keys]
    return len(k_nullspace(rows, len(columns), field))


def canonical_commutant_dimension(mtype: ModuleType, bound: int, field: CoefficientField = QQ) -> int:
    rsd = canonical_rsd(mtype, field)
    return commutant_dimension(lambda v: apply_p(rsd, v), mtype.n, bound, field)


def expected_commutant_dimension(mtype: ModuleType, bound: int) -> int:
    """Window count of M_k(A) x M_l(A) x M_r(k), plus one edge coefficient per A0 -> Ar entry.

    The edge term is a finite-window artifact: t^-bound times a test vector
    never reaches exponent 0, so P cannot see it.  It vanishes as bound grows
    in the sense that it always sits at the window's lowest exponent.
    """
    w = 2 * bound
    return w * (mtype.k ** 2 + mtype.l ** 2) + mtype.r ** 2 + mtype.k * mtype.r

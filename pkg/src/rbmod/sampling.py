"""Seeded random generators for scalars, lattices, submodules and decompositions.

Every generator takes an explicit ``random.Random`` (or a seed) so that test
failures and CLI runs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .fields import QQ, CoefficientField
from .linalg import MatrixA, VectorA, random_invertible
from .rsdmod import GeneralSubmodule, ModuleType, RSDecomposition, build_submodule, canonical_rsd, transport
from .scalar import LaurentScalar


@dataclass(frozen=True)
class ScalarConfig:
    """Shape of random scalars t^val * num / den."""

    val_range: tuple[int, int] = (-6, 6)
    max_degree: int = 3
    height: int = 3
    rational_prob: float = 0.5  # chance of a nontrivial denominator


@dataclass(frozen=True)
class LatticeConfig:
    """Random generators with entries sum c_e t^e, e in exp_range (inclusive)."""

    exp_range: tuple[int, int] = (-2, 2)
    terms: int = 2
    height: int = 3
    extra_gens: int = 1


def _poly_with_unit_constant(rng: random.Random, field: CoefficientField, degree: int, height: int):
    coeffs = [field.random_element(rng, height, nonzero=True)]
    coeffs += [field.random_element(rng, height) for _ in range(degree)]
    return field.poly(coeffs)


def random_scalar(rng: random.Random, field: CoefficientField = QQ, cfg: ScalarConfig = ScalarConfig(),
                  nonzero: bool = False) -> LaurentScalar:
    if not nonzero and rng.random() < 0.05:
        return LaurentScalar.constant(0, field)
    val = rng.randint(*cfg.val_range)
    num = _poly_with_unit_constant(rng, field, rng.randint(0, cfg.max_degree), cfg.height)
    if rng.random() < cfg.rational_prob:
        den = _poly_with_unit_constant(rng, field, rng.randint(1, cfg.max_degree), cfg.height)
    else:
        den = field.one_poly
    return LaurentScalar.from_polys(num, den, val, field)


def random_laurent_poly(rng: random.Random, field: CoefficientField = QQ, lo: int = -2, hi: int = 2,
                        terms: int = 2, height: int = 3) -> LaurentScalar:
    return LaurentScalar.from_terms({rng.randint(lo, hi): field.random_element(rng, height)
                                     for _ in range(terms)}, field)


def random_vector(rng: random.Random, n: int, field: CoefficientField = QQ,
                  cfg: ScalarConfig = ScalarConfig()) -> VectorA:
    return VectorA([random_scalar(rng, field, cfg) for _ in range(n)], field)


def random_lattice_gens(rng: random.Random, n: int, rank: int, field: CoefficientField = QQ,
                        cfg: LatticeConfig = LatticeConfig()) -> list[VectorA]:
    """``rank`` random vectors plus ``extra_gens`` random O-combinations of them (redundant generators)."""
    lo, hi = cfg.exp_range
    gens = [VectorA([random_laurent_poly(rng, field, lo, hi, cfg.terms, cfg.height) for _ in range(n)], field)
            for _ in range(rank)]
    for _ in range(cfg.extra_gens if gens else 0):
        acc = VectorA.zeros(n, field)
        for g in gens:
            acc = acc + g.scale(random_laurent_poly(rng, field, 0, 2, 2, cfg.height))
        gens.append(acc)
    rng.shuffle(gens)
    return gens


def random_submodule(rng: random.Random, n: int, field: CoefficientField = QQ,
                     n_div: int | None = None, n_free: int | None = None) -> GeneralSubmodule:
    """A random f.g.-plus-divisible submodule; generator counts default to random splits of n."""
    n_div = rng.randint(0, n) if n_div is None else n_div
    n_free = rng.randint(0, n - n_div) if n_free is None else n_free
    a_gens = random_lattice_gens(rng, n, n_div, field, LatticeConfig(extra_gens=0))
    o_gens = random_lattice_gens(rng, n, n_free, field)
    return build_submodule(n, a_gens, o_gens, field)


def random_transform(seed: int, n: int, complexity: int = 1, field: CoefficientField = QQ) -> MatrixA:
    if n == 0:
        return MatrixA.zeros(0, 0, field)
    return random_invertible(n, seed, complexity, field)[0]


def random_rsd(mtype: ModuleType, seed: int, complexity: int = 1, field: CoefficientField = QQ) -> RSDecomposition:
    """canonical_rsd(mtype) transported by a seeded random element of GL_n(A)."""
    base = canonical_rsd(mtype, field)
    if mtype.n == 0:
        return base
    return transport(base, random_transform(seed, mtype.n, complexity, field))

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbmod import QQ, DimensionMismatch, DomainError
from rbmod.grammar import parse_rows
from rbmod.lattice import (ALL_IDEAL, ZERO_IDEAL, FractionalIdeal, classify_rank1, fractional_ideal_of,
                           lattice_equal, lattice_from_generators, membership, module_valuation,
                           standard_lattice, transport_lattice, zero_lattice)
from rbmod.linalg import MatrixA, VectorA, random_invertible
from rbmod.rsdmod import build_submodule
from rbmod.sampling import random_lattice_gens, random_laurent_poly


def L(n, text):
    return lattice_from_generators(n, [VectorA(r) for r in parse_rows(text)])


def V(text):
    return VectorA(parse_rows(text)[0])


def test_normal_form_examples():
    A = L(2, "t, 0; 0, 1; t^2, t")
    assert A.columns == (V("t, 0"), V("0, 1"))
    assert A.exponents == (1, 0) and A.pivot_rows == (0, 1)
    B = L(1, "t^2; t^3+t^5")
    assert B.columns == (V("t^2"),)
    assert lattice_from_generators(2, []).rank == 0


def test_membership_examples():
    A = L(2, "t, 0; 0, 1")
    assert membership(A, V("t, 1"))
    assert not membership(A, V("1, 0"))
    assert membership(L(2, "t, 0; 0, 1; t^2, t"), V("t^2, t"))


def test_valuation_examples():
    A = L(2, "t, 0; 0, 1")
    assert module_valuation(A, V("1, 0")) == 1
    assert module_valuation(A, V("0, t^-5")) == 5
    assert module_valuation(L(2, "t, 0"), V("0, 1")) == math.inf
    with pytest.raises(DomainError):
        module_valuation(A, V("0, 0"))


def test_fractional_ideal_examples():
    A = L(2, "t, 0; 0, 1")
    assert fractional_ideal_of(A, V("1, 0")) == FractionalIdeal.power(1)
    assert fractional_ideal_of(L(2, "t, 0"), V("0, 1")) == ZERO_IDEAL
    assert fractional_ideal_of(standard_lattice(1), V("t^-3")) == FractionalIdeal.power(3)
    assert str(FractionalIdeal.power(3)) == "O t^3"


def test_rank1_classification():
    assert classify_rank1(L(1, "t^2; t^3+t^5")) == FractionalIdeal.power(2)
    assert classify_rank1(ALL_IDEAL) == ALL_IDEAL
    assert classify_rank1(ZERO_IDEAL) == ZERO_IDEAL
    assert classify_rank1(build_submodule(1, parse_rows("t^-4"), [])) == ALL_IDEAL
    with pytest.raises(DimensionMismatch):
        classify_rank1(standard_lattice(2))


def test_equality_examples():
    assert not lattice_equal(L(2, "t, 0; 0, 1"), standard_lattice(2))
    assert lattice_equal(zero_lattice(2), lattice_from_generators(2, []))
    with pytest.raises(DimensionMismatch):
        lattice_equal(zero_lattice(1), zero_lattice(2))


def test_divisible_part_of_fg_module_is_zero():
    M = build_submodule(2, [], parse_rows("t, 0; 0, 1; t^2, t"))
    assert M.free_part == L(2, "t, 0; 0, 1") and M.dim_divisible == 0
    for e in (V("1, 0"), V("0, 1"), V("1, t^-3")):
        assert fractional_ideal_of(M, e) != ALL_IDEAL


def test_canonical_shape_invariants():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(1, 4)
        A = lattice_from_generators(n, random_lattice_gens(rng, n, rng.randint(1, n), QQ))
        for j, (col, p, a) in enumerate(zip(A.columns, A.pivot_rows, A.exponents)):
            assert all(not col[i] for i in range(p))
            assert col[p] == VectorA.unit(1, 0).scale(col[p])[0] and col[p].val == a
            assert col[p].is_laurent_polynomial() and col[p].num.degree() == 0 and col[p].num[0] == 1
            for k, (p2, a2) in enumerate(zip(A.pivot_rows, A.exponents)):
                if k > j:
                    e = col[p2]
                    assert not e or (e.is_laurent_polynomial() and e.val + e.num.degree() < a2)


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_valuation_scan_and_upward_closed(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    A = lattice_from_generators(n, random_lattice_gens(rng, n, n, QQ))
    x = VectorA([random_laurent_poly(rng, QQ, -3, 3, 2) for _ in range(n)])
    if x.is_zero():
        return
    m = module_valuation(A, x)
    for k in range(-12, 13):
        assert membership(A, VectorA([xi.shift(k) for xi in x])) == (k >= m)


def test_full_rank_transport():
    rng = random.Random(4)
    for seed in range(10):
        phi, phi_inv = random_invertible(3, seed, 1)
        A = lattice_from_generators(3, random_lattice_gens(rng, 3, 3, QQ))
        assert transport_lattice(transport_lattice(A, phi), phi_inv) == A


def test_gl_o_preserves_standard_lattice():
    g = MatrixA(parse_rows("1, t; 0, 1/(1-t)"))
    assert transport_lattice(standard_lattice(2), g) == standard_lattice(2)
    assert transport_lattice(standard_lattice(2), MatrixA(parse_rows("t^-1, 0; 0, 1"))) != standard_lattice(2)


def test_dimension_errors():
    with pytest.raises(DimensionMismatch):
        lattice_from_generators(2, [V("1")])
    with pytest.raises(DimensionMismatch):
        membership(standard_lattice(2), V("1"))

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form
from hypothesis import given, settings
from hypothesis import strategies as st

from abvpoints.errors import DegreeCapExceeded, SingularMatrix
from abvpoints.exactcore import poly as P
from abvpoints.exactcore.ffield import GF, ff_poly_factor, fp_is_irreducible, fp_mul, primitive_modulus
from abvpoints.exactcore.intfactor import divisors, factor_integer, is_prime, prime_power
from abvpoints.exactcore.linalg import (
    det,
    hnf,
    hnf_basis,
    hnf_basis_mod,
    matmul,
    nullspace_mod_p,
    rational_inverse,
    rational_lattice,
    smith_form,
    snf_invariants,
)
from abvpoints.exactcore.zzfactor import zz_poly_factor

small_ints = st.integers(min_value=-20, max_value=20)


def square(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


# ---------------------------------------------------------------- HNF / SNF


@pytest.mark.parametrize(
    "M, H",
    [
        ([[2, 1], [0, 1]], [[2, 0], [0, 1]]),
        ([[2, 1], [0, 3]], [[2, 1], [0, 3]]),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ([[0, 1], [1, 0]], [[1, 0], [0, 1]]),
    ],
)
def test_hnf_examples(M, H):
    assert hnf(M)[0] == H


@pytest.mark.parametrize(
    "M, inv",
    [([[2, 0], [0, 4]], [2, 4]), ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]), ([[-1, -3], [1, -1]], [1, 4])],
)
def test_snf_examples(M, inv):
    assert snf_invariants(M) == inv


def test_snf_singular():
    with pytest.raises(SingularMatrix):
        snf_invariants([[1, 2], [2, 4]])


@settings(max_examples=60, deadline=None)
@given(square(3))
def test_hnf_is_canonical_and_unimodular(M):
    H, U = hnf(M)
    assert matmul(U, M) == H
    assert abs(det(U)) == 1
    # row operations on the input do not change the HNF
    M2 = [M[1], [a + 3 * b for a, b in zip(M[0], M[1])], M[2]]
    assert hnf(M2)[0] == H


@settings(max_examples=60, deadline=None)
@given(square(3))
def test_smith_form_matches_sympy(M):
    diag, U, V = smith_form(M)
    D = matmul(matmul(U, M), V)
    assert all(D[i][j] == (diag[i] if i == j else 0) for i in range(3) for j in range(3))
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]) if a)
    ref = smith_normal_form(sympy.Matrix(M))
    assert [abs(ref[i, i]) for i in range(3)] == [abs(d) for d in diag]


@settings(max_examples=40, deadline=None)
@given(square(3))
def test_hnf_mod_agrees(M):
    D = abs(det(M))
    if D == 0:
        return
    assert hnf_basis_mod(M, D) == hnf_basis(M)


@settings(max_examples=40, deadline=None)
@given(square(3))
def test_det_and_inverse(M):
    d = det(M)
    assert d == sympy.Matrix(M).det()
    if d:
        inv = rational_inverse(M)
        assert matmul(M, inv) == [[int(i == j) for j in range(3)] for i in range(3)]


def test_rational_lattice_canonical():
    a = rational_lattice([[Fraction(1, 2), 0], [0, 1]])
    b = rational_lattice([[Fraction(1, 2), 1], [Fraction(1, 2), 0]])
    assert a == b == (2, [[1, 0], [0, 2]])


def test_nullspace_mod_p():
    rows = [[1, 1], [1, 1], [0, 1]]
    ker = nullspace_mod_p(rows, 2)
    assert len(ker) == 1
    assert all(sum(k[i] * rows[i][j] for i in range(3)) % 2 == 0 for k in ker for j in range(2))


# ---------------------------------------------------------------- polynomials


def test_resultant_examples():
    assert P.resultant((2, 0, 1), (-1, 1)) == 3
    assert P.resultant((2, 0, 1), (-1, 0, 1)) == 9
    assert P.resultant((5, 3, 1), (1,)) == 1


@settings(max_examples=50, deadline=None)
@given(st.lists(small_ints, min_size=2, max_size=5), st.lists(small_ints, min_size=2, max_size=5))
def test_resultant_matches_sympy(f, g):
    f, g = P.trim(f), P.trim(g)
    if len(f) < 2 or len(g) < 2:
        return
    m, n = len(f) - 1, len(g) - 1
    syl = [[0] * i + list(f[::-1]) + [0] * (n - 1 - i) for i in range(n)]
    syl += [[0] * i + list(g[::-1]) + [0] * (m - 1 - i) for i in range(m)]
    ours = P.resultant(f, g)
    assert ours == sympy.Matrix(syl).det()
    t = sympy.Symbol("t")
    # sympy's resultant sign is not always the Sylvester sign
    assert abs(ours) == abs(sympy.resultant(sympy.Poly(f[::-1], t), sympy.Poly(g[::-1], t)))


@pytest.mark.parametrize(
    "h, lo, hi, count",
    [((0, 1), -1, 1, 1), ((-4, 1, 1), -4, 4, 2), ((1, 0, 1), -10, 10, 0)],
)
def test_sturm_examples(h, lo, hi, count):
    assert P.sturm_count(h, lo, hi) == count


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4, unique=True))
def test_sturm_counts_known_roots(roots):
    h = (1,)
    for r in roots:
        h = P.mul(h, (-r, 1))
    assert P.sturm_count(h, "-inf", "+inf") == len(roots)
    assert P.sturm_count(h, 0, "+inf") == sum(r > 0 for r in roots)


@settings(max_examples=40, deadline=None)
@given(st.lists(small_ints, min_size=1, max_size=4))
def test_power_sums_roundtrip(c):
    f = tuple(c) + (1,)
    n = len(f) - 1
    assert P.from_power_sums(P.newton_power_sums(f, n), n) == f


# ---------------------------------------------------------------- integers


@pytest.mark.parametrize("N, fac", [(12, [(2, 2), (3, 1)]), (97, [(97, 1)]), (9991, [(97, 1), (103, 1)])])
def test_factor_examples(N, fac):
    assert factor_integer(N) == fac


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=10**12))
def test_factor_matches_sympy(N):
    assert factor_integer(N) == sorted(sympy.factorint(N).items())


def test_factor_semiprime_rho():
    p, q = 1000003, 1000033
    assert factor_integer(p * q) == [(p, 1), (q, 1)]


def test_prime_helpers():
    assert is_prime(2) and is_prime(97) and not is_prime(1) and not is_prime(91)
    assert prime_power(49) == (7, 2) and prime_power(12) is None and prime_power(1) is None
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


# ---------------------------------------------------------------- finite fields


def test_ff_factor_examples():
    assert ff_poly_factor((1, 0, 1), 2) == [((1, 1), 2)]
    assert ff_poly_factor((1, 0, 1), 5) == [((2, 1), 1), ((3, 1), 1)]
    assert ff_poly_factor((1, 1, 1), 2) == [((1, 1, 1), 1)]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=1, max_size=6))
def test_ff_factor_reconstructs(p, c):
    f = tuple(v % p for v in c) + (1,)
    prod = (1,)
    for g, e in ff_poly_factor(f, p):
        assert fp_is_irreducible(g, p) and g[-1] == 1
        for _ in range(e):
            prod = fp_mul(prod, g, p)
    assert prod == f


@pytest.mark.parametrize("p, k", [(2, 1), (2, 3), (3, 2), (5, 2), (7, 1)])
def test_finite_field_axioms(p, k):
    F = GF(p, k)
    rng = random.Random(p * 10 + k)
    for _ in range(200):
        a, b, c = (rng.randrange(F.q) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for r in F.sqrts(a):
            assert F.mul(r, r) == a
    assert len(primitive_modulus(p, k)) == k + 1


def test_embedding_is_a_homomorphism():
    small, big = GF(2, 2), GF(2, 4)
    emb = big.embedding_from(small)
    for a in range(4):
        for b in range(4):
            assert emb[small.mul(a, b)] == big.mul(emb[a], emb[b])
            assert emb[small.add(a, b)] == big.add(emb[a], emb[b])


def test_artin_schreier():
    F = GF(2, 3)
    for c in range(F.q):
        for z in F.artin_schreier_roots(c):
            assert F.add(F.mul(z, z), z) == c


# ---------------------------------------------------------------- factoring over Z


def test_zz_factor_examples():
    assert zz_poly_factor((9, 0, -6, 0, 1)) == [((-3, 0, 1), 2)]
    assert zz_poly_factor((2, 0, 1)) == [((2, 0, 1), 1)]
    assert zz_poly_factor((-1, 0, 1)) == [((-1, 1), 1), ((1, 1), 1)]


def test_zz_factor_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        zz_poly_factor((1,) + (0,) * 16 + (1,), degree_cap=16)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=3), min_size=1, max_size=3))
def test_zz_factor_matches_sympy(parts):
    f = (1,)
    for c in parts:
        g = P.trim(c)
        if len(g) < 2:
            continue
        f = P.mul(f, g)
    if len(f) < 2:
        return
    t = sympy.Symbol("t")
    ref = sympy.factor_list(sympy.Poly(f[::-1], t))
    ours = zz_poly_factor(f)
    unit = ours[0][0][0] if len(ours[0][0]) == 1 else 1
    assert unit == ref[0]
    ref_set = sorted((tuple(int(v) for v in reversed(g.all_coeffs())), e) for g, e in ref[1])
    ours_set = sorted(x for x in ours if len(x[0]) > 1)
    # sympy's sign convention can differ on factors; compare up to sign
    norm = lambda g: g if g[-1] > 0 else tuple(-v for v in g)
    assert sorted((norm(g), e) for g, e in ref_set) == sorted((norm(g), e) for g, e in ours_set)


@pytest.mark.parametrize("p, k", [(2, 1), (2, 4), (3, 1), (3, 3), (7, 2)])
def test_fast_ops_agree(p, k):
    F = GF(p, k)
    add, sub, mul, div = F.ops()
    rng = random.Random(k)
    for _ in range(500):
        a, b = rng.randrange(F.q), rng.randrange(F.q)
        assert add(a, b) == F.add(a, b) and sub(a, b) == F.sub(a, b) and mul(a, b) == F.mul(a, b)
        if b:
            assert div(a, b) == F.div(a, b)
    for a in range(F.q):
        assert sub(a, a) == 0 and sub(0, a) == F.neg(a)
        assert F.sqrt_table()[mul(a, a)].count(a) == 1

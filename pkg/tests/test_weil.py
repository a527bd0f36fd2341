from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abvpoints.errors import (
    BadDegreeParity,
    NotMonic,
    NotPrimePower,
    RootModulusViolated,
    SymmetryViolated,
)
from abvpoints.exactcore import poly as P
from abvpoints.weil import (
    base_extension,
    enumerate_weil,
    is_ordinary,
    point_count_resultant,
    roots_on_circle,
    trace_polynomial,
    validate_weil,
)


def test_validate_elliptic():
    W = validate_weil(2, (2, 0, 1))
    assert (W.g, W.d, W.p, W.k) == (1, 1, 2, 1)
    assert W.m_coeffs == (2, 0, 1)


def test_validate_power_of_irreducible():
    W = validate_weil(3, (9, 0, -6, 0, 1))
    assert W.g == 2 and W.d == 2 and W.m_coeffs == (-3, 0, 1)
    assert W.field_degree == 2


@pytest.mark.parametrize(
    "q, coeffs, exc",
    [
        (2, (2, 3, 1), (RootModulusViolated, SymmetryViolated)),
        (2, (2, 0, 2), NotMonic),
        (2, (0, 1), BadDegreeParity),
        (6, (6, 0, 1), NotPrimePower),
        (3, (9, 1, 0, 2, 1), SymmetryViolated),
        (2, (2, 5, 1), RootModulusViolated),
    ],
)
def test_validate_rejects(q, coeffs, exc):
    with pytest.raises(exc):
        validate_weil(q, coeffs)


def test_ordinary():
    assert not is_ordinary(validate_weil(2, (2, 0, 1)))
    assert is_ordinary(validate_weil(2, (2, -1, 1)))
    assert not is_ordinary(validate_weil(3, (9, 0, -6, 0, 1)))


def test_base_extension_examples():
    Pn, N = base_extension(validate_weil(2, (2, 0, 1)), 2)
    assert Pn == (4, 4, 1) and N == 9
    W = validate_weil(2, (2, 0, 1))
    assert base_extension(W, 1) == ((2, 0, 1), 3)
    assert base_extension(W, 3) == ((8, 0, 1), 9)
    assert point_count_resultant((2, 0, 1), 2) == 9
    assert point_count_resultant((2, 0, 1), 3) == 9


def test_enumerate_counts():
    assert len(enumerate_weil(2, 1)) == 5
    assert len(enumerate_weil(3, 1)) == 7
    q4 = {W.coeffs for W in enumerate_weil(4, 1)}
    assert (4, 4, 1) in q4 and (4, -4, 1) in q4


def test_trace_polynomial():
    # t^4 + a t^3 + b t^2 + q a t + q^2 = t^2 h(t + q/t) with h = x^2 + a x + (b - 2q)
    assert trace_polynomial((9, 3, 5, 1, 1), 3) == (5 - 6, 1, 1)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_enumerated_satisfy_hasse_weil(q):
    for W in enumerate_weil(q, 2):
        assert roots_on_circle(W.coeffs, q)
        for n in (1, 2, 3):
            _, N = base_extension(W, n)
            assert N == point_count_resultant(W.coeffs, n)
            assert N > 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.data())
def test_elliptic_counts(q, data):
    Ws = enumerate_weil(q, 1)
    W = data.draw(st.sampled_from(Ws))
    a = -W.coeffs[1]
    n = data.draw(st.integers(1, 4))
    _, N = base_extension(W, n)
    # alpha^n + bar alpha^n via the recurrence s_k = a s_{k-1} - q s_{k-2}
    s = [2, a]
    for _ in range(n - 1):
        s.append(a * s[-1] - q * s[-2])
    assert N == q**n + 1 - s[n]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.data())
def test_base_extension_towers(q, data):
    W = data.draw(st.sampled_from(enumerate_weil(q, 2)))
    n = data.draw(st.integers(1, 3))
    m = data.draw(st.integers(1, 3))
    Pn, Nn = base_extension(W, n)
    Wn = validate_weil(q**n, Pn)
    assert base_extension(Wn, m)[0] == base_extension(W, n * m)[0]
    assert base_extension(W, n * m)[1] % Nn == 0
    # decompose then re-expand
    assert P.power(W.m_coeffs, W.d) == W.coeffs


def test_resultant_route_on_product():
    # a non-simple P still has the resultant count P_n(1)
    f = P.mul((2, 0, 1), (2, 1, 1))
    assert point_count_resultant(f, 1) == P.evaluate(f, 1)

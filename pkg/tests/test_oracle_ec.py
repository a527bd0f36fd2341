from __future__ import annotations

import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abvpoints.errors import FieldTooLarge, SingularCurve
from abvpoints.exactcore.ffield import GF
from abvpoints.oracle_ec import (
    EllipticCurve,
    _CurveOver,
    all_curves,
    ec_count,
    ec_enumerate,
    ec_frobenius,
    isomorphism_classes,
    transform,
    verify_ec,
)
from abvpoints.orders import NumberFieldOrder, maximal_order, weil_field
from abvpoints.weil import base_extension

E2 = EllipticCurve(2, 1, (0, 0, 1, 0, 0))  # y^2 + y = x^3
E3 = EllipticCurve(3, 1, (0, 0, 0, 1, 0))  # y^2 = x^3 + x


def test_enumeration_examples():
    count, G = ec_enumerate(E2, 1)
    assert count == 3 and G.to_list() == [3]
    assert ec_enumerate(E2, 2)[1].to_list() == [3, 3]
    count, G = ec_enumerate(E3, 1)
    assert count == 4 and G.to_list() == [4]


def test_frobenius_examples():
    assert ec_frobenius(E2).coeffs == (2, 0, 1)
    assert ec_frobenius(E3).coeffs == (3, 0, 1)
    E = EllipticCurve(5, 1, (0, 0, 0, 1, 1))
    assert ec_count(E, 1) == 9
    assert ec_frobenius(E).coeffs == (5, 3, 1)


def test_singular_rejected():
    with pytest.raises(SingularCurve):
        EllipticCurve(3, 1, (0, 0, 0, 0, 0))


def test_verify_examples():
    rep = verify_ec(E3, 1)
    assert rep.passed and rep.oracle_invariants.to_list() == [4]
    by_index = {p.index: p.invariants.to_list() for p in rep.predictions}
    assert by_index == {2: [4], 1: [2, 2]}
    assert len(rep.match_set) == 1
    rep = verify_ec(E2, 2)
    assert rep.passed and len(rep.predictions) == 1 and rep.match_set


def test_field_cap():
    with pytest.raises(FieldTooLarge):
        verify_ec(E2, 20)


@pytest.mark.parametrize("p, k", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_group_law_axioms(p, k):
    E = random.Random(p * k).choice(all_curves(p, k))
    C = _CurveOver(E, 1)
    pts = C.points()
    zero = pts[0]
    rng = random.Random(1)
    for P in pts:
        assert C.add(P, zero) == P
        assert C.add(P, C.neg(P)) == zero
    for _ in range(100):
        P, Q, R = (rng.choice(pts) for _ in range(3))
        S = C.add(P, Q)
        assert C.on_curve(S) and S == C.add(Q, P)
        assert C.add(S, R) == C.add(P, C.add(Q, R))


def test_isomorphism_transforms_preserve_count():
    F = GF(3)
    for a in [(0, 0, 0, 1, 0), (0, 1, 0, 0, 1)]:
        E = EllipticCurve(3, 1, a)
        for u, r, s, t in [(1, 1, 0, 0), (2, 0, 1, 2), (1, 2, 2, 1)]:
            assert ec_count(EllipticCurve(3, 1, transform(F, a, u, r, s, t))) == ec_count(E)


def test_isomorphism_class_counts():
    assert len(isomorphism_classes(2, 1)) == 5
    assert len(isomorphism_classes(3, 1)) == 8
    classes = isomorphism_classes(3, 1)
    assert sum(len(v) for v in classes.values()) == len(all_curves(3, 1))


curves = st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)]).flatmap(
    lambda pk: st.sampled_from(all_curves(*pk))
)


@settings(max_examples=60, deadline=None)
@given(curves, st.integers(1, 3))
def test_oracle_structure_constraints(E, n):
    if E.q**n > 400:
        return
    count, G = ec_enumerate(E, n)
    assert count == base_extension(ec_frobenius(E), n)[1]
    assert G.rank <= 2 and G.order == count
    if G.rank == 2:
        a, b = G.invariants
        assert gcd(E.q**n - 1, b) % a == 0


@settings(max_examples=40, deadline=None)
@given(curves)
def test_forced_match_when_zpi_maximal(E):
    W = ec_frobenius(E)
    if W.d != 1:
        return
    K = weil_field(W)
    if NumberFieldOrder.equation_order(K) != maximal_order(K):
        return
    rep = verify_ec(E, 1)
    assert rep.passed and len(rep.predictions) == 1 and len(rep.match_set) == 1


@settings(max_examples=40, deadline=None)
@given(curves, st.integers(1, 2))
def test_points_match_brute_force(E, n):
    C = _CurveOver(E, n)
    L = C.L
    brute = [None] + [(x, y) for x in range(L.q) for y in range(L.q) if C.on_curve((x, y))]
    pts = C.points()
    assert len(pts) == len(set(pts)) and set(pts) == set(brute)

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abvpoints.groups import AbelianGroupStructure, group_structure, scalar_mul


def test_normalization():
    G = AbelianGroupStructure.from_cyclic_orders([2, 3, 4, 1])
    assert G.invariants == (2, 12)
    assert G.order == 24 and G.rank == 2 and G.exponent == 12
    assert str(G) == "Z/2 x Z/12"
    assert AbelianGroupStructure.from_cyclic_orders([1, 1]).invariants == ()
    assert str(AbelianGroupStructure()) == "0"


def test_rejects_non_chain():
    with pytest.raises(ValueError):
        AbelianGroupStructure((4, 6))
    with pytest.raises(ValueError):
        AbelianGroupStructure((1, 2))


def test_power_and_divides():
    G = AbelianGroupStructure((3,))
    assert G.power(2).invariants == (3, 3)
    assert G.power(2).divides(AbelianGroupStructure((9, 9)))
    assert not AbelianGroupStructure((9,)).divides(AbelianGroupStructure((3, 3)))


def test_scalar_mul():
    assert scalar_mul(5, 7, lambda a, b: (a + b) % 11, 0) == 35 % 11


def product_group(orders):
    elems = list(itertools.product(*[range(n) for n in orders]))

    def add(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, orders))

    return elems, add, tuple(0 for _ in orders)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=1, max_size=3))
def test_structure_of_explicit_products(orders):
    elems, add, zero = product_group(orders)
    G = group_structure(elems, add, zero)
    assert G == AbelianGroupStructure.from_cyclic_orders(orders)
    assert G.order == len(elems)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 30), min_size=0, max_size=4))
def test_from_cyclic_orders_preserves_order(orders):
    G = AbelianGroupStructure.from_cyclic_orders(orders)
    total = 1
    for n in orders:
        total *= n
    assert G.order == total
    assert G.direct_sum(AbelianGroupStructure()) == G


def test_unit_group_mod_15():
    units = [a for a in range(15) if a % 3 and a % 5]
    G = group_structure(units, lambda a, b: a * b % 15, 1)
    assert G.invariants == (2, 4)

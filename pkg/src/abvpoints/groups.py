"""Finite abelian groups as invariant-factor chains, plus an exact structure
finder for explicitly enumerated groups (used by the point-count oracles)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .exactcore.intfactor import factor_integer


def _primary_parts(orders: Iterable[int]) -> dict[int, list[int]]:
    parts: dict[int, list[int]] = {}
    for n in orders:
        if n < 1:
            raise ValueError(f"cyclic factor order must be positive, got {n}")
        if n == 1:
            continue
        for p, e in factor_integer(n):
            parts.setdefault(p, []).append(e)
    return parts


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Invariant factors d_1 | d_2 | ... (all >= 2). Empty means trivial."""

    invariants: tuple[int, ...] = ()

    def __post_init__(self):
        inv = self.invariants
        if any(d < 2 for d in inv):
            raise ValueError(f"invariant factors must be >= 2: {inv}")
        if any(b % a for a, b in zip(inv, inv[1:])):
            raise ValueError(f"not a divisibility chain: {inv}")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "AbelianGroupStructure":
        """Normalize any direct sum of cyclic groups Z/n_i into invariant factors."""
        parts = _primary_parts(orders)
        r = max((len(v) for v in parts.values()), default=0)
        inv = [1] * r
        for p, exps in parts.items():
            exps = sorted(exps, reverse=True)
            for i, e in enumerate(exps):
                inv[r - 1 - i] *= p**e
        return cls(tuple(inv))

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    def direct_sum(self, *others: "AbelianGroupStructure") -> "AbelianGroupStructure":
        orders = list(self.invariants)
        for o in others:
            orders.extend(o.invariants)
        return AbelianGroupStructure.from_cyclic_orders(orders)

    def power(self, d: int) -> "AbelianGroupStructure":
        """The direct sum of ``d`` copies."""
        return AbelianGroupStructure.from_cyclic_orders(list(self.invariants) * d)

    def padded(self, r: int) -> tuple[int, ...]:
        return (1,) * (r - len(self.invariants)) + self.invariants

    def divides(self, other: "AbelianGroupStructure") -> bool:
        """Componentwise divisibility of the right-aligned invariant chains."""
        r = max(self.rank, other.rank)
        return all(b % a == 0 for a, b in zip(self.padded(r), other.padded(r)))

    def __str__(self) -> str:
        if not self.invariants:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariants)

    def to_list(self) -> list[int]:
        return list(self.invariants)


def scalar_mul(x, k: int, add: Callable, zero):
    acc = zero
    base = x
    while k:
        if k & 1:
            acc = add(acc, base)
        k >>= 1
        if k:
            base = add(base, base)
    return acc


def group_structure(
    elements: Sequence[Hashable],
    add: Callable,
    zero: Hashable,
    order: int | None = None,
) -> AbelianGroupStructure:
    """Invariant factors of a finite abelian group given by all its elements.

    For each prime power l^a exactly dividing the order with a >= 2, the
    l-Sylow subgroup is generated explicitly from the images N/l^a * x of the
    elements (stopping as soon as it reaches size l^a), and its l-primary
    invariants are read off from the counts of l^j-torsion elements.
    """
    N = len(elements) if order is None else order
    cyclic_orders: list[int] = []
    for ell, a in factor_integer(N) if N > 1 else []:
        if a == 1:
            cyclic_orders.append(ell)
            continue
        size = ell**a
        cof = N // size
        S = {zero}
        for x in elements:
            y = scalar_mul(x, cof, add, zero)
            if y in S:
                continue
            # S <- S + <y>
            new = set(S)
            layer = S
            while True:
                layer = {add(s, y) for s in layer}
                if layer <= new:
                    break
                new |= layer
            S = new
            if len(S) == size:
                break
        if len(S) != size:
            raise ArithmeticError("Sylow subgroup has unexpected size; group law or order is wrong")
        # l-power order of each element of S
        counts = [0] * (a + 1)
        for s in S:
            j, t = 0, s
            while t != zero:
                t = scalar_mul(t, ell, add, zero)
                j += 1
            counts[j] += 1
        # c_j = log_l #S[l^j]; number of cyclic factors of order >= l^j is c_j - c_{j-1}
        cum = 0
        logs = []
        for j in range(a + 1):
            cum += counts[j]
            c, e = cum, 0
            while c > 1:
                c //= ell
                e += 1
            logs.append(e)
        at_least = [logs[j] - logs[j - 1] for j in range(1, a + 1)]
        for j in range(1, a + 1):
            exactly = at_least[j - 1] - (at_least[j] if j < a else 0)
            cyclic_orders.extend([ell**j] * exactly)
    return AbelianGroupStructure.from_cyclic_orders(cyclic_orders)

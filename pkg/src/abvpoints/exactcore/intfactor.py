"""Integer factorization: trial division, then Pollard rho with Brent cycling."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

from ..errors import FactorTooLarge

TRIAL_LIMIT = 10**6
DEFAULT_RHO_BUDGET = 2_000_000

# deterministic for n < 3.3e24, which covers the 2^64 certification range
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    n = TRIAL_LIMIT
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i in range(n + 1) if sieve[i])


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, c: int, budget: int) -> tuple[int, int]:
    """One Pollard-Brent run; returns (factor or n, iterations used)."""
    y, r, q, g = 2, 1, 1, 1
    m = 128
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        used += r
        r *= 2
        if used > budget:
            return n, used
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g, used


def _split(n: int, budget: list[int]) -> int:
    c = 1
    while budget[0] > 0:
        g, used = _brent(n, c, budget[0])
        budget[0] -= used
        if 1 < g < n:
            return g
        c += 1
    raise FactorTooLarge(f"could not split {n} within the rho budget")


def factor_integer(N: int, rho_budget: int | None = None) -> list[tuple[int, int]]:
    """Prime factorization of ``N >= 1`` as sorted ``[(p, e), ...]``."""
    if N < 1:
        raise ValueError("factor_integer needs N >= 1")
    out: dict[int, int] = {}
    n = N
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
        if p > 1000 and is_prime(n):
            break
    if n > 1:
        budget = [DEFAULT_RHO_BUDGET if rho_budget is None else rho_budget]
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m):
                out[m] = out.get(m, 0) + 1
                continue
            d = _split(m, budget)
            stack.extend((d, m // d))
    return sorted(out.items())


def divisors(N: int) -> list[int]:
    ds = [1]
    for p, e in factor_integer(N):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``q = p^k``, or None."""
    if q < 2:
        return None
    f = factor_integer(q)
    if len(f) != 1:
        return None
    return f[0]

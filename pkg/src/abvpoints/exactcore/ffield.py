"""Finite fields.

Two layers live here:

* ``fp_*`` functions: dense polynomials over a prime field F_p, as tuples of
  ints in ``[0, p)``, low degree first. These work for any prime ``p``
  (Kummer-Dedekind needs large ones) and include factorization
  (squarefree split, distinct-degree, Cantor-Zassenhaus equal-degree).
* :class:`FiniteField`: F_{p^k} for small ``p^k`` with exp/log/Zech tables.
  Elements are plain ints encoding the coordinate vector in base ``p``
  (``sum c_i p^i`` for ``c_0 + c_1 x + ...`` modulo the field modulus), so
  prime-field elements are just the residues ``0..p-1``.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .intfactor import factor_integer

FPoly = tuple

# ---------------------------------------------------------------- F_p[x]


def fp_trim(coeffs, p: int) -> FPoly:
    c = [v % p for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def fp_add(f: FPoly, g: FPoly, p: int) -> FPoly:
    n = max(len(f), len(g))
    return fp_trim(((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)), p)


def fp_sub(f: FPoly, g: FPoly, p: int) -> FPoly:
    n = max(len(f), len(g))
    return fp_trim(((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)), p)


def fp_scale(f: FPoly, c: int, p: int) -> FPoly:
    return fp_trim((v * c for v in f), p)


def fp_mul(f: FPoly, g: FPoly, p: int) -> FPoly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return fp_trim(out, p)


def fp_divmod(f: FPoly, g: FPoly, p: int) -> tuple[FPoly, FPoly]:
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = r[k + dg] * inv % p
        if c:
            q[k] = c
            for j, b in enumerate(g):
                r[k + j] = (r[k + j] - c * b) % p
    return fp_trim(q, p), fp_trim(r[:dg], p)


def fp_rem(f: FPoly, g: FPoly, p: int) -> FPoly:
    return fp_divmod(f, g, p)[1]


def fp_monic(f: FPoly, p: int) -> FPoly:
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return fp_scale(f, inv, p)


def fp_gcd(f: FPoly, g: FPoly, p: int) -> FPoly:
    while g:
        f, g = g, fp_rem(f, g, p)
    return fp_monic(f, p)


def fp_xgcd(f: FPoly, g: FPoly, p: int) -> tuple[FPoly, FPoly, FPoly]:
    """(d, s, t) with d = s f + t g monic."""
    r0, r1 = f, g
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, fp_sub(s0, fp_mul(q, s1, p), p)
        t0, t1 = t1, fp_sub(t0, fp_mul(q, t1, p), p)
    if not r0:
        return (), s0, t0
    inv = pow(r0[-1], -1, p)
    return fp_scale(r0, inv, p), fp_scale(s0, inv, p), fp_scale(t0, inv, p)


def fp_powmod(f: FPoly, e: int, m: FPoly, p: int) -> FPoly:
    result: FPoly = (1,) if len(m) > 1 else ()
    base = fp_rem(f, m, p)
    while e:
        if e & 1:
            result = fp_rem(fp_mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = fp_rem(fp_mul(base, base, p), m, p)
    return result


def fp_deriv(f: FPoly, p: int) -> FPoly:
    return fp_trim((i * f[i] for i in range(1, len(f))), p)


def fp_eval(f: FPoly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _prime_divisors(n: int) -> list[int]:
    return [q for q, _ in factor_integer(n)] if n > 1 else []


def fp_is_irreducible(f: FPoly, p: int) -> bool:
    """Rabin's test."""
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    f = fp_monic(f, p)
    x = (0, 1)
    for ell in _prime_divisors(n):
        h = fp_powmod(x, p ** (n // ell), f, p)
        if fp_gcd(fp_sub(h, x, p), f, p) != (1,):
            return False
    return fp_powmod(x, p**n, f, p) == fp_rem(x, f, p)


def _pth_root(f: FPoly, p: int) -> FPoly:
    return tuple(f[i] for i in range(0, len(f), p))


def fp_sqfree(f: FPoly, p: int) -> list[tuple[FPoly, int]]:
    """Squarefree decomposition of monic ``f``: [(g_i, i), ...] with f = prod g_i^i."""
    out: list[tuple[FPoly, int]] = []
    d = fp_deriv(f, p)
    c = fp_gcd(f, d, p) if d else f
    w = fp_divmod(f, c, p)[0]
    i = 1
    while w != (1,) and len(w) > 1:
        y = fp_gcd(w, c, p)
        z = fp_divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = fp_divmod(c, y, p)[0]
    if len(c) > 1:
        for g, e in fp_sqfree(_pth_root(c, p), p):
            out.append((g, e * p))
    return out


def fp_ddf(f: FPoly, p: int) -> list[tuple[FPoly, int]]:
    """Distinct-degree factorization of monic squarefree ``f``."""
    out = []
    x = (0, 1)
    h = x
    i = 1
    rest = f
    while len(rest) - 1 >= 2 * i:
        h = fp_powmod(h, p, rest, p)
        g = fp_gcd(fp_sub(h, x, p), rest, p)
        if g != (1,):
            out.append((g, i))
            rest = fp_divmod(rest, g, p)[0]
            h = fp_rem(h, rest, p)
        i += 1
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def fp_edf(f: FPoly, d: int, p: int, rng: random.Random) -> list[FPoly]:
    """Equal-degree splitting (Cantor-Zassenhaus) of a product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = fp_trim([rng.randrange(p) for _ in range(n)], p)
        if len(a) < 2:
            continue
        if p == 2:
            # trace map x + x^2 + ... + x^(2^(d-1)) into F_2
            t = a
            acc = a
            for _ in range(d - 1):
                t = fp_rem(fp_mul(t, t, p), f, p)
                acc = fp_add(acc, t, p)
            b = acc
        else:
            b = fp_sub(fp_powmod(a, (p**d - 1) // 2, f, p), (1,), p)
        g = fp_gcd(b, f, p) if b else f
        if 1 < len(g) < len(f):
            h = fp_divmod(f, g, p)[0]
            return fp_edf(g, d, p, rng) + fp_edf(h, d, p, rng)


def ff_poly_factor(f, p: int, seed: int = 0) -> list[tuple[FPoly, int]]:
    """Factor ``f`` over F_p into monic irreducibles with multiplicity.

    The leading unit is dropped; factors are sorted by degree, then
    coefficient tuple (high degree first) so the output is deterministic.
    """
    f = fp_trim(f, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    f = fp_monic(f, p)
    rng = random.Random(seed)
    out: list[tuple[FPoly, int]] = []
    for g, e in fp_sqfree(f, p):
        for h, d in fp_ddf(g, p):
            for irr in fp_edf(h, d, p, rng):
                out.append((irr, e))
    merged: dict[FPoly, int] = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return sorted(merged.items(), key=lambda ge: (len(ge[0]), tuple(reversed(ge[0]))))


# ---------------------------------------------------------------- F_{p^k}


def _encode(coords, p: int) -> int:
    v = 0
    for c in reversed(coords):
        v = v * p + c
    return v


def _decode(v: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        v, c = divmod(v, p)
        out.append(c)
    return out


def _is_primitive(f: FPoly, p: int, k: int) -> bool:
    if not fp_is_irreducible(f, p):
        return False
    order = p**k - 1
    x = (0, 1)
    one = fp_rem((1,), f, p)
    for ell in _prime_divisors(order):
        if fp_powmod(x, order // ell, f, p) == one:
            return False
    return True


@lru_cache(maxsize=None)
def primitive_modulus(p: int, k: int) -> FPoly:
    """Lexicographically first monic primitive polynomial of degree ``k`` over F_p."""
    for code in range(p**k):
        f = tuple(_decode(code, p, k)) + (1,)
        if f[0] == 0:
            continue
        if _is_primitive(f, p, k):
            return f
    raise RuntimeError("no primitive polynomial found")  # unreachable


class FiniteField:
    """F_{p^k} with table arithmetic. Elements are ints in ``range(q)``."""

    MAX_ORDER = 4_000_000

    def __init__(self, p: int, k: int = 1):
        q = p**k
        if q > self.MAX_ORDER:
            raise ValueError(f"field of order {q} too large for table arithmetic")
        self.p, self.k, self.q = p, k, q
        self.modulus = primitive_modulus(p, k)
        n = q - 1
        exp = [0] * n
        log = [-1] * q
        # generator is x (the modulus is primitive)
        cur = [1] + [0] * (k - 1)
        low = [(-c) % p for c in self.modulus[:k]]
        for i in range(n):
            v = _encode(cur, p)
            exp[i] = v
            log[v] = i
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(a + top * b) % p for a, b in zip(cur, low)]
        self.exp, self.log = exp, log
        zech = [-1] * n
        for i in range(n):
            e = exp[i]
            c0 = e % p
            e1 = e - c0 + (c0 + 1) % p
            zech[i] = log[e1] if e1 else -1
        self.zech = zech
        self._half = n // 2 if p != 2 else 0
        self._as_table = None
        self._sqrt_table = None

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    # conversions
    def from_int(self, c: int) -> int:
        return c % self.p

    def from_coords(self, coords) -> int:
        coords = list(coords) + [0] * (self.k - len(coords))
        return _encode([c % self.p for c in coords[: self.k]], self.p)

    def coords(self, a: int) -> list[int]:
        return _decode(a, self.p, self.k)

    # arithmetic
    def add(self, a: int, b: int) -> int:
        if not a:
            return b
        if not b:
            return a
        p = self.p
        if self.k == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        la, lb = self.log[a], self.log[b]
        z = self.zech[(lb - la) % (self.q - 1)]
        if z < 0:
            return 0
        return self.exp[(la + z) % (self.q - 1)]

    def neg(self, a: int) -> int:
        if not a or self.p == 2:
            return a
        if self.k == 1:
            return self.p - a
        return self.exp[(self.log[a] + self._half) % (self.q - 1)]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        if not b:
            raise ZeroDivisionError("division by zero")
        if not a:
            return 0
        return self.exp[(self.log[a] - self.log[b]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if not a:
            return 0 if e > 0 else 1
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def mul_int(self, a: int, c: int) -> int:
        return self.mul(a, c % self.p)

    def is_square(self, a: int) -> bool:
        return not a or self.p == 2 or self.log[a] % 2 == 0

    def sqrts(self, a: int) -> list[int]:
        """All square roots of ``a``, sorted."""
        if not a:
            return [0]
        l = self.log[a]
        if self.p == 2:
            if l % 2:
                l += self.q - 1
            return [self.exp[l // 2]]
        if l % 2:
            return []
        r = self.exp[l // 2]
        return sorted({r, self.neg(r)})

    def ops(self):
        """``(add, sub, mul, div)`` as closures over the tables, for hot loops."""
        p, k, q = self.p, self.k, self.q
        n = q - 1
        exp, log, zech = self.exp, self.log, self.zech
        half = self._half

        if k == 1:

            def add(a, b):
                return (a + b) % p

            def sub(a, b):
                return (a - b) % p

        elif p == 2:

            def add(a, b):
                return a ^ b

            sub = add
        else:

            def add(a, b):
                if not a:
                    return b
                if not b:
                    return a
                la = log[a]
                z = zech[(log[b] - la) % n]
                return 0 if z < 0 else exp[(la + z) % n]

            def sub(a, b):
                if not b:
                    return a
                lb = log[b] + half
                if not a:
                    return exp[lb % n]
                la = log[a]
                z = zech[(lb - la) % n]
                return 0 if z < 0 else exp[(la + z) % n]

        def mul(a, b):
            if not a or not b:
                return 0
            return exp[(log[a] + log[b]) % n]

        def div(a, b):
            if not a:
                return 0
            return exp[(log[a] - log[b]) % n]

        return add, sub, mul, div

    def sqrt_table(self) -> list[list[int]]:
        """``table[a]`` is ``sqrts(a)`` for every element, built once."""
        if self._sqrt_table is None:
            table: list[list[int]] = [[] for _ in range(self.q)]
            for y in range(self.q):
                table[self.mul(y, y)].append(y)
            self._sqrt_table = table
        return self._sqrt_table

    def artin_schreier_roots(self, c: int) -> list[int]:
        """Roots z of z^2 + z = c (characteristic 2 only)."""
        if self._as_table is None:
            table: dict[int, list[int]] = {}
            for z in range(self.q):
                table.setdefault(self.add(self.mul(z, z), z), []).append(z)
            self._as_table = table
        return self._as_table.get(c, [])

    def in_subfield(self, a: int, j: int) -> bool:
        """Is ``a`` in the subfield of order p^j (j | k)?"""
        if not a:
            return True
        step = (self.q - 1) // (self.p**j - 1)
        return self.log[a] % step == 0

    def embedding_from(self, small: "FiniteField") -> list[int]:
        """Images of all elements of ``small`` (a subfield) under a fixed embedding."""
        if small.p != self.p or self.k % small.k:
            raise ValueError("not a subfield")
        if small.k == 1:
            return list(range(small.q))
        step = (self.q - 1) // (small.q - 1)
        beta = None
        for i in range(0, self.q - 1, step):
            b = self.exp[i]
            acc = 0
            for c in reversed(small.modulus):
                acc = self.add(self.mul(acc, b), c)
            if acc == 0 and (beta is None or b < beta):
                beta = b
        powers = [1]
        for _ in range(small.k - 1):
            powers.append(self.mul(powers[-1], beta))
        images = []
        for a in range(small.q):
            acc = 0
            for c, bp in zip(small.coords(a), powers):
                if c:
                    acc = self.add(acc, self.mul_int(bp, c))
            images.append(acc)
        return images


@lru_cache(maxsize=64)
def GF(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)

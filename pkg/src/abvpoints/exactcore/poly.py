"""Dense univariate polynomials over Z and Q.

A polynomial is a tuple of coefficients, low degree first, with no trailing
zeros; the zero polynomial is ``()``. Coefficients are ``int`` or
``Fraction``. All functions return canonical tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .linalg import det

Poly = tuple


def trim(coeffs: Iterable) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(_unfrac(v) for v in c)


def _unfrac(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def degree(f: Poly) -> int:
    return len(f) - 1  # zero polynomial -> -1


def lc(f: Poly):
    return f[-1] if f else 0


def add(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return trim((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n))


def sub(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return trim((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n))


def neg(f: Poly) -> Poly:
    return tuple(-v for v in f)


def scale(f: Poly, c) -> Poly:
    return trim(v * c for v in f)


def mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def power(f: Poly, e: int) -> Poly:
    result: Poly = (1,)
    base = f
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def monomial(k: int, c=1) -> Poly:
    return trim([0] * k + [c])


def x_minus(c) -> Poly:
    return trim((-c, 1))


def divmod_q(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Division with remainder over Q."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(v) for v in f]
    dg = len(g) - 1
    inv = Fraction(1) / Fraction(g[-1])
    q = [Fraction(0)] * max(len(f) - dg, 0)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = r[k + dg] * inv
        if c:
            q[k] = c
            for j, b in enumerate(g):
                r[k + j] -= c * b
    return trim(q), trim(r[:dg] if dg > 0 else [])


def exact_div(f: Poly, g: Poly) -> Poly:
    q, r = divmod_q(f, g)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def rem(f: Poly, g: Poly) -> Poly:
    return divmod_q(f, g)[1]


def derivative(f: Poly) -> Poly:
    return trim(i * f[i] for i in range(1, len(f)))


def evaluate(f: Poly, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def compose(f: Poly, g: Poly) -> Poly:
    """f(g(x))."""
    acc: Poly = ()
    for c in reversed(f):
        acc = add(mul(acc, g), (c,) if c else ())
    return acc


def content(f: Poly) -> int:
    g = 0
    for v in f:
        g = gcd(g, int(v))
    return g


def primitive(f: Poly) -> Poly:
    """Primitive integer polynomial with positive leading coefficient, same roots."""
    if not f:
        return ()
    den = 1
    for v in f:
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in f]
    c = 0
    for v in ints:
        c = gcd(c, v)
    if ints[-1] < 0:
        c = -c
    return tuple(v // c for v in ints)


def gcd_z(f: Poly, g: Poly) -> Poly:
    """Primitive gcd over Q (positive leading coefficient)."""
    a, b = primitive(f), primitive(g)
    while b:
        a, b = b, primitive(rem(a, b))
    return primitive(a) if a else ()


def sqfree_part(f: Poly) -> Poly:
    """Primitive squarefree part of an integer polynomial."""
    if len(f) <= 1:
        return primitive(f)
    g = gcd_z(f, derivative(f))
    return primitive(exact_div(primitive(f), g))


def is_monic(f: Poly) -> bool:
    return bool(f) and f[-1] == 1


def sylvester(f: Poly, g: Poly) -> list[list]:
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - i - len(fr)))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - i - len(gr)))
    return rows


def resultant(f: Poly, g: Poly):
    """Res(f, g) as the determinant of the Sylvester matrix (Bareiss)."""
    f, g = trim(f), trim(g)
    if not f or not g:
        return 0
    m, n = len(f) - 1, len(g) - 1
    if m == 0 and n == 0:
        return 1
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    return det(sylvester(f, g))


def discriminant(f: Poly):
    n = len(f) - 1
    r = resultant(f, derivative(f))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    d = Fraction(sign * r, f[-1])
    return _unfrac(d)


def sturm_chain(h: Poly) -> list[Poly]:
    chain = [trim(Fraction(v) for v in h)]
    d = derivative(chain[0])
    if not d:
        return chain
    chain.append(d)
    while True:
        r = rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(neg(r))
    return chain


def _sign_changes(values: Sequence) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _signs_at(chain: list[Poly], x) -> list:
    if x is None:
        return []
    if x == "+inf":
        return [lc(p) for p in chain]
    if x == "-inf":
        return [lc(p) * (-1) ** degree(p) for p in chain]
    return [evaluate(p, x) for p in chain]


def sturm_count(h: Poly, lo, hi) -> int:
    """Number of distinct real roots of squarefree ``h`` in ``(lo, hi]``.

    ``lo``/``hi`` are rationals, or ``"-inf"`` / ``"+inf"``.
    """
    h = trim(h)
    if len(h) <= 1:
        return 0
    chain = sturm_chain(h)
    if lo not in ("-inf", "+inf"):
        lo = Fraction(lo)
    if hi not in ("-inf", "+inf"):
        hi = Fraction(hi)
    return _sign_changes(_signs_at(chain, lo)) - _sign_changes(_signs_at(chain, hi))


def cauchy_bound(h: Poly) -> Fraction:
    """All complex roots of ``h`` have absolute value strictly below this bound."""
    a = Fraction(lc(h))
    return 1 + max((abs(Fraction(c) / a) for c in h[:-1]), default=Fraction(0))


def newton_power_sums(f: Poly, count: int) -> list:
    """Power sums p_1..p_count of the roots of monic ``f``."""
    n = len(f) - 1
    # e_k with sign: f = x^n + c_{n-1} x^{n-1} + ... ; c_{n-k} = (-1)^k e_k
    c = [f[n - k] for k in range(n + 1)]  # c[k] = coefficient of x^{n-k}
    p = [0] * (count + 1)
    for k in range(1, count + 1):
        s = -k * c[k] if k <= n else 0
        for i in range(1, k):
            if i <= n:
                s -= c[i] * p[k - i]
        p[k] = s
    return p[1:]


def from_power_sums(psums: Sequence, n: int) -> Poly:
    """Monic degree-``n`` polynomial with the given root power sums p_1..p_n."""
    c = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        s = Fraction(psums[k - 1])
        for i in range(1, k):
            s += c[i] * psums[k - i - 1]
        c[k] = -s / k
    return trim(reversed(c))


def fmt(f: Poly, var: str = "t") -> str:
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            s = mono
        elif mono and c == -1:
            s = "-" + mono
        else:
            s = f"{c}{'*' if mono else ''}{mono}"
        terms.append(s)
    out = " + ".join(terms)
    return out.replace("+ -", "- ")

"""Factorization over Z by the Zassenhaus method.

Squarefree split over Q (Yun), reduction to a monic polynomial, factoring
modulo a good small prime, multifactor quadratic Hensel lifting past the
Mignotte bound, then exhaustive recombination of the lifted factors.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, isqrt

from ..errors import DegreeCapExceeded
from . import poly as P
from .ffield import ff_poly_factor, fp_deriv, fp_gcd, fp_trim, fp_xgcd
from .intfactor import is_prime

DEGREE_CAP = 16


def _monic_q(f):
    return P.trim(Fraction(c) / Fraction(f[-1]) for c in f)


def _gcd_q(f, g):
    while g:
        f, g = g, P.rem(f, g)
    return _monic_q(f) if f else ()


def yun(f) -> list[tuple[tuple, int]]:
    """Squarefree decomposition over Q: [(a_i, i)] with primitive a_i, f ~ prod a_i^i."""
    f = _monic_q(f)
    if len(f) <= 1:
        return []
    df = P.derivative(f)
    b = _gcd_q(f, df)
    c = P.exact_div(f, b)
    d = P.sub(P.exact_div(df, b), P.derivative(c))
    out = []
    i = 1
    while len(c) > 1:
        a = _gcd_q(c, d)
        if len(a) > 1:
            out.append((P.primitive(a), i))
        c = P.exact_div(c, a)
        d = P.sub(P.exact_div(d, a), P.derivative(c))
        i += 1
    return out


# polynomial arithmetic modulo an integer M (plain integer tuples, reduced into [0, M))


def _zm(f, M):
    return fp_trim(f, M)


def _zm_mul(f, g, M):
    return _zm(P.mul(f, g), M)


def _zm_divmod_monic(f, g, M):
    """Division by a monic ``g`` over Z/M."""
    r = list(f)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = r[k + dg] % M
        if c:
            q[k] = c
            for j, b in enumerate(g):
                r[k + j] -= c * b
    return _zm(q, M), _zm(r[:dg], M)


def _hensel_step(f, g, h, s, t, M):
    """Lift f = g h, s g + t h = 1 (mod m) to modulus M (m | M | m^2)."""
    e = _zm(P.sub(f, P.mul(g, h)), M)
    q, r = _zm_divmod_monic(P.mul(s, e), h, M)
    g2 = _zm(P.add(P.add(g, P.mul(t, e)), P.mul(q, g)), M)
    h2 = _zm(P.add(h, r), M)
    b = _zm(P.sub(P.add(P.mul(s, g2), P.mul(t, h2)), (1,)), M)
    c, d = _zm_divmod_monic(P.mul(s, b), h2, M)
    s2 = _zm(P.sub(s, d), M)
    t2 = _zm(P.sub(P.sub(t, P.mul(t, b)), P.mul(c, g2)), M)
    return g2, h2, s2, t2


def _product_mod(fs, M):
    out = (1,)
    for g in fs:
        out = _zm_mul(out, g, M)
    return out


def multifactor_hensel(f, factors, p: int, k: int) -> list[tuple]:
    """Lift monic factors of monic ``f`` mod p to monic factors mod p^k."""
    if len(factors) == 1:
        return [_zm(f, p**k)]
    mid = len(factors) // 2
    left, right = factors[:mid], factors[mid:]
    g = _product_mod(left, p)
    h = _product_mod(right, p)
    d, s, t = fp_xgcd(g, h, p)
    assert d == (1,), "factors must be coprime mod p"
    target = p**k
    m = p
    while m < target:
        m2 = min(m * m, target)
        g, h, s, t = _hensel_step(f, g, h, s, t, m2)
        m = m2
    return multifactor_hensel(g, left, p, k) + multifactor_hensel(h, right, p, k)


def _symmetric(f, M):
    half = M // 2
    return P.trim(c - M if c > half else c for c in f)


def _choose_prime(f) -> tuple[int, list]:
    best = None
    tried = 0
    p = 2
    while tried < 6:
        p += 1
        if not is_prime(p):
            continue
        fp = fp_trim(f, p)
        if len(fp) != len(f):
            continue
        if fp_gcd(fp, fp_deriv(fp, p), p) != (1,):
            continue
        facs = ff_poly_factor(fp, p)
        tried += 1
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if len(facs) == 1:
            break
    return best


def _factor_monic_squarefree(f) -> list[tuple]:
    n = len(f) - 1
    if n <= 1:
        return [f]
    p, facs = _choose_prime(f)
    modfacs = [g for g, _ in facs]
    if len(modfacs) == 1:
        return [f]
    norm2 = sum(c * c for c in f)
    bound = max(comb(n, j) for j in range(n + 1)) * (isqrt(norm2) + 1)
    k = 1
    while p**k <= 2 * bound:
        k += 1
    M = p**k
    lifted = multifactor_hensel(f, modfacs, p, k)
    found = []
    remaining = list(lifted)
    F = f
    s = 1
    while 2 * s <= len(remaining):
        hit = False
        for combo in combinations(range(len(remaining)), s):
            G = _symmetric(_product_mod([remaining[i] for i in combo], M), M)
            q, r = P.divmod_q(F, G)
            if not r and all(isinstance(c, int) for c in q):
                found.append(G)
                F = q
                remaining = [g for i, g in enumerate(remaining) if i not in combo]
                hit = True
                break
        if not hit:
            s += 1
    found.append(F)
    return found


def zz_poly_factor(f, degree_cap: int = DEGREE_CAP) -> list[tuple[tuple, int]]:
    """Factor a nonzero integer polynomial into irreducibles over Z.

    Returns ``[(g, e), ...]`` with primitive ``g`` of positive leading
    coefficient, sorted by degree then coefficients. A constant factor other
    than 1 (content and sign) is listed first as ``((c,), 1)``.
    """
    f = P.trim(f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if len(f) - 1 > degree_cap:
        raise DegreeCapExceeded(f"degree {len(f) - 1} exceeds cap {degree_cap}")
    prim = P.primitive(f)
    unit = P.exact_div(f, prim)[0] if len(f) > 1 else f[0]
    out: dict[tuple, int] = {}
    for a, i in yun(f):
        lead = a[-1]
        n = len(a) - 1
        if lead == 1:
            parts = _factor_monic_squarefree(a)
        else:
            # F(y) = lead^(n-1) a(y / lead) is monic
            F = tuple(a[j] * lead ** (n - 1 - j) if j < n else 1 for j in range(n + 1))
            parts = []
            for G in _factor_monic_squarefree(F):
                back = P.trim(c * lead**j for j, c in enumerate(G))
                parts.append(P.primitive(back))
        for g in parts:
            g = P.primitive(g)
            out[g] = out.get(g, 0) + i
    result = sorted(out.items(), key=lambda ge: (len(ge[0]), ge[0][::-1]))
    if unit != 1:
        result.insert(0, ((unit,), 1))
    return result


def is_irreducible_z(f) -> bool:
    fac = zz_poly_factor(f)
    nonconst = [(g, e) for g, e in fac if len(g) > 1]
    return len(nonconst) == 1 and nonconst[0][1] == 1

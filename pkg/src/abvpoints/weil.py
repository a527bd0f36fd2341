"""Weil polynomials: validation, decomposition P = m^d, base extension.

Coefficient sequences are low degree first everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt

from .errors import (
    AbvError,
    BadDegreeParity,
    NotMonic,
    NotPrimePower,
    NotPrimePowerShape,
    RootModulusViolated,
    SymmetryViolated,
)
from .exactcore import poly as P
from .exactcore.intfactor import prime_power
from .exactcore.zzfactor import zz_poly_factor


@dataclass(frozen=True)
class WeilPolynomial:
    """Characteristic polynomial of Frobenius of a simple abelian variety over F_q."""

    q: int
    p: int
    k: int
    g: int
    coeffs: tuple
    m_coeffs: tuple
    d: int

    @property
    def field_degree(self) -> int:
        """[Q(pi) : Q] = deg m."""
        return len(self.m_coeffs) - 1

    @property
    def middle(self) -> int:
        return self.coeffs[self.g]

    def __str__(self) -> str:
        return P.fmt(self.coeffs)


def trace_polynomial(coeffs, q: int) -> tuple:
    """The integer h with P(t) = t^g h(t + q/t), for a symmetric P of degree 2g."""
    g = (len(coeffs) - 1) // 2
    # D_k(x) = t^k + (q/t)^k expressed in x = t + q/t
    D = [(2,), (0, 1)]
    for _ in range(2, g + 1):
        D.append(P.sub(P.mul((0, 1), D[-1]), P.scale(D[-2], q)))
    h = (coeffs[g],) if coeffs[g] else ()
    for k in range(1, g + 1):
        h = P.add(h, P.scale(D[k], coeffs[g + k]))
    return h


def _even_part_in_z(f) -> tuple:
    """Coefficients of f at even powers of x, as a polynomial in z = x^2."""
    return P.trim(f[::2])


def roots_on_circle(coeffs, q: int) -> bool:
    """Exact test that every root of a symmetric P has absolute value sqrt(q).

    The trace polynomial h must be totally real with roots in [-2 sqrt q, 2 sqrt q].
    Total reality is a Sturm count over the whole line; the bound is checked
    on h(x) h(-x) as a polynomial in z = x^2, whose roots are the squares of the
    roots of h and so must all lie in [0, 4q].
    """
    h = trace_polynomial(coeffs, q)
    h0 = P.sqfree_part(h)
    n0 = len(h0) - 1
    if n0 <= 0:
        return True
    if P.sturm_count(h0, "-inf", "+inf") != n0:
        return False
    hm = tuple(c if i % 2 == 0 else -c for i, c in enumerate(h0))
    u = _even_part_in_z(P.mul(h0, hm))
    u0 = P.sqfree_part(u)
    return P.sturm_count(u0, 4 * q, "+inf") == 0


def decompose(coeffs) -> tuple[tuple, int]:
    """Split P = m^d with m irreducible over Z."""
    fac = [(g, e) for g, e in zz_poly_factor(coeffs) if len(g) > 1]
    if len(fac) != 1:
        raise NotPrimePowerShape(
            "P is not a power of a single irreducible polynomial: "
            + " * ".join(f"({P.fmt(g)})^{e}" for g, e in fac)
        )
    m, d = fac[0]
    if P.power(m, d) != P.trim(coeffs):
        raise NotPrimePowerShape("P != m^d")
    return m, d


def validate_weil(q: int, coeffs) -> WeilPolynomial:
    c = P.trim(int(v) for v in coeffs)
    if not c or c[-1] != 1:
        raise NotMonic("leading coefficient must be 1")
    if (len(c) - 1) % 2 or len(c) < 3:
        raise BadDegreeParity(f"degree {len(c) - 1} is not a positive even number")
    pk = prime_power(q)
    if pk is None:
        raise NotPrimePower(f"q = {q} is not a prime power")
    p, k = pk
    g = (len(c) - 1) // 2
    for j in range(g + 1):
        if c[j] != q ** (g - j) * c[2 * g - j]:
            raise SymmetryViolated(f"a_{j} = {c[j]} but q^{g - j} a_{2 * g - j} = {q ** (g - j) * c[2 * g - j]}")
    if not roots_on_circle(c, q):
        raise RootModulusViolated("some root does not have absolute value sqrt(q)")
    m, d = decompose(c)
    return WeilPolynomial(q=q, p=p, k=k, g=g, coeffs=c, m_coeffs=m, d=d)


def is_ordinary(W: WeilPolynomial) -> bool:
    return gcd(W.middle, W.p) == 1


def base_extension(W: WeilPolynomial, n: int) -> tuple[tuple, int]:
    """Characteristic polynomial of pi^n and the point count P_n(1).

    Built from root power sums: the k-th power sum of the roots of P_n is the
    (kn)-th power sum of the roots of P.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    deg = len(W.coeffs) - 1
    sums = P.newton_power_sums(W.coeffs, deg * n)
    Pn = P.from_power_sums([sums[k * n - 1] for k in range(1, deg + 1)], deg)
    if any(isinstance(v, Fraction) for v in Pn):
        raise ArithmeticError("non-integral base extension")
    return Pn, P.evaluate(Pn, 1)


def point_count_resultant(coeffs, n: int) -> int:
    """|Res(P(t), t^n - 1)|, the independent route to #A(F_{q^n})."""
    return abs(P.resultant(P.trim(coeffs), P.sub(P.monomial(n), (1,))))


def _ceil_bound(c: int, q: int, j: int) -> int:
    """ceil(c * q^(j/2)) computed exactly."""
    if j % 2 == 0:
        return c * q ** (j // 2)
    target = c * c * q**j
    r = isqrt(target)
    return r if r * r == target else r + 1


def enumerate_weil(q: int, g: int) -> list[WeilPolynomial]:
    """All validated Weil polynomials of dimension g over F_q (q <= 49, g <= 2)."""
    if g not in (1, 2):
        raise ValueError("enumerate_weil supports g in {1, 2}")
    if q > 49 or prime_power(q) is None:
        raise ValueError("enumerate_weil needs a prime power q <= 49")
    out = []
    if g == 1:
        B = _ceil_bound(comb(2, 1), q, 1)
        candidates = [(q, a, 1) for a in range(-B, B + 1)]
    else:
        B1 = _ceil_bound(comb(4, 1), q, 1)
        B2 = _ceil_bound(comb(4, 2), q, 2)
        candidates = [(q * q, q * a1, a2, a1, 1) for a1 in range(-B1, B1 + 1) for a2 in range(-B2, B2 + 1)]
    for c in candidates:
        try:
            out.append(validate_weil(q, c))
        except AbvError:
            continue
    return out

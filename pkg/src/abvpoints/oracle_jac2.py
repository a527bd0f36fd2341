"""Jacobians of genus-2 curves y^2 = f(x), deg f = 5, over small odd prime fields.

Divisor classes are Mumford pairs (u, v) with u monic, deg v < deg u <= 2 and
u | v^2 - f. Arithmetic is Cantor's composition plus reduction. All
polynomials here are tuples of field elements, low degree first; the field is
F_{p^(2n)}, which contains the roots of every quadratic over F_{p^n}.
"""

from __future__ import annotations

from math import comb

from .errors import FieldTooLarge, InternalConsistencyError, SingularCurve
from .exactcore.ffield import GF, FiniteField, ff_poly_factor, fp_deriv, fp_gcd, fp_trim
from .groups import AbelianGroupStructure, group_structure
from .oracle_ec import Prediction, VerificationReport, compare
from .orders import intermediate_orders, is_gorenstein, maximal_order, order_construct, weil_field
from .structure import GORENSTEIN, rational_points_structure
from .weil import WeilPolynomial, base_extension, validate_weil

DEFAULT_FIELD_CAP = 10**5
DEFAULT_INDEX_CAP = 10**4

IDENTITY = ((1,), ())


# ---------------------------------------------------------------- polynomials over F


def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def _add(F: FiniteField, f, g):
    n = max(len(f), len(g))
    return _trim(F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n))


def _neg(F: FiniteField, f):
    return tuple(F.neg(c) for c in f)


def _sub(F: FiniteField, f, g):
    return _add(F, f, _neg(F, g))


def _mul(F: FiniteField, f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
    return _trim(out)


def _scale(F: FiniteField, f, c):
    return _trim(F.mul(a, c) for a in f)


def _divmod(F: FiniteField, f, g):
    r = list(f)
    dg = len(g) - 1
    inv = F.inv(g[-1])
    q = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = F.mul(r[k + dg], inv)
        if c:
            q[k] = c
            for j, b in enumerate(g):
                r[k + j] = F.sub(r[k + j], F.mul(c, b))
    return _trim(q), _trim(r[:dg])


def _monic(F: FiniteField, f):
    return _scale(F, f, F.inv(f[-1])) if f else f


def _xgcd(F: FiniteField, a, b):
    """(d, s, t) with d = s a + t b monic."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = _divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(F, s0, _mul(F, q, s1))
        t0, t1 = t1, _sub(F, t0, _mul(F, q, t1))
    if not r0:
        return (), (), ()
    c = F.inv(r0[-1])
    return _scale(F, r0, c), _scale(F, s0, c), _scale(F, t0, c)


def _eval(F: FiniteField, f, x):
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


# ---------------------------------------------------------------- curve


class HyperellipticCurve:
    """y^2 = f(x) with f monic of degree 5 and squarefree over F_p, p odd."""

    def __init__(self, p: int, f):
        f = tuple(int(c) % p for c in f)
        if len(f) == 5:
            f = f + (1,)
        if p < 3 or GF(p).p != p:
            raise SingularCurve("p must be an odd prime")
        if len(f) != 6 or f[-1] != 1:
            raise SingularCurve("f must be monic of degree 5")
        if fp_gcd(fp_trim(f, p), fp_deriv(fp_trim(f, p), p), p) != (1,):
            raise SingularCurve("f is not squarefree")
        self.p = p
        self.f = f

    def __repr__(self) -> str:
        return f"HyperellipticCurve(p={self.p}, f={list(self.f)})"

    def point_count(self, j: int) -> int:
        """#C(F_{p^j}), including the single point at infinity."""
        F = GF(self.p, j)
        total = 1
        for x in range(F.q):
            y2 = _eval(F, self.f, x)
            total += 1 if y2 == 0 else (2 if F.is_square(y2) else 0)
        return total


class Jacobian:
    """Group law of J(C) over F_{p^n}, computed inside F_{p^(2n)}."""

    def __init__(self, C: HyperellipticCurve, n: int):
        self.C, self.n = C, n
        self.L = GF(C.p, 2 * n)
        self.Q = C.p**n
        self.f = C.f  # F_p constants encode identically in every extension

    def in_base(self, a: int) -> bool:
        return self.L.in_subfield(a, self.n)

    def base_sqrts(self, a: int) -> list[int]:
        return [y for y in self.L.sqrts(a) if self.in_base(y)]

    def add(self, D1, D2):
        """Cantor composition followed by reduction."""
        L, f = self.L, self.f
        u1, v1 = D1
        u2, v2 = D2
        d1, e1, e2 = _xgcd(L, u1, u2)
        d, c1, c2 = _xgcd(L, d1, _add(L, v1, v2))
        s1, s2, s3 = _mul(L, c1, e1), _mul(L, c1, e2), c2
        dd = _mul(L, d, d)
        u, r = _divmod(L, _mul(L, u1, u2), dd)
        assert not r
        num = _add(
            L,
            _add(L, _mul(L, _mul(L, s1, u1), v2), _mul(L, _mul(L, s2, u2), v1)),
            _mul(L, s3, _add(L, _mul(L, v1, v2), f)),
        )
        v, r = _divmod(L, num, d)
        assert not r
        v = _divmod(L, v, u)[1]
        while len(u) - 1 > 2:
            u, r = _divmod(L, _sub(L, f, _mul(L, v, v)), u)
            assert not r
            u = _monic(L, u)
            v = _divmod(L, _neg(L, v), u)[1]
        return (_monic(L, u), v)

    def neg(self, D):
        u, v = D
        return (u, _neg(self.L, v))

    def is_valid(self, D) -> bool:
        u, v = D
        L = self.L
        if not u or u[-1] != 1 or len(u) > 3 or len(v) >= len(u):
            return False
        if not all(self.in_base(c) for c in u + v):
            return False
        return not _divmod(L, _sub(L, _mul(L, v, v), self.f), u)[1]

    def elements(self) -> list:
        """Every reduced divisor class defined over F_{p^n}, identity first."""
        L, f, n = self.L, self.f, self.n
        base = [a for a in range(L.q) if self.in_base(a)]
        out = [IDENTITY]
        # degree 1: (x - a, b) with b^2 = f(a)
        for a in base:
            for b in self.base_sqrts(_eval(L, f, a)):
                out.append(((L.neg(a), 1), (b,) if b else ()))
        # degree 2 with distinct roots a < b in F_{p^n}
        for i, a in enumerate(base):
            ra = self.base_sqrts(_eval(L, f, a))
            for b in base[i + 1 :]:
                rb = self.base_sqrts(_eval(L, f, b))
                u = _mul(L, (L.neg(a), 1), (L.neg(b), 1))
                for ya in ra:
                    for yb in rb:
                        out.append((u, self._interpolate(a, ya, b, yb)))
        # degree 2 with a double root a in F_{p^n}: v(a) = y != 0, v'(a) = f'(a) / 2y
        df = _trim((i * c) % L.p for i, c in enumerate(f))[1:]
        for a in base:
            for y in self.base_sqrts(_eval(L, f, a)):
                if y == 0:
                    continue
                v1 = L.div(_eval(L, df, a), L.mul_int(y, 2))
                v0 = L.sub(y, L.mul(v1, a))
                u = _mul(L, (L.neg(a), 1), (L.neg(a), 1))
                out.append((u, _trim((v0, v1))))
        # degree 2 irreducible over F_{p^n}: conjugate roots alpha, alpha^Q in F_{p^(2n)}
        Q = self.Q
        for alpha in range(L.q):
            if self.in_base(alpha):
                continue
            conj = L.pow(alpha, Q)
            if conj < alpha:
                continue
            u = _mul(L, (L.neg(alpha), 1), (L.neg(conj), 1))
            for y in L.sqrts(_eval(L, f, alpha)):
                yc = L.pow(y, Q)
                v1 = L.div(L.sub(y, yc), L.sub(alpha, conj))
                v0 = L.sub(y, L.mul(v1, alpha))
                out.append((u, _trim((v0, v1))))
        return out

    def _interpolate(self, a, ya, b, yb):
        L = self.L
        v1 = L.div(L.sub(ya, yb), L.sub(a, b))
        v0 = L.sub(ya, L.mul(v1, a))
        return _trim((v0, v1))


def cantor_add(D1, D2, C: HyperellipticCurve, n: int = 1):
    return Jacobian(C, n).add(D1, D2)


def _field_check(C: HyperellipticCurve, n: int, cap: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if C.p ** (2 * n) > cap:
        raise FieldTooLarge(f"p^(2n) = {C.p}^{2 * n} exceeds cap {cap}")


def jac_enumerate(C: HyperellipticCurve, n: int = 1, cap: int = DEFAULT_FIELD_CAP) -> tuple[int, AbelianGroupStructure]:
    _field_check(C, n, cap)
    J = Jacobian(C, n)
    els = J.elements()
    if len(set(els)) != len(els):
        raise InternalConsistencyError("duplicate divisor in enumeration")
    G = group_structure(els, J.add, IDENTITY)
    if G.rank > 4:
        raise InternalConsistencyError(f"Jacobian group with rank {G.rank}")
    return len(els), G


def jac_frobenius(C: HyperellipticCurve, cap: int = DEFAULT_FIELD_CAP) -> WeilPolynomial:
    """P(t) from #C(F_p) and #C(F_{p^2}) via Newton's identities, checked against #J(F_p)."""
    p = C.p
    S1 = p + 1 - C.point_count(1)
    S2 = p * p + 1 - C.point_count(2)
    e2 = (S1 * S1 - S2) // 2
    if (S1 * S1 - S2) % 2:
        raise InternalConsistencyError("odd Newton numerator")
    W = validate_weil(p, (p * p, -p * S1, e2, -S1, 1))
    count, _ = jac_enumerate(C, 1, cap)
    if base_extension(W, 1)[1] != count:
        raise InternalConsistencyError(f"P(1) = {base_extension(W, 1)[1]} but #J(F_p) = {count}")
    return W


def two_torsion_count(C: HyperellipticCurve, n: int) -> int:
    """1 + r1 + C(r1, 2) + r2: monic squarefree divisors of f over F_{p^n} of degree <= 2."""
    r1 = r2 = 0
    for g, _ in ff_poly_factor(C.f, C.p):
        d = len(g) - 1
        k = _gcd(d, n)
        deg, copies = d // k, k
        if deg == 1:
            r1 += copies
        elif deg == 2:
            r2 += copies
    return 1 + r1 + comb(r1, 2) + r2


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def two_torsion_enumerated(C: HyperellipticCurve, n: int) -> int:
    J = Jacobian(C, n)
    return sum(1 for D in J.elements() if J.add(D, D) == IDENTITY)


def verify_jac(
    C: HyperellipticCurve,
    n: int,
    cap: int = DEFAULT_FIELD_CAP,
    index_cap: int = DEFAULT_INDEX_CAP,
) -> VerificationReport:
    """Compare #J and its structure with every Gorenstein order Z[pi, q/pi] <= O <= O_K.

    For P = m^d with d > 1 only the cardinality is compared.
    """
    _field_check(C, n, cap)
    W = jac_frobenius(C, cap)
    count, G = jac_enumerate(C, n, cap)
    if W.d != 1:
        rep = compare(W, n, count, None, [], "cardinality")
        rep.oracle_invariants = G
        rep.notes.append(f"structure NotAttempted: P = m^{W.d}")
        return rep
    K = weil_field(W)
    OK = maximal_order(K)
    Omin = order_construct(W, "zpipibar")
    preds = []
    for O in intermediate_orders(Omin, OK, index_cap):
        basis = O.basis_strings()
        idx = O.index_in(OK)
        if not is_gorenstein(O):
            preds.append(Prediction(basis, idx, None, "NotGorenstein"))
            continue
        preds.append(Prediction(basis, idx, rational_points_structure(W, O, n, GORENSTEIN).invariants))
    return compare(W, n, count, G, preds, GORENSTEIN)

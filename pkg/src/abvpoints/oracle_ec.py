"""Elliptic curves over small finite fields: exhaustive point groups and
verification of the predicted structure E(F_{q^n}) = O/(pi^n - 1)O.

Field elements of F_{p^k} are ints in range(p^k) whose base-p digits are the
coordinates in the power basis of the field's primitive modulus
(see :class:`~abvpoints.exactcore.ffield.FiniteField`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import FieldTooLarge, HypothesisNotMet, InternalConsistencyError, OutOfTheoremScope, SingularCurve
from .exactcore.ffield import GF, FiniteField
from .exactcore.intfactor import prime_power
from .groups import AbelianGroupStructure, group_structure
from .orders import NumberFieldOrder, intermediate_orders, maximal_order, weil_field
from .structure import CENTER, GORENSTEIN, rational_points_structure
from .weil import WeilPolynomial, base_extension, validate_weil

DEFAULT_FIELD_CAP = 10**5
DEFAULT_INDEX_CAP = 10**4


class EllipticCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_{p^k}."""

    def __init__(self, p: int, k: int, coeffs):
        self.p, self.k = p, k
        self.F = GF(p, k)
        F = self.F
        a1, a2, a3, a4, a6 = (int(c) for c in coeffs)
        for c in (a1, a2, a3, a4, a6):
            if not 0 <= c < F.q:
                raise SingularCurve(f"coefficient {c} is not an element of F_{F.q}")
        self.a = (a1, a2, a3, a4, a6)
        self.disc = _discriminant(F, self.a)
        if self.disc == 0:
            raise SingularCurve("discriminant is zero")

    @property
    def q(self) -> int:
        return self.F.q

    @property
    def modulus(self) -> tuple:
        return self.F.modulus

    def __repr__(self) -> str:
        return f"EllipticCurve(F_{self.q}, {list(self.a)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, EllipticCurve) and (self.p, self.k, self.a) == (other.p, other.k, other.a)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.a))


def _discriminant(F: FiniteField, a) -> int:
    a1, a2, a3, a4, a6 = a
    add, mul, m = F.add, F.mul, F.mul_int
    b2 = add(mul(a1, a1), m(a2, 4))
    b4 = add(m(a4, 2), mul(a1, a3))
    b6 = add(mul(a3, a3), m(a6, 4))
    # b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
    b8 = F.add(F.add(F.add(mul(mul(a1, a1), a6), m(mul(a2, a6), 4)), F.neg(mul(mul(a1, a3), a4))),
               F.sub(mul(mul(a2, a3), a3), mul(a4, a4)))
    t1 = F.neg(mul(mul(b2, b2), b8))
    t2 = F.neg(m(mul(mul(b4, b4), b4), 8))
    t3 = F.neg(m(mul(b6, b6), 27))
    t4 = m(mul(mul(b2, b4), b6), 9)
    return F.add(F.add(t1, t2), F.add(t3, t4))


class _CurveOver:
    """The curve's equation and group law over an extension field L."""

    def __init__(self, E: EllipticCurve, n: int):
        self.L = L = GF(E.p, E.k * n)
        emb = L.embedding_from(E.F)
        self.a = tuple(emb[c] for c in E.a)
        self._ops = L.ops()

    def rhs(self, x: int) -> int:
        L = self.L
        _, a2, _, a4, a6 = self.a
        acc = L.add(x, a2)
        acc = L.add(L.mul(acc, x), a4)
        return L.add(L.mul(acc, x), a6)

    def points(self) -> list:
        L = self.L
        a1, _, a3, _, _ = self.a
        pts: list = [None]
        if L.p == 2:
            for x in range(L.q):
                h = L.add(L.mul(a1, x), a3)
                r = self.rhs(x)
                if h == 0:
                    pts.extend((x, y) for y in L.sqrts(r))
                else:
                    c = L.div(r, L.mul(h, h))
                    pts.extend((x, L.mul(h, z)) for z in sorted(L.artin_schreier_roots(c)))
        else:
            # y' = y + h/2 turns the equation into y'^2 = w(x), a monic cubic
            a2, a4, a6 = self.a[1], self.a[3], self.a[4]
            inv2 = L.inv(L.from_int(2))
            inv4 = L.mul(inv2, inv2)
            c2 = L.add(a2, L.mul(L.mul(a1, a1), inv4))
            c1 = L.add(a4, L.mul(L.mul(a1, a3), inv2))
            c0 = L.add(a6, L.mul(L.mul(a3, a3), inv4))
            roots = L.sqrt_table()
            if L.k == 1:
                p = L.p
                h2 = (p - a1) * inv2 % p, (p - a3) * inv2 % p
                for x in range(p):
                    w = ((x + c2) * x + c1) * x + c0
                    rs = roots[w % p]
                    if rs:
                        base = (h2[0] * x + h2[1]) % p
                        pts.extend(sorted((x, (base + r) % p) for r in rs))
            else:
                add, _, mul, _ = self._ops
                na1, na3 = L.neg(L.mul(a1, inv2)), L.neg(L.mul(a3, inv2))
                for x in range(L.q):
                    rs = roots[add(mul(add(mul(add(x, c2), x), c1), x), c0)]
                    if rs:
                        base = add(mul(na1, x), na3)
                        pts.extend(sorted((x, add(base, r)) for r in rs))
        return pts

    def on_curve(self, P) -> bool:
        if P is None:
            return True
        L = self.L
        a1, _, a3, _, _ = self.a
        x, y = P
        lhs = L.add(L.mul(y, y), L.mul(y, L.add(L.mul(a1, x), a3)))
        return lhs == self.rhs(x)

    def neg(self, P):
        if P is None:
            return None
        L = self.L
        a1, _, a3, _, _ = self.a
        x, y = P
        return (x, L.sub(L.neg(y), L.add(L.mul(a1, x), a3)))

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        add, sub, mul, div = self._ops
        a1, a2, a3, a4, a6 = self.a
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if add(add(y1, y2), add(mul(a1, x2), a3)) == 0:
                return None
            den = add(add(add(y1, y1), mul(a1, x1)), a3)
            x1sq = mul(x1, x1)
            a2x1 = mul(a2, x1)
            lam_num = sub(add(add(add(add(x1sq, x1sq), x1sq), add(a2x1, a2x1)), a4), mul(a1, y1))
            nu_num = sub(add(sub(mul(a4, x1), mul(x1sq, x1)), add(a6, a6)), mul(a3, y1))
            lam = div(lam_num, den)
            nu = div(nu_num, den)
        else:
            dx = sub(x2, x1)
            lam = div(sub(y2, y1), dx)
            nu = div(sub(mul(y1, x2), mul(y2, x1)), dx)
        x3 = sub(sub(sub(add(mul(lam, lam), mul(a1, lam)), a2), x1), x2)
        y3 = sub(sub(sub(0, mul(add(lam, a1), x3)), nu), a3)
        return (x3, y3)


def _field_check(E: EllipticCurve, n: int, cap: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if E.q**n > cap:
        raise FieldTooLarge(f"q^n = {E.q}^{n} exceeds cap {cap}")


def ec_count(E: EllipticCurve, n: int = 1, cap: int = DEFAULT_FIELD_CAP) -> int:
    _field_check(E, n, cap)
    return len(_CurveOver(E, n).points())


def ec_enumerate(E: EllipticCurve, n: int = 1, cap: int = DEFAULT_FIELD_CAP) -> tuple[int, AbelianGroupStructure]:
    """(#E(F_{q^n}), invariant factors) by exhaustion."""
    _field_check(E, n, cap)
    C = _CurveOver(E, n)
    pts = C.points()
    G = group_structure(pts, C.add, None)
    if G.rank > 2:
        raise InternalConsistencyError(f"elliptic curve group with rank {G.rank}")
    return len(pts), G


def ec_frobenius(E: EllipticCurve) -> WeilPolynomial:
    N = ec_count(E, 1, cap=max(DEFAULT_FIELD_CAP, E.q))
    return _weil_from_count(E.q, N)


@lru_cache(maxsize=4096)
def _weil_from_count(q: int, N: int) -> WeilPolynomial:
    a = q + 1 - N
    return validate_weil(q, (q, -a, 1))


# ---------------------------------------------------------------- verification


@dataclass(frozen=True)
class Prediction:
    order_basis: list
    index: int
    invariants: AbelianGroupStructure | None
    skipped: str = ""

    def to_dict(self) -> dict:
        return {
            "order_basis": self.order_basis,
            "index": self.index,
            "invariants": None if self.invariants is None else self.invariants.to_list(),
            "skipped": self.skipped,
        }


@dataclass
class VerificationReport:
    verdict: str
    q: int
    n: int
    poly: tuple
    mode: str
    oracle_count: int
    oracle_invariants: AbelianGroupStructure | None
    expected_count: int
    predictions: list[Prediction] = field(default_factory=list)
    match_set: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def _predict_all(W: WeilPolynomial, orders, n: int, mode: str, OK) -> list[Prediction]:
    out = []
    for O in orders:
        idx = O.index_in(OK)
        basis = O.basis_strings()
        try:
            inv = rational_points_structure(W, O, n, mode).invariants
            out.append(Prediction(basis, idx, inv))
        except HypothesisNotMet as exc:  # reported per order
            out.append(Prediction(basis, idx, None, exc.reason))
    return out


def compare(W: WeilPolynomial, n: int, count: int, G: AbelianGroupStructure | None, predictions, mode: str) -> VerificationReport:
    _, expected = base_extension(W, n)
    matches = [p.order_basis for p in predictions if G is not None and p.invariants == G]
    card_ok = count == expected and all(p.invariants is None or p.invariants.order == count for p in predictions)
    verdict = "PASS" if card_ok and (G is None or matches) else "FAIL"
    return VerificationReport(
        verdict=verdict,
        q=W.q,
        n=n,
        poly=W.coeffs,
        mode=mode,
        oracle_count=count,
        oracle_invariants=G,
        expected_count=expected,
        predictions=list(predictions),
        match_set=matches,
    )


def verify_ec(
    E: EllipticCurve,
    n: int,
    cap: int = DEFAULT_FIELD_CAP,
    index_cap: int = DEFAULT_INDEX_CAP,
    integral_pi: str = "center",
) -> VerificationReport:
    """Compare the exhaustive group with the prediction of every order Z[pi] <= O <= O_K.

    When pi is an integer (P = (t - c)^2) the commutative prediction does not
    apply. With ``integral_pi="center"`` the center Z is used instead
    (prediction (Z/(c^n - 1))^2); with ``"skip"`` OutOfTheoremScope is raised.
    """
    _field_check(E, n, cap)
    W = ec_frobenius(E)
    count, G = ec_enumerate(E, n, cap)
    mode, preds = _predictions(W, n, index_cap, integral_pi)
    rep = compare(W, n, count, G, preds, mode)
    if W.d == 2:
        rep.notes.append("pi is an integer: predicted via the center Z")
    return rep


@lru_cache(maxsize=4096)
def _predictions(W: WeilPolynomial, n: int, index_cap: int, integral_pi: str) -> tuple[str, tuple[Prediction, ...]]:
    """Predictions depend only on (P, n), so curves sharing a Frobenius share them."""
    K = weil_field(W)
    OK = maximal_order(K)
    if W.d == 1:
        mode = GORENSTEIN
        orders = intermediate_orders(NumberFieldOrder.equation_order(K), OK, index_cap)
    else:
        if integral_pi != "center":
            raise OutOfTheoremScope("pi is an integer; the endomorphism ring is non-commutative")
        mode = CENTER
        orders = [OK]
    return mode, tuple(_predict_all(W, orders, n, mode, OK))


# ---------------------------------------------------------------- curve families


def all_curves(p: int, k: int) -> list[EllipticCurve]:
    """Every nonsingular Weierstrass curve over F_{p^k}, in lexicographic coefficient order."""
    F = GF(p, k)
    out = []
    for a in itertools.product(range(F.q), repeat=5):
        if _discriminant(F, a):
            out.append(EllipticCurve(p, k, a))
    return out


def transform(F: FiniteField, a, u: int, r: int, s: int, t: int) -> tuple:
    """Coefficients after x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
    a1, a2, a3, a4, a6 = a
    add, sub, mul, m = F.add, F.sub, F.mul, F.mul_int
    ui = F.inv(u)
    b1 = add(a1, m(s, 2))
    b2 = sub(add(sub(a2, mul(s, a1)), m(r, 3)), mul(s, s))
    b3 = add(add(a3, mul(r, a1)), m(t, 2))
    b4 = add(
        sub(add(sub(a4, mul(s, a3)), m(mul(r, a2), 2)), mul(add(t, mul(r, s)), a1)),
        sub(m(mul(r, r), 3), m(mul(s, t), 2)),
    )
    b6 = sub(
        sub(add(add(add(a6, mul(r, a4)), mul(mul(r, r), a2)), mul(mul(r, r), r)), mul(t, a3)),
        add(mul(t, t), mul(mul(r, t), a1)),
    )
    return (
        mul(b1, ui),
        mul(b2, F.pow(ui, 2)),
        mul(b3, F.pow(ui, 3)),
        mul(b4, F.pow(ui, 4)),
        mul(b6, F.pow(ui, 6)),
    )


def isomorphism_classes(p: int, k: int) -> dict[tuple, list[tuple]]:
    """Partition of all nonsingular curves over F_{p^k} into F_{p^k}-isomorphism classes.

    Keys are class representatives (lexicographically least member); values
    list every member. Each member is reached from the representative by an
    explicit change of variables.
    """
    F = GF(p, k)
    seen: set = set()
    classes: dict[tuple, list[tuple]] = {}
    group = [(u, r, s, t) for u in range(1, F.q) for r in range(F.q) for s in range(F.q) for t in range(F.q)]
    for a in itertools.product(range(F.q), repeat=5):
        if a in seen or not _discriminant(F, a):
            continue
        orbit = {transform(F, a, *g) for g in group}
        seen |= orbit
        classes[a] = sorted(orbit)
    return classes


def campaign(q: int, max_field: int = 10**4, integral_pi: str = "center"):
    """Yield (curve, n, report) for every nonsingular curve over F_q and every n with q^n <= max_field."""
    p, k = prime_power(q)
    ns = [n for n in range(1, 64) if q**n <= max_field]
    for E in all_curves(p, k):
        for n in ns:
            yield E, n, verify_ec(E, n, cap=max_field, integral_pi=integral_pi)

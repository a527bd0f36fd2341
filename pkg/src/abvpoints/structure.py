"""Predicted group structure of A(F_{q^n}) and of torsion subgroups.

Two modes. In ``gorenstein`` mode P is irreducible and the order O (the
endomorphism ring) is Gorenstein; the answer is O/(pi^n - 1)O. In ``center``
mode P = m^d and O is the center, an order of Q(pi); the answer is d copies
of O/(pi^n - 1)O, valid when pi^n - 1 is coprime to the conductor of O.
Every report carries its hypothesis certificates and an independent
cardinality cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .errors import (
    HypothesisNotMet,
    InternalConsistencyError,
    NotCoprime,
    NotInOrder,
    NotInvertiblePrime,
    ResidueCharacteristicP,
    SeparabilityUnknown,
    ZeroElement,
)
from .groups import AbelianGroupStructure
from .orders import (
    FractionalIdeal,
    NumberFieldOrder,
    conductor,
    factor_coprime_ideal,
    is_gorenstein,
    is_invertible,
    is_prime_ideal,
    residue_structure,
    weil_field,
)
from .weil import WeilPolynomial, base_extension, point_count_resultant

GORENSTEIN = "gorenstein"
CENTER = "center"
MODE_NAMES = {GORENSTEIN: "GorensteinCase", CENTER: "CenterCase"}


@dataclass(frozen=True)
class Certificate:
    name: str
    holds: bool
    witness: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "witness": self.witness}


@dataclass(frozen=True)
class StructureReport:
    mode: str
    invariants: AbelianGroupStructure
    cardinality: int
    crosscheck: int
    d: int
    n: int | None = None
    s: tuple | None = None
    certificates: tuple[Certificate, ...] = ()
    base: AbelianGroupStructure | None = None


@dataclass(frozen=True)
class TowerReport:
    chain: tuple[tuple[int, AbelianGroupStructure], ...]
    growth: dict = field(default_factory=dict)
    limit_description: tuple = ()


def _mode(W: WeilPolynomial, mode: str | None) -> str:
    if mode is None or mode == "auto":
        return GORENSTEIN if W.d == 1 else CENTER
    if mode not in MODE_NAMES:
        raise ValueError(f"unknown mode {mode!r}")
    return mode


def _check_order(W: WeilPolynomial, O: NumberFieldOrder) -> Certificate:
    K = weil_field(W)
    if O.field != K:
        raise ValueError("order does not live in Q(pi)")
    if not O.contains(K.gen()):
        raise NotInOrder("the order does not contain pi")
    return Certificate("ContainsFrobenius", True, "pi in O")


def _hypotheses(W: WeilPolynomial, O: NumberFieldOrder, s, mode: str) -> list[Certificate]:
    certs = [_check_order(W, O)]
    if mode == GORENSTEIN:
        if W.d != 1:
            raise HypothesisNotMet("NotCommutativeCase", f"deg m = {W.field_degree} != 2g = {2 * W.g}")
        certs.append(Certificate("CommutativeCase", True, f"deg m = 2g = {2 * W.g}"))
        if not is_gorenstein(O):
            raise HypothesisNotMet("NotGorenstein", "the trace dual of O is not invertible")
        certs.append(Certificate("Gorenstein", True, "trace dual is invertible"))
    else:
        f = conductor(O)
        if not (O.principal(s) + f).is_unit():
            raise NotCoprime("sO + f != O")
        certs.append(Certificate("CoprimeToConductor", True, f"[O : f] = {f.norm()}"))
        certs.append(
            Certificate(
                "UniqueModuleStructure",
                True,
                f"recorded, not computed: the group is (O/sO)^{W.d} as a module over the center",
            )
        )
    return certs


def _report(W, O, s, mode, n, certs, crosscheck) -> StructureReport:
    base = residue_structure(O, s)
    d = 1 if mode == GORENSTEIN else W.d
    inv = base.power(d)
    card = inv.order
    if card != crosscheck:
        raise InternalConsistencyError(f"group order {card} != cross-check {crosscheck}")
    return StructureReport(
        mode=MODE_NAMES[mode],
        invariants=inv,
        cardinality=card,
        crosscheck=crosscheck,
        d=d,
        n=n,
        s=tuple(s),
        certificates=tuple(certs),
        base=base,
    )


def frobenius_minus_one(W: WeilPolynomial, n: int) -> tuple:
    K = weil_field(W)
    return K.sub(K.pow(K.gen(), n), K.one())


def rational_points_structure(W: WeilPolynomial, O: NumberFieldOrder, n: int, mode: str | None = None) -> StructureReport:
    """Predicted A(F_{q^n}) with certificates; cardinality cross-checked two ways."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mode = _mode(W, mode)
    s = frobenius_minus_one(W, n)
    certs = _hypotheses(W, O, s, mode)
    certs.append(Certificate("Separable", True, f"s = pi^{n} - 1"))
    _, count = base_extension(W, n)
    res = point_count_resultant(W.coeffs, n)
    if count != res:
        raise InternalConsistencyError(f"P_n(1) = {count} but |Res(P, t^n - 1)| = {res}")
    return _report(W, O, s, mode, n, certs, count)


def separability_certificate(W: WeilPolynomial, s) -> Certificate:
    """Either s = pi^n - 1 or gcd(N(s), p) = 1; otherwise SeparabilityUnknown."""
    K = weil_field(W)
    t = K.add(s, K.one())
    N = abs(K.norm(t))
    deg = K.n
    # |N(pi)| = q^(deg m / 2), so |N(pi^n)| = q^(n deg / 2)
    if N > 1:
        e, x = 0, N
        while x % W.q == 0:
            x //= W.q
            e += 1
        if x == 1 and (2 * e) % deg == 0 and 2 * e // deg >= 1:
            n = 2 * e // deg
            if K.pow(K.gen(), n) == tuple(t):
                return Certificate("Separable", True, f"s = pi^{n} - 1")
    Ns = abs(K.norm(s))
    if Ns and gcd(int(Ns), W.p) == 1:
        return Certificate("Separable", True, f"gcd(N(s), p) = gcd({Ns}, {W.p}) = 1")
    raise SeparabilityUnknown(f"s is not pi^n - 1 and p divides N(s) = {Ns}")


def torsion_structure(W: WeilPolynomial, O: NumberFieldOrder, s, mode: str | None = None) -> StructureReport:
    """Predicted A[s] for a separable s in O."""
    mode = _mode(W, mode)
    K = weil_field(W)
    s = tuple(s)
    if not any(s):
        raise ZeroElement("s = 0")
    O.integral_coords(s)
    sep = separability_certificate(W, s)
    certs = _hypotheses(W, O, s, mode)
    certs.append(sep)
    d = 1 if mode == GORENSTEIN else W.d
    cross = abs(int(K.norm(s))) ** d
    return _report(W, O, s, mode, None, certs, cross)


def prime_power_torsion(W: WeilPolynomial, O: NumberFieldOrder, pr: FractionalIdeal, r: int, mode: str | None = None) -> AbelianGroupStructure:
    """A[pr^r] = (O/pr^r)^d for an invertible prime pr not above p."""
    mode = _mode(W, mode)
    if r < 0:
        raise ValueError("r must be >= 0")
    if not (is_prime_ideal(pr) and is_invertible(pr)):
        raise NotInvertiblePrime("ideal is not an invertible prime")
    N = pr.norm()
    if N % W.p == 0:
        raise ResidueCharacteristicP(f"N(p) = {N} is a power of the characteristic")
    if r == 0:
        return AbelianGroupStructure()
    d = 1 if mode == GORENSTEIN else W.d
    return (pr**r).residue_structure().power(d)


def crt_route(W: WeilPolynomial, O: NumberFieldOrder, s, mode: str = CENTER) -> AbelianGroupStructure:
    """A[s] assembled from the prime factorization of sO, block by block."""
    mode = _mode(W, mode)
    d = 1 if mode == GORENSTEIN else W.d
    blocks = [(pr**e).residue_structure() for pr, e in factor_coprime_ideal(O, s)]
    return AbelianGroupStructure().direct_sum(*blocks).power(d)


def ell_primary_growth(W: WeilPolynomial, O: NumberFieldOrder, ell: int, depth: int, mode: str | None = None):
    """[(k, A[ell^k])] for k = 1..depth from the primes above ell, with a per-prime summary.

    Each entry is cross-checked against the direct torsion computation of s = ell^k.
    """
    mode = _mode(W, mode)
    K = weil_field(W)
    factors = factor_coprime_ideal(O, K.from_int(ell))
    out = []
    for k in range(1, depth + 1):
        blocks = [prime_power_torsion(W, O, pr, e * k, mode) for pr, e in factors]
        G = AbelianGroupStructure().direct_sum(*blocks)
        direct = torsion_structure(W, O, K.from_int(ell**k), mode).invariants
        if G != direct:
            raise InternalConsistencyError(f"A[{ell}^{k}]: prime-power route {G} != direct {direct}")
        out.append((k, G))
    summary = tuple({"ell": ell, "prime_hnf": pr.num, "norm": pr.norm(), "exponent": e} for pr, e in factors)
    return out, summary


def fbar_tower(
    W: WeilPolynomial,
    O: NumberFieldOrder,
    chain: Sequence[int],
    ells: Sequence[int] = (),
    depth: int = 2,
    mode: str | None = None,
) -> TowerReport:
    """Structures along n_1 | n_2 | ... plus ell-primary growth, as a finite view of A(F_q-bar)."""
    for a, b in zip(chain, chain[1:]):
        if b % a:
            raise ValueError(f"{a} does not divide {b}")
    entries = [(n, rational_points_structure(W, O, n, mode).invariants) for n in chain]
    for (a, Ga), (b, Gb) in zip(entries, entries[1:]):
        if not Ga.divides(Gb):
            raise InternalConsistencyError(f"A(F_q^{a}) = {Ga} does not divide A(F_q^{b}) = {Gb}")
    growth = {}
    limit = []
    for ell in ells:
        if ell % W.p == 0:
            raise ResidueCharacteristicP(f"ell = {ell} is divisible by p = {W.p}")
        growth[ell], summary = ell_primary_growth(W, O, ell, depth, mode)
        limit.extend(summary)
    return TowerReport(chain=tuple(entries), growth=growth, limit_description=tuple(limit))

"""Orders and fractional ideals in a number field K = Q[t]/(m).

Field elements are coordinate tuples in the power basis 1, t, ..., t^(n-1)
(ints or Fractions). An order carries its basis in power coordinates as
``num / den`` with ``num`` in HNF, plus integer structure constants. Ideals
are stored in the coordinates of their order's basis, again as
``num / den`` with ``num`` in HNF, so lattice equality is tuple equality.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import (
    BadPrime,
    IndexCapExceeded,
    InternalConsistencyError,
    NotARing,
    NotCoprime,
    NotFullRank,
    NotInOrder,
    ZeroElement,
    ZeroIdeal,
)
from .exactcore import poly as P
from .exactcore.ffield import ff_poly_factor
from .exactcore.intfactor import factor_integer
from .exactcore.linalg import (
    det,
    nullspace_mod_p,
    rank_mod_p,
    rational_inverse,
    rational_lattice,
    smith_form,
    transpose,
    vecmat,
)
from .exactcore.zzfactor import is_irreducible_z
from .groups import AbelianGroupStructure

DEFAULT_INDEX_CAP = 10**4
KUMMER_SEARCH_BUDGET = 5000


def _clean(v):
    return tuple(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in v)


def _is_integral_vec(v) -> bool:
    return all(not isinstance(c, Fraction) or c.denominator == 1 for c in v)


# ---------------------------------------------------------------- field


class NumberField:
    """K = Q[t]/(m) for a monic irreducible integer polynomial m."""

    def __init__(self, m: Sequence[int], check: bool = True):
        m = P.trim(int(c) for c in m)
        if not m or m[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        if check and not is_irreducible_z(m):
            raise ValueError(f"{P.fmt(m)} is not irreducible over Q")
        self.m = m
        self.n = len(m) - 1
        n = self.n
        # t^k reduced, k = 0 .. 2n-2
        red = []
        cur = [0] * n
        if n:
            cur[0] = 1
        for k in range(2 * n - 1):
            red.append(tuple(cur))
            top = cur[-1] if n else 0
            cur = [0] + cur[:-1]
            if top:
                for i in range(n):
                    cur[i] -= top * m[i]
        self._red = red
        self._trace_powers = [sum(self.mult_matrix(r)[i][i] for i in range(n)) for r in red[:n]] if n else []

    def __repr__(self) -> str:
        return f"NumberField({P.fmt(self.m)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.m == other.m

    def __hash__(self) -> int:
        return hash(self.m)

    def zero(self) -> tuple:
        return (0,) * self.n

    def one(self) -> tuple:
        return (1,) + (0,) * (self.n - 1)

    def gen(self) -> tuple:
        if self.n == 1:
            return (-self.m[0],)
        return (0, 1) + (0,) * (self.n - 2)

    def from_int(self, c) -> tuple:
        return (c,) + (0,) * (self.n - 1)

    def from_poly(self, f) -> tuple:
        """Image of the polynomial f(t)."""
        acc = [0] * self.n
        for k, c in enumerate(f):
            if c:
                r = self._reduce_power(k)
                for i in range(self.n):
                    acc[i] += c * r[i]
        return _clean(acc)

    def _reduce_power(self, k: int) -> tuple:
        if k < len(self._red):
            return self._red[k]
        return self.pow(self.gen(), k)

    def add(self, a, b) -> tuple:
        return _clean(x + y for x, y in zip(a, b))

    def sub(self, a, b) -> tuple:
        return _clean(x - y for x, y in zip(a, b))

    def scale(self, a, c) -> tuple:
        return _clean(x * c for x in a)

    def mul(self, a, b) -> tuple:
        n = self.n
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = [0] * n
        for k, c in enumerate(prod):
            if c:
                r = self._red[k]
                for i in range(n):
                    if r[i]:
                        out[i] += c * r[i]
        return _clean(out)

    def pow(self, a, e: int) -> tuple:
        if e < 0:
            return self.pow(self.inverse(a), -e)
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def mult_matrix(self, a) -> list[list]:
        """Rows are the coordinates of t^i * a."""
        rows = []
        cur = tuple(a)
        for i in range(self.n):
            rows.append(list(cur))
            cur = self.mul(cur, self.gen()) if self.n > 1 else cur
        return rows

    def trace(self, a):
        return sum(c * t for c, t in zip(a, self._trace_powers))

    def norm(self, a):
        return det(self.mult_matrix(a))

    def inverse(self, a) -> tuple:
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        M = self.mult_matrix(a)
        inv = rational_inverse(M)
        # x * a = 1  <=>  x_coords @ M = e_0
        return _clean(inv[0])

    def charpoly(self, a) -> tuple:
        """Characteristic polynomial of multiplication by a (monic, degree n)."""
        sums = []
        cur = self.one()
        for _ in range(self.n):
            cur = self.mul(cur, a)
            sums.append(self.trace(cur))
        return P.from_power_sums(sums, self.n)

    def is_integral(self, a) -> bool:
        return all(not isinstance(c, Fraction) for c in self.charpoly(a))

    def discriminant(self) -> int:
        return P.discriminant(self.m)


@lru_cache(maxsize=256)
def number_field(m: tuple) -> NumberField:
    return NumberField(m)


# ---------------------------------------------------------------- lattices


def dual_rows(basis: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of {x : x . b in Z for all rows b} for a full-rank basis."""
    return transpose(rational_inverse(basis))


def lattice_intersection(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    """Intersection of two full-rank lattices (rows), as a rational basis."""
    den, H = rational_lattice(dual_rows(A) + dual_rows(B))
    return dual_rows([[Fraction(v, den) for v in r] for r in H])


# ---------------------------------------------------------------- orders


class NumberFieldOrder:
    """A full-rank subring of K containing 1."""

    def __init__(self, field: NumberField, den: int, num: list[list[int]], table=None):
        self.field = field
        self.den = den
        self.num = [list(r) for r in num]
        self.basis = [_clean(Fraction(v, den) for v in r) for r in num]
        self.basis_inv = rational_inverse(self.basis)
        if table is None:
            table = self._build_table()
        self.table = table

    @classmethod
    def from_basis(cls, field: NumberField, rows: Sequence[Sequence]) -> "NumberFieldOrder":
        den, H = rational_lattice(rows)
        if len(H) != field.n:
            raise NotFullRank(f"lattice has rank {len(H)} < {field.n}")
        return cls(field, den, H)

    @classmethod
    def equation_order(cls, field: NumberField) -> "NumberFieldOrder":
        n = field.n
        return cls(field, 1, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def generated_by(cls, field: NumberField, gens: Iterable, max_iter: int = 64) -> "NumberFieldOrder":
        """Smallest order containing 1 and ``gens`` (power coordinates)."""
        gens = [tuple(g) for g in gens]
        for g in gens:
            if not field.is_integral(g):
                raise NotARing(f"generator {g} is not integral")
        rows = [field.one()] + gens
        den, H = rational_lattice(rows)
        for _ in range(max_iter):
            basis = [[Fraction(v, den) for v in r] for r in H]
            prods = [field.mul(a, b) for a, b in itertools.combinations_with_replacement(basis, 2)]
            den2, H2 = rational_lattice(basis + prods)
            if (den2, H2) == (den, H):
                break
            den, H = den2, H2
        else:
            raise NotARing("multiplicative closure did not stabilize")
        if len(H) != field.n:
            raise NotFullRank(f"generated ring has rank {len(H)} < {field.n}")
        return cls(field, den, H)

    def _build_table(self):
        n = self.field.n
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                prod = self.field.mul(self.basis[i], self.basis[j])
                c = vecmat(prod, self.basis_inv)
                if not _is_integral_vec(c):
                    raise NotARing("lattice is not closed under multiplication")
                row.append(tuple(int(v) for v in c))
            table.append(row)
        one = vecmat(self.field.one(), self.basis_inv)
        if not _is_integral_vec(one):
            raise NotARing("lattice does not contain 1")
        self.one_coords = tuple(int(v) for v in one)
        return table

    # identity and display
    def key(self) -> tuple:
        return (self.field.m, self.den, tuple(map(tuple, self.num)))

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberFieldOrder) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Order(den={self.den}, num={self.num})"

    @property
    def rank(self) -> int:
        return self.field.n

    # coordinates
    def coords(self, x) -> tuple:
        """Order coordinates of a field element (may be fractional)."""
        return _clean(vecmat(x, self.basis_inv))

    def element(self, c) -> tuple:
        """Field element with order coordinates c."""
        return _clean(vecmat(c, self.basis))

    def contains(self, x) -> bool:
        return _is_integral_vec(self.coords(x))

    def integral_coords(self, x) -> tuple:
        c = self.coords(x)
        if not _is_integral_vec(c):
            raise NotInOrder(f"{x} is not in the order")
        return tuple(int(v) for v in c)

    def mul_coords(self, a, b) -> tuple:
        n = self.field.n
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                Ti = self.table[i]
                for j, y in enumerate(b):
                    if y:
                        xy = x * y
                        for k, c in enumerate(Ti[j]):
                            if c:
                                out[k] += xy * c
        return _clean(out)

    def coord_mult_matrix(self, a) -> list[list]:
        """Rows are order coordinates of b_i * a, for a given in order coordinates."""
        n = self.field.n
        rows = []
        for i in range(n):
            acc = [0] * n
            Ti = self.table[i]
            for j, x in enumerate(a):
                if x:
                    for k, c in enumerate(Ti[j]):
                        if c:
                            acc[k] += x * c
            rows.append(acc)
        return [list(_clean(r)) for r in rows]

    def element_matrix(self, x) -> list[list[int]]:
        """Integer matrix of multiplication by x in O (x in power coordinates)."""
        return [list(r) for r in self.coord_mult_matrix(self.integral_coords(x))]

    @cached_property
    def trace_matrix(self) -> list[list[int]]:
        n = self.field.n
        return [[int(self.field.trace(self.field.mul(self.basis[i], self.basis[j]))) for j in range(n)] for i in range(n)]

    @cached_property
    def discriminant(self) -> int:
        return det(self.trace_matrix)

    def index_in(self, bigger: "NumberFieldOrder") -> int:
        """[bigger : self]."""
        M = [bigger.coords(b) for b in self.basis]
        d = det(M)
        if isinstance(d, Fraction):
            if d.denominator != 1:
                raise ValueError("not a suborder")
            d = int(d)
        return abs(d)

    def unit_ideal(self) -> "FractionalIdeal":
        n = self.field.n
        return FractionalIdeal(self, 1, [[int(i == j) for j in range(n)] for i in range(n)])

    def principal(self, x) -> "FractionalIdeal":
        return FractionalIdeal.principal(self, x)

    def basis_strings(self) -> list[list[str]]:
        return [[str(v) for v in b] for b in self.basis]


# ---------------------------------------------------------------- ideals


class FractionalIdeal:
    """Nonzero finitely generated O-submodule of K of full rank."""

    def __init__(self, order: NumberFieldOrder, den: int, num: list[list[int]]):
        if len(num) != order.rank:
            raise ZeroIdeal("ideal lattice is not of full rank")
        self.order = order
        self.den = den
        self.num = [list(r) for r in num]

    @cached_property
    def basis(self) -> list[tuple]:
        """Rows in order coordinates."""
        return [_clean(Fraction(v, self.den) for v in r) for r in self.num]

    @cached_property
    def basis_inv(self):
        return rational_inverse(self.basis)

    @classmethod
    def from_lattice(cls, order: NumberFieldOrder, rows: Sequence[Sequence], check: bool = True) -> "FractionalIdeal":
        den, H = rational_lattice(rows)
        if len(H) != order.rank:
            raise ZeroIdeal("lattice is not of full rank")
        I = cls(order, den, H)
        if check and not I._is_module():
            raise ValueError("lattice is not closed under multiplication by the order")
        return I

    @classmethod
    def from_generators(cls, order: NumberFieldOrder, gens: Iterable) -> "FractionalIdeal":
        """O-ideal generated by elements given in order coordinates."""
        rows = []
        for g in gens:
            if any(g):
                rows.extend(order.coord_mult_matrix(g))
        if not rows:
            raise ZeroIdeal("all generators are zero")
        return cls.from_lattice(order, rows, check=False)

    @classmethod
    def principal(cls, order: NumberFieldOrder, x) -> "FractionalIdeal":
        """xO for a field element x in power coordinates."""
        if not any(x):
            raise ZeroIdeal("principal ideal of zero")
        return cls.from_generators(order, [order.coords(x)])

    def _is_module(self) -> bool:
        n = self.order.rank
        for i in range(n):
            e = [int(i == j) for j in range(n)]
            M = self.order.coord_mult_matrix(e)
            for b in self.basis:
                if not self.contains_coords(vecmat(b, M)):
                    return False
        return True

    def key(self) -> tuple:
        return (self.order.key(), self.den, tuple(map(tuple, self.num)))

    def __eq__(self, other) -> bool:
        return isinstance(other, FractionalIdeal) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Ideal(den={self.den}, num={self.num})"

    def contains_coords(self, c) -> bool:
        return _is_integral_vec(vecmat(c, self.basis_inv))

    def contains(self, x) -> bool:
        return self.contains_coords(self.order.coords(x))

    def issubset(self, other: "FractionalIdeal") -> bool:
        return all(other.contains_coords(b) for b in self.basis)

    def __add__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        _same_order(self, other)
        return FractionalIdeal.from_lattice(self.order, self.basis + other.basis, check=False)

    def __mul__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        _same_order(self, other)
        rows = []
        for a in self.basis:
            M = self.order.coord_mult_matrix(a)
            for b in other.basis:
                rows.append(vecmat(b, M))
        return FractionalIdeal.from_lattice(self.order, rows, check=False)

    def __pow__(self, e: int) -> "FractionalIdeal":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.order.unit_ideal()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def colon(self, other: "FractionalIdeal") -> "FractionalIdeal":
        """(self : other) = {x in K : x * other in self}."""
        _same_order(self, other)
        cols = []
        for j in other.basis:
            C = [vecmat(row, self.basis_inv) for row in self.order.coord_mult_matrix(j)]
            # x @ C integral for the map x -> x * j followed by self-coordinates
            cols.extend(transpose(C))
        den, H = rational_lattice(cols)
        G = [[Fraction(v, den) for v in r] for r in H]
        return FractionalIdeal.from_lattice(self.order, dual_rows(G), check=False)

    def inverse(self) -> "FractionalIdeal":
        """(O : I). Equals the inverse exactly when I is invertible."""
        return self.order.unit_ideal().colon(self)

    def scale(self, x) -> "FractionalIdeal":
        """x * I for a field element x (power coordinates)."""
        M = self.order.coord_mult_matrix(self.order.coords(x))
        return FractionalIdeal.from_lattice(self.order, [vecmat(b, M) for b in self.basis], check=False)

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def norm(self) -> Fraction | int:
        """Lattice index relative to O: [O : I] for integral I, multiplicative on invertibles."""
        d = det(self.basis)
        d = abs(d)
        return int(d) if isinstance(d, int) or d.denominator == 1 else d

    def is_unit(self) -> bool:
        return self == self.order.unit_ideal()

    def residue_structure(self) -> AbelianGroupStructure:
        """O/I for an integral ideal I."""
        if not self.is_integral:
            raise ValueError("residue structure needs an integral ideal")
        diag, _, _ = smith_form(self.num)
        return AbelianGroupStructure.from_cyclic_orders(diag)

    def power_basis_rows(self) -> list[tuple]:
        return [self.order.element(b) for b in self.basis]

    def in_order(self, target: NumberFieldOrder) -> "FractionalIdeal":
        """The same lattice of K, re-expressed as a lattice over ``target`` coordinates.

        Only meaningful when the lattice is a ``target``-module.
        """
        rows = [target.coords(x) for x in self.power_basis_rows()]
        return FractionalIdeal.from_lattice(target, rows)


def _same_order(I: FractionalIdeal, J: FractionalIdeal) -> None:
    if I.order != J.order:
        raise ValueError("ideals belong to different orders")


# ---------------------------------------------------------------- operations


def ideal_arith(op: str, I: FractionalIdeal, J: FractionalIdeal) -> FractionalIdeal:
    if op == "sum":
        return I + J
    if op == "product":
        return I * J
    if op == "quotient":
        return I.colon(J)
    raise ValueError(f"unknown ideal operation {op!r}")


def is_invertible(I: FractionalIdeal) -> bool:
    return (I * I.inverse()).is_unit()


def p_radical(O: NumberFieldOrder, p: int) -> FractionalIdeal:
    """{x in O : x^k in pO for some k} as an ideal of O."""
    n = O.rank
    j = 1
    while p**j < n:
        j += 1
    e = p**j
    rows = []
    for i in range(n):
        x = [int(i == k) for k in range(n)]
        acc = list(O.one_coords)
        base = x
        ee = e
        while ee:
            if ee & 1:
                acc = [v % p for v in O.mul_coords(acc, base)]
            ee >>= 1
            if ee:
                base = [v % p for v in O.mul_coords(base, base)]
        rows.append(acc)
    kernel = nullspace_mod_p(rows, p)
    gens = [list(k) for k in kernel] + [[p * int(i == k) for k in range(n)] for i in range(n)]
    return FractionalIdeal.from_lattice(O, gens, check=False)


def multiplier_ring(I: FractionalIdeal) -> NumberFieldOrder:
    """{x in K : x I in I} as an order."""
    R = I.colon(I)
    return NumberFieldOrder.from_basis(I.order.field, R.power_basis_rows())


def p_maximal_order(O: NumberFieldOrder, p: int) -> NumberFieldOrder:
    while True:
        bigger = multiplier_ring(p_radical(O, p))
        if bigger == O:
            return O
        O = bigger


@lru_cache(maxsize=256)
def _maximal_order_cached(m: tuple, rho_budget: int | None) -> NumberFieldOrder:
    K = number_field(m)
    O = NumberFieldOrder.equation_order(K)
    disc = abs(K.discriminant())
    for p, e in factor_integer(disc, rho_budget) if disc > 1 else []:
        if e >= 2:
            O = p_maximal_order(O, p)
    return O


def maximal_order(K: NumberField, rho_budget: int | None = None) -> NumberFieldOrder:
    """Ring of integers by Round 2 (p-radical idealizer loop at each p with p^2 | disc)."""
    return _maximal_order_cached(K.m, rho_budget)


def conductor(O: NumberFieldOrder) -> FractionalIdeal:
    OK = maximal_order(O.field)
    OK_as_ideal = FractionalIdeal.from_lattice(O, [O.coords(b) for b in OK.basis], check=False)
    return O.unit_ideal().colon(OK_as_ideal)


def is_coprime_to_conductor(s, O: NumberFieldOrder) -> bool:
    if not any(s):
        raise ZeroElement("zero element")
    O.integral_coords(s)
    return (O.principal(s) + conductor(O)).is_unit()


def trace_dual(O: NumberFieldOrder) -> FractionalIdeal:
    """{x in K : Tr(x O) in Z}, as a fractional ideal of O."""
    return FractionalIdeal.from_lattice(O, rational_inverse(O.trace_matrix), check=False)


def is_gorenstein(O: NumberFieldOrder) -> bool:
    return is_invertible(trace_dual(O))


def residue_structure(O: NumberFieldOrder, s) -> AbelianGroupStructure:
    """O/sO from the Smith form of multiplication by s on the basis of O."""
    M = O.element_matrix(s)
    if det(M) == 0:
        raise ZeroElement("s has norm zero")
    diag, _, _ = smith_form(M)
    return AbelianGroupStructure.from_cyclic_orders(diag)


def is_prime_ideal(I: FractionalIdeal) -> bool:
    """Exact primality test for an integral ideal.

    O/I must have order p^f with p in I, and the F_p-algebra O/I must be a
    field: Frobenius injective (reduced) with a one-dimensional fixed space.
    """
    if not I.is_integral or I.is_unit():
        return False
    N = I.norm()
    fac = factor_integer(N)
    if len(fac) != 1:
        return False
    p, f = fac[0]
    O = I.order
    n = O.rank
    if not all(I.contains_coords([p * int(i == j) for j in range(n)]) for i in range(n)):
        return False
    basis, F = _frobenius_on_quotient(I, p)
    if len(basis) != f or rank_mod_p(F, p) != f:
        return False
    return _fixed_space_dim(F, p) == 1


def _frobenius_on_quotient(I: FractionalIdeal, p: int):
    """F_p-basis of O/I (for pO inside I) and the matrix of x -> x^p on it.

    Returns ``(basis, F)``: basis elements in order coordinates and rows
    F[i] = coordinates of basis[i]^p in that basis.
    """
    O = I.order
    n = O.rank
    diag, _, V = smith_form(I.num)
    # x -> x V carries I onto diag(...) Z^n; entries are 1 or p since pO lies in I
    Vinv = [[int(v) for v in r] for r in rational_inverse(V)]
    live = [i for i, d in enumerate(diag) if d != 1]
    basis = [vecmat([int(j == i) for j in range(n)], Vinv) for i in live]

    def reduce(x):
        y = vecmat(x, V)
        return [y[i] % p for i in live]

    def frob(x):
        acc = list(O.one_coords)
        base = [v % p for v in x]
        e = p
        while e:
            if e & 1:
                acc = [v % p for v in O.mul_coords(acc, base)]
            e >>= 1
            if e:
                base = [v % p for v in O.mul_coords(base, base)]
        return acc

    return basis, [reduce(frob(b)) for b in basis]


def _fixed_space(F, p: int):
    k = len(F)
    return nullspace_mod_p([[(F[i][j] - int(i == j)) % p for j in range(k)] for i in range(k)], p)


def _fixed_space_dim(F, p: int) -> int:
    return len(_fixed_space(F, p))


def _split_semisimple(J: FractionalIdeal, p: int) -> list[FractionalIdeal]:
    """Maximal ideals containing J, for J containing the p-radical of its order.

    O/J is then a product of finite fields; elements fixed by Frobenius take
    values in F_p on each factor, and b - c for c in F_p cuts out the factors
    where b equals c.
    """
    O = J.order
    basis, F = _frobenius_on_quotient(J, p)
    fixed = _fixed_space(F, p)
    if len(fixed) == 1:
        return [J]
    for y in fixed:
        b = [sum(c * v for c, v in zip(y, col)) for col in zip(*basis)]
        parts = []
        for c in range(p):
            x = [v - c * o for v, o in zip(b, O.one_coords)]
            Jc = J + FractionalIdeal.from_generators(O, [x]) if any(x) else J
            if not Jc.is_unit():
                parts.append(Jc)
        if len(parts) > 1:
            out = []
            for part in parts:
                out.extend(_split_semisimple(part, p))
            return out
    raise InternalConsistencyError("fixed space larger than the scalars but no split found")


# ---------------------------------------------------------------- factorization


def _power_matrix(OK: NumberFieldOrder, theta_c) -> list[list[int]]:
    n = OK.rank
    rows = [list(OK.one_coords)]
    for _ in range(n - 1):
        rows.append(list(OK.mul_coords(rows[-1], theta_c)))
    return rows


def kummer_generator(OK: NumberFieldOrder, p: int, budget: int = KUMMER_SEARCH_BUDGET):
    """theta in O_K (order coordinates) with p not dividing [O_K : Z[theta]].

    Candidates: basis elements, then small integer combinations in a fixed order.
    """
    n = OK.rank
    tried = 0
    for bound in itertools.count(1):
        vecs = sorted(
            (c for c in itertools.product(range(-bound, bound + 1), repeat=n) if max(map(abs, c)) == bound),
            key=lambda c: (sum(map(abs, c)), [abs(v) for v in c], c),
        )
        for c in vecs:
            tried += 1
            if tried > budget:
                raise BadPrime(f"no Kummer-Dedekind generator for p = {p} within budget")
            D = det(_power_matrix(OK, c))
            if D and D % p:
                g = OK.field.charpoly(OK.element(c))
                return tuple(c), tuple(int(v) for v in g)


def _eval_poly_coords(O: NumberFieldOrder, f, x) -> tuple:
    acc = [0] * O.rank
    for c in reversed(f):
        acc = list(O.mul_coords(acc, x))
        acc = [a + c * o for a, o in zip(acc, O.one_coords)]
    return tuple(acc)


def primes_above(OK: NumberFieldOrder, p: int) -> list[tuple[FractionalIdeal, int, int]]:
    """Primes of O_K above p as (P, e, f).

    Kummer-Dedekind on a generator theta with p not dividing [O_K : Z[theta]].
    When p is a common index divisor no such theta exists; the primes are then
    read off by splitting O_K / rad(p) with Frobenius-fixed elements, and e is
    found by valuation.
    """
    if OK.rank == 1:
        return [(OK.principal(OK.field.from_int(p)), 1, 1)]
    if p < OK.rank and _is_common_index_divisor(OK, p):
        out = []
        pO = OK.principal(OK.field.from_int(p))
        for Pr in _split_semisimple(p_radical(OK, p), p):
            f = factor_integer(Pr.norm())[0][1]
            out.append((Pr, valuation(pO, Pr, OK.rank), f))
        return sorted(out, key=lambda t: (t[2], t[0].key()))
    theta, g = kummer_generator(OK, p)
    out = []
    for gi, ei in ff_poly_factor(g, p):
        gi_theta = _eval_poly_coords(OK, gi, theta)
        pc = [p * v for v in OK.one_coords]
        Pi = FractionalIdeal.from_generators(OK, [pc, gi_theta])
        out.append((Pi, ei, len(gi) - 1))
    return out


def _is_common_index_divisor(OK: NumberFieldOrder, p: int) -> bool:
    """True when every theta in O_K has p | [O_K : Z[theta]].

    Happens exactly when, for some f, more primes of residue degree f lie
    above p than there are monic irreducibles of degree f over F_p; the
    number of primes with each residue degree is read from the split.
    """
    counts: dict[int, int] = {}
    for Pr in _split_semisimple(p_radical(OK, p), p):
        f = factor_integer(Pr.norm())[0][1]
        counts[f] = counts.get(f, 0) + 1
    return any(c > _irreducible_count(p, f) for f, c in counts.items())


def _irreducible_count(p: int, f: int) -> int:
    """Number of monic irreducible polynomials of degree f over F_p (Gauss)."""
    total = 0
    for d in range(1, f + 1):
        if f % d == 0:
            total += _mobius(f // d) * p**d
    return total // f


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    fac = factor_integer(n)
    return 0 if any(e > 1 for _, e in fac) else (-1) ** len(fac)


def valuation(I: FractionalIdeal, Pr: FractionalIdeal, limit: int) -> int:
    """Largest v <= limit with I contained in Pr^v (I integral)."""
    v = 0
    J = Pr
    while v < limit and I.issubset(J):
        v += 1
        J = J * Pr
    return v


def contract(Pr: FractionalIdeal, O: NumberFieldOrder) -> FractionalIdeal:
    """Pr ∩ O as an ideal of O."""
    rows = lattice_intersection(Pr.power_basis_rows(), O.basis)
    return FractionalIdeal.from_lattice(O, [O.coords(r) for r in rows], check=False)


def factor_coprime_ideal(O: NumberFieldOrder, s) -> list[tuple[FractionalIdeal, int]]:
    """Prime factorization of sO for s coprime to the conductor.

    Factor s O_K by Kummer-Dedekind at each p | N(s) and contract each prime
    back to O. The output is sorted by (p, norm, HNF) and its product is
    checked against sO.
    """
    if not is_coprime_to_conductor(s, O):
        raise NotCoprime("sO + f != O")
    OK = maximal_order(O.field)
    N = abs(int(O.field.norm(s)))
    sO = O.principal(s)
    if N == 1:
        return []
    sOK = OK.principal(s)
    out = []
    for p, e in factor_integer(N):
        for Pr, _, f in primes_above(OK, p):
            v = valuation(sOK, Pr, e // f)
            if v:
                out.append((p, contract(Pr, O), v))
    out.sort(key=lambda t: (t[0], t[1].norm(), t[1].key()))
    result = [(pr, v) for _, pr, v in out]
    prod = O.unit_ideal()
    for pr, v in result:
        prod = prod * pr**v
    if prod != sO:
        raise InternalConsistencyError("product of prime factors differs from sO")
    return result


# ---------------------------------------------------------------- intermediate orders


def _enumerate_superlattices(e: Sequence[int]):
    """HNF matrices H with diag(e) Z^n inside the row span of H (subgroups of prod Z/e_i)."""
    n = len(e)
    H = [[0] * n for _ in range(n)]

    def divisors(x):
        return [d for d in range(1, x + 1) if x % d == 0]

    def ok(i):
        v = [0] * n
        v[i] = e[i]
        for j in range(i, n):
            if v[j] % H[j][j]:
                return False
            c = v[j] // H[j][j]
            if c:
                for k in range(j, n):
                    v[k] -= c * H[j][k]
        return True

    def rec(i):
        if i < 0:
            yield [row[:] for row in H]
            return
        for d in divisors(e[i]):
            ranges = [range(H[j][j]) for j in range(i + 1, n)]
            for offs in itertools.product(*ranges):
                H[i] = [0] * i + [d] + list(offs)
                if ok(i):
                    yield from rec(i - 1)
        H[i] = [0] * n

    yield from rec(n - 1)


def intermediate_orders(O_min: NumberFieldOrder, O_max: NumberFieldOrder, index_cap: int = DEFAULT_INDEX_CAP) -> list[NumberFieldOrder]:
    """All orders O with O_min ⊆ O ⊆ O_max, sorted by decreasing index in O_max."""
    A = [[int(v) for v in O_max.coords(b)] for b in O_min.basis]
    index = abs(det(A))
    if index > index_cap:
        raise IndexCapExceeded(f"[O_max : O_min] = {index} exceeds cap {index_cap}")
    diag, U, V = smith_form(A)
    Vinv = [[int(v) for v in r] for r in rational_inverse(V)]
    found = {}
    for H in _enumerate_superlattices(diag):
        rows_x = [vecmat(r, Vinv) for r in H]
        rows_k = [O_max.element(r) for r in rows_x]
        try:
            O = NumberFieldOrder.from_basis(O_min.field, rows_k)
        except NotARing:
            continue
        found[O.key()] = O
    orders = list(found.values())
    orders.sort(key=lambda o: (-o.index_in(O_max), o.key()))
    return orders


# ---------------------------------------------------------------- convenience


def element_from_spec(K: NumberField, coords: Sequence) -> tuple:
    c = list(coords) + [0] * (K.n - len(coords))
    return _clean(Fraction(v) for v in c[: K.n])


ORDER_SPECS = ("zpi", "zpipibar", "maximal")


def weil_field(W) -> NumberField:
    """K = Q(pi) = Q[t]/(m) for a validated Weil polynomial P = m^d."""
    return number_field(tuple(W.m_coeffs))


def frobenius(W) -> tuple:
    return weil_field(W).gen()


def verschiebung(W) -> tuple:
    """q / pi, computed in K."""
    K = weil_field(W)
    return K.scale(K.inverse(K.gen()), W.q)


def order_construct(W, spec) -> NumberFieldOrder:
    """Z[pi], Z[pi, q/pi], O_K, or the ring generated by explicit elements.

    ``spec`` is one of ``ORDER_SPECS`` or a list of field elements. A ring
    given by generators must contain pi.
    """
    K = weil_field(W)
    if spec == "zpi":
        return NumberFieldOrder.equation_order(K)
    if spec == "zpipibar":
        return NumberFieldOrder.generated_by(K, [K.gen(), verschiebung(W)])
    if spec == "maximal":
        return maximal_order(K)
    if isinstance(spec, str):
        raise ValueError(f"unknown order spec {spec!r}")
    O = NumberFieldOrder.generated_by(K, [element_from_spec(K, g) for g in spec])
    if not O.contains(K.gen()):
        raise NotInOrder("the order does not contain pi")
    return O

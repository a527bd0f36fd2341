"""Exact integer and rational linear algebra.

Matrices are lists of rows of Python ints (or ``Fraction`` where noted).
Vectors are row vectors and act on the left: ``x @ M`` means
``sum(x[i] * M[i])``.

Row-style Hermite normal form is the one canonical lattice form used across
the package: echelon profile, positive pivots, and every entry above a pivot
reduced into ``[0, pivot)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from ..errors import SingularMatrix

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * cols
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def vecmat(x: Sequence, M: Sequence[Sequence]) -> list:
    cols = len(M[0]) if M else 0
    acc = [0] * cols
    for a, row in zip(x, M):
        if a:
            for j, b in enumerate(row):
                if b:
                    acc[j] += a * b
    return acc


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*M)] if M else []


def _row_sub(A, i, k, q):
    """row_i -= q * row_k"""
    ri, rk = A[i], A[k]
    for j, v in enumerate(rk):
        if v:
            ri[j] -= q * v


def hnf(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form with transform: returns ``(H, U)``, ``H = U M``.

    Zero rows of ``H`` are kept at the bottom so ``H`` has the shape of ``M``.
    """
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            U[r], U[piv] = U[piv], U[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    _row_sub(A, i, r, q)
                    _row_sub(U, i, r, q)
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if not A[r][c]:
            continue
        if A[r][c] < 0:
            A[r] = [-v for v in A[r]]
            U[r] = [-v for v in U[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            if q:
                _row_sub(A, i, r, q)
                _row_sub(U, i, r, q)
        r += 1
    return A, U


def hnf_basis(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """HNF of the lattice spanned by ``rows``, zero rows dropped.

    Cheaper than :func:`hnf` (no transform). ``ncols`` is only needed when
    ``rows`` may be empty.
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            clean = True
            pr = A[r]
            pc = pr[c]
            for i in range(r + 1, m):
                v = A[i][c]
                if v:
                    q = v // pc
                    ri = A[i]
                    for j in range(c, n):
                        if pr[j]:
                            ri[j] -= q * pr[j]
                    if ri[c]:
                        clean = False
            if clean:
                break
        if not A[r][c]:
            continue
        if A[r][c] < 0:
            A[r] = [-v for v in A[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            if q:
                _row_sub(A, i, r, q)
        r += 1
        # drop rows that became zero to keep the working set small
        if r < m:
            tail = [row for row in A[r:] if any(row)]
            A = A[:r] + tail
            m = len(A)
    return [row for row in A[:r]]


def hnf_basis_mod(rows: Sequence[Sequence[int]], D: int) -> Matrix:
    """HNF basis of ``span(rows) + D*Z^n`` for a full-rank lattice containing ``D*Z^n``.

    Entries are kept reduced modulo ``D`` during elimination, which stops the
    coefficient growth that plain elimination suffers on many generators.
    """
    n = len(rows[0])
    D = abs(D)
    A = [[v % D for v in r] for r in rows]
    A = [r for r in A if any(r)]
    H: Matrix = []
    # column-by-column elimination; for column c the modulus row is D*e_c
    work = A
    for c in range(n):
        # combine pivot from rows with nonzero entry in column c, along with D*e_c
        pivot = [0] * n
        pivot[c] = D
        rest = []
        for r in work:
            a = r[c]
            if not a:
                rest.append(r)
                continue
            b = pivot[c]
            g, x, y = _xgcd(b, a)
            # new pivot = x*pivot + y*r ; r' = (a/g)*pivot - (b/g)*r
            newp = [(x * pv + y * rv) % D for pv, rv in zip(pivot, r)]
            newp[c] = g
            ag, bg = a // g, b // g
            other = [(ag * pv - bg * rv) % D for pv, rv in zip(pivot, r)]
            other[c] = 0
            pivot = newp
            if any(other):
                rest.append(other)
        H.append(pivot)
        # rows below must be zero in columns <= c; they already are for column c
        work = rest
        # the element (D / pivot_c) * pivot has column c == D, subtracting D*e_c gives a row with column c zero
        k = D // pivot[c]
        extra = [(k * v) % D for v in pivot]
        extra[c] = 0
        if any(extra):
            work.append(extra)
    # now H is upper triangular with positive pivots; reduce above the pivots
    for c in range(n):
        p = H[c][c]
        for i in range(c):
            q = H[i][c] // p
            if q:
                _row_sub(H, i, c, q)
    return H


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``g = gcd(a, b) = x*a + y*b`` and ``g >= 0``."""
    return _xgcd(a, b)


def smith_form(M: Sequence[Sequence[int]]) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form ``U M V = D``; returns ``(diagonal, U, V)``.

    The diagonal has ``min(rows, cols)`` entries, nonnegative, each dividing
    the next (zeros last).
    """
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def col_sub(B, j, k, q):  # col_j -= q * col_k
        for row in B:
            if row[k]:
                row[j] -= q * row[k]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = A[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            U[t], U[i] = U[i], U[t]
            for B in (A, V):
                for row in B:
                    row[t], row[j] = row[j], row[t]
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    _row_sub(A, i, t, q)
                    _row_sub(U, i, t, q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    col_sub(A, j, t, q)
                    col_sub(V, j, t, q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # row_t += row_bad, then redo the pivot step
            _row_sub(A, t, bad, -1)
            _row_sub(U, t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
    diag = [A[i][i] for i in range(min(m, n))]
    return diag, U, V


def snf_invariants(M: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors of a square nonsingular integer matrix, 1s included."""
    if len(M) != (len(M[0]) if M else 0):
        raise SingularMatrix("matrix is not square")
    if det(M) == 0:
        raise SingularMatrix("determinant is zero")
    diag, _, _ = smith_form(M)
    return diag


def det(M: Sequence[Sequence]) -> int | Fraction:
    """Determinant by Bareiss fraction-free elimination (exact for ints and Fractions)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                v = row_i[j] * akk - aik * row_k[j]
                if isinstance(v, int):
                    row_i[j] = v // prev
                else:
                    row_i[j] = v / prev
            row_i[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def rational_inverse(M: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [v * inv for v in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [row[n:] for row in A]


def denominator_lcm(rows: Sequence[Sequence]) -> int:
    d = 1
    for r in rows:
        for v in r:
            if isinstance(v, Fraction):
                d = lcm(d, v.denominator)
    return d


def rational_lattice(rows: Sequence[Sequence]) -> tuple[int, Matrix]:
    """Canonical ``(den, H)`` for the Z-span of rational rows: span = H / den.

    ``H`` is an HNF basis and ``den`` is the smallest positive integer making
    the lattice integral.
    """
    den = denominator_lcm(rows)
    ints = [[int(v * den) for v in r] for r in rows]
    H = hnf_basis(ints)
    return normalize_lattice(den, H)


def normalize_lattice(den: int, H: Matrix) -> tuple[int, Matrix]:
    g = den
    for r in H:
        for v in r:
            if v:
                g = gcd(g, v)
                if g == 1:
                    return den, H
    if g > 1:
        H = [[v // g for v in r] for r in H]
        den //= g
    return den, H


def nullspace_mod_p(rows: Sequence[Sequence[int]], p: int) -> Matrix:
    """Basis of the left kernel ``{x : x M = 0 (mod p)}`` over F_p."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    # augment with identity so the transform rows give the kernel
    A = [[v % p for v in r] + [int(i == j) for j in range(m)] for i, r in enumerate(rows)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [(v * inv) % p for v in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        r += 1
    return [row[n:] for row in A[r:]]


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = len(rows)
    return m - len(nullspace_mod_p(rows, p)) if m else 0

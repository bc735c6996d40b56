"""Exact rational and integer linear algebra on plain nested lists.

Matrices are lists of rows.  Entries are ``int`` or ``fractions.Fraction``;
nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fraction(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fmt(x) -> str:
    """Serialize a rational as ``"p/q"`` (``"p"`` when integral)."""
    return str(to_fraction(x))


def frac_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[to_fraction(x) for x in row] for row in rows]


def zeros(n: int, m: int) -> Matrix:
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def is_integral(a: Sequence[Sequence]) -> bool:
    return all(to_fraction(x).denominator == 1 for row in a for x in row)


def is_symmetric(a: Sequence[Sequence]) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def bareiss_det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det(a: Sequence[Sequence]) -> Fraction:
    """Exact determinant; rationals are cleared to integers first."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    rows = [[to_fraction(x) for x in row] for row in a]
    scale = 1
    ints = []
    for row in rows:
        d = 1
        for x in row:
            d = d * x.denominator // gcd(d, x.denominator)
        scale *= d
        ints.append([int(x * d) for x in row])
    return Fraction(bareiss_det(ints), scale)


def row_echelon(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q and the pivot column indices."""
    m = [[to_fraction(x) for x in row] for row in a]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    return len(row_echelon(a)[1]) if a and a[0] else 0


def nullspace(a: Sequence[Sequence]) -> Matrix:
    """Basis (as rows) of the right kernel {x : a x = 0} over Q."""
    if not a:
        return []
    ncols = len(a[0])
    rref, pivots = row_echelon(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rref[r][f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of a x = b over Q, or None when inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    rref, pivots = row_echelon(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = rref[r][ncols]
    return x


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [[to_fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    rref, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in rref]


def clear_denominators(a: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    """Return (integer matrix, d) with integer matrix == d * a."""
    d = 1
    for row in a:
        for x in row:
            q = to_fraction(x).denominator
            d = d * q // gcd(d, q)
    return [[int(to_fraction(x) * d) for x in row] for row in a], d


def unimodular_row_reduce(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Integer row reduction: returns (U, H) with U unimodular and H = U a.

    H is in row echelon form (over Z), so its trailing rows are zero and the
    matching rows of U span the integer left kernel of ``a``.
    """
    h = [list(row) for row in a]
    n = len(h)
    ncols = len(h[0]) if h else 0
    u = identity(n)
    r = 0
    for c in range(ncols):
        if r == n:
            break
        while True:
            nz = [i for i in range(r, n) if h[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(h[i][c]))
            h[r], h[p] = h[p], h[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, n):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c]:
                        done = False
            if done:
                break
        if any(h[i][c] for i in range(r, n)):
            r += 1
    return u, h

"""Dense Gaussian elimination over Q (lists of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    a = zeros(n, n)
    for i in range(n):
        a[i][i] = Fraction(1)
    return a


def rref(a: Matrix, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns.

    Pivots are taken on the earliest available column, so the result is
    deterministic.
    """
    r = [list(row) for row in a]
    m = len(r)
    n = ncols if ncols is not None else (len(r[0]) if r else 0)
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        p = next((i for i in range(row, m) if r[i][col]), None)
        if p is None:
            continue
        r[row], r[p] = r[p], r[row]
        inv = 1 / r[row][col]
        r[row] = [x * inv for x in r[row]]
        for i in range(m):
            if i != row and r[i][col]:
                f = r[i][col]
                r[i] = [x - f * y for x, y in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a: Matrix, ncols: int) -> list[list[Fraction]]:
    """Basis of {x : a x = 0}, one vector per free column, in column order."""
    return nullspace_with_free(a, ncols)[0]


def nullspace_with_free(a: Matrix, ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Nullspace basis together with the free column each vector is attached to."""
    if not a:
        return ([[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)],
                list(range(ncols)))
    r, pivots = rref(a, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -r[row][f]
        basis.append(v)
    return basis, free


def solve(a: Matrix, b: Sequence[Fraction]) -> list[Fraction]:
    """Unique solution of a x = b for square invertible a."""
    n = len(a)
    aug = [list(a[i]) + [Fraction(b[i])] for i in range(n)]
    r, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [r[i][n] for i in range(n)]


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(a[i]) + identity(n)[i] for i in range(n)]
    r, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ValueError("matrix is not invertible")
    return [row[n:] for row in r]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0))
             for j in range(cols)] for i in range(len(a))]


def matvec(a: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def column_basis(vectors: list[list[Fraction]], dim: int) -> list[int]:
    """Indices of a maximal independent prefix-greedy subset of ``vectors``."""
    chosen: list[int] = []
    rows: Matrix = []
    current = 0
    for i, v in enumerate(vectors):
        trial = rows + [list(v)]
        rk = len(rref(trial, dim)[1])
        if rk > current:
            rows = trial
            current = rk
            chosen.append(i)
    return chosen

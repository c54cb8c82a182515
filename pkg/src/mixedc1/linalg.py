"""Small exact linear algebra over the rationals (Gauss-Jordan on Fractions)."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularMatrix(ArithmeticError):
    pass


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    red, piv = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red, piv):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def solve(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    """Solve the square system ``A X = B`` exactly; ``B`` is a list of columns."""
    n = len(a)
    aug = [list(a[i]) + [col[i] for col in b] for i in range(n)]
    red, piv = rref(aug, n)
    if piv != list(range(n)):
        raise SingularMatrix("collocation matrix is singular")
    return [[red[i][n + k] for i in range(n)] for k in range(len(b))]

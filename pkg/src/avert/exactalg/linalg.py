"""Exact linear algebra over Q (dimensions stay <= 16 in this project)."""

from __future__ import annotations

from fractions import Fraction

FMatrix = list[list[Fraction]]


def det_frac(m: FMatrix) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for k in range(n):
        piv = None
        for i in range(k, n):
            if a[i][k] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] * inv
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def solve_frac(m: FMatrix, rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve m·x = rhs exactly; None if singular/inconsistent."""
    n = len(m)
    cols = len(m[0]) if m else 0
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(m)]
    r = 0
    pivots = []
    for c in range(cols):
        piv = None
        for i in range(r, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [a[i][j] - f * a[r][j] for j in range(cols + 1)]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if a[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return x


def kernel_frac(m: FMatrix) -> list[list[Fraction]]:
    """Basis of the right kernel over Q."""
    rows = len(m)
    cols = len(m[0]) if m else 0
    a = [[Fraction(x) for x in row] for row in m]
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [a[i][j] - f * a[r][j] for j in range(cols)]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    out = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        out.append(v)
    return out


def invert_frac(m: FMatrix) -> FMatrix:
    n = len(m)
    cols = [solve_frac(m, [Fraction(1) if i == j else Fraction(0) for i in range(n)]) for j in range(n)]
    if any(c is None for c in cols):
        raise ZeroDivisionError("matrix not invertible")
    return [[cols[j][i] for j in range(n)] for i in range(n)]

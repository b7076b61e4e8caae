"""Integer matrix normal forms.

Matrices are plain lists of rows of Python ints.  The Hermite form here is
the row-style convention fixed for the whole project: H = U*M with U
unimodular, H in upper echelon shape, pivots positive, and every entry above
a pivot reduced into [0, pivot).  Downstream code compares HNF bases
bit-exactly, so any change to this convention is a breaking change.
"""

from __future__ import annotations

from math import gcd

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    oi[j] += c * bt[j]
    return out


def mat_copy(a: Matrix) -> Matrix:
    return [row[:] for row in a]


def hermite_normal_form(m: Matrix) -> tuple[Matrix, Matrix]:
    """Row HNF: returns (H, U) with H = U*M, U unimodular.

    Zero matrix is allowed (H = 0, U = I).  Deterministic: identical input
    rows give identical output bytes.
    """
    if not m:
        return [], []
    rows, cols = len(m), len(m[0])
    h = mat_copy(m)
    u = identity_matrix(rows)
    pivot_row = 0
    for col in range(cols):
        # find a row at or below pivot_row with nonzero entry in col
        nz = [r for r in range(pivot_row, rows) if h[r][col] != 0]
        if not nz:
            continue
        # eliminate within the column via extended gcd combinations
        r0 = nz[0]
        for r in nz[1:]:
            a, b = h[r0][col], h[r][col]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            # [x  y; -q  p] is unimodular (xp + yq = 1)
            row0 = [x * h[r0][j] + y * h[r][j] for j in range(cols)]
            row1 = [-q * h[r0][j] + p * h[r][j] for j in range(cols)]
            h[r0], h[r] = row0, row1
            urow0 = [x * u[r0][j] + y * u[r][j] for j in range(rows)]
            urow1 = [-q * u[r0][j] + p * u[r][j] for j in range(rows)]
            u[r0], u[r] = urow0, urow1
        if r0 != pivot_row:
            h[pivot_row], h[r0] = h[r0], h[pivot_row]
            u[pivot_row], u[r0] = u[r0], u[pivot_row]
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        piv = h[pivot_row][col]
        for r in range(pivot_row):
            q = h[r][col] // piv
            if q:
                h[r] = [h[r][j] - q * h[pivot_row][j] for j in range(cols)]
                u[r] = [u[r][j] - q * u[pivot_row][j] for j in range(rows)]
        pivot_row += 1
        if pivot_row == rows:
            break
    return h, u


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf_rows(m: Matrix) -> Matrix:
    """Nonzero rows of the HNF (a canonical basis of the row lattice)."""
    h, _ = hermite_normal_form(m)
    return [row for row in h if any(row)]


def smith_normal_form(m: Matrix) -> list[int]:
    """Invariant factors d1 | d2 | ... (nonnegative, 1s kept, rank many)."""
    if not m or not m[0]:
        return []
    a = mat_copy(m)
    rows, cols = len(a), len(a[0])
    n = min(rows, cols)
    invariants: list[int] = []
    t = 0
    while t < n:
        # find nonzero pivot in submatrix a[t:][t:]
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for r in range(rows):
            a[r][t], a[r][j] = a[r][j], a[r][t]
        while True:
            # clear column t with row ops (plain elimination when divisible:
            # a gcd combination could mix the pivot row and re-dirty cleaned
            # entries, ping-ponging forever)
            for i in range(rows):
                if i != t and a[i][t] != 0:
                    p, q = a[t][t], a[i][t]
                    if q % p == 0:
                        f = q // p
                        a[i] = [a[i][c] - f * a[t][c] for c in range(cols)]
                    else:
                        g, x, y = _xgcd(p, q)
                        pp, qq = p // g, q // g
                        rt = [x * a[t][c] + y * a[i][c] for c in range(cols)]
                        ri = [-qq * a[t][c] + pp * a[i][c] for c in range(cols)]
                        a[t], a[i] = rt, ri
            # clear row t with column ops
            for j in range(cols):
                if j != t and a[t][j] != 0:
                    p, q = a[t][t], a[t][j]
                    if q % p == 0:
                        f = q // p
                        for r in range(rows):
                            a[r][j] -= f * a[r][t]
                    else:
                        g, x, y = _xgcd(p, q)
                        pp, qq = p // g, q // g
                        for r in range(rows):
                            ct, cj = a[r][t], a[r][j]
                            a[r][t] = x * ct + y * cj
                            a[r][j] = -qq * ct + pp * cj
            if all(a[i][t] == 0 for i in range(rows) if i != t) and all(
                a[t][j] == 0 for j in range(cols) if j != t
            ):
                break
        # ensure pivot divides every remaining entry
        piv = abs(a[t][t])
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % piv != 0:
                    # fold the offending row into row t and redo
                    a[t] = [a[t][c] + a[i][c] for c in range(cols)]
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            invariants.append(piv)
            t += 1
    # normalize divisibility chain (the fold loop guarantees it, keep a check)
    for i in range(len(invariants) - 1):
        assert invariants[i + 1] % invariants[i] == 0
    return invariants


def smith_normal_form_with_transform(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """(D, U, V) with D = U*M*V diagonal, U and V unimodular, diagonal in
    divisibility order."""
    if not m or not m[0]:
        return [], [], []
    a = mat_copy(m)
    rows, cols = len(a), len(a[0])
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def row_combine(r0, r, x, y, p, q):
        for mat, width in ((a, cols), (u, rows)):
            n0 = [x * mat[r0][j] + y * mat[r][j] for j in range(width)]
            n1 = [-q * mat[r0][j] + p * mat[r][j] for j in range(width)]
            mat[r0], mat[r] = n0, n1

    def col_combine(c0, c, x, y, p, q):
        for mat, height in ((a, rows), (v, cols)):
            for r in range(height):
                e0, e1 = mat[r][c0], mat[r][c]
                mat[r][c0] = x * e0 + y * e1
                mat[r][c] = -q * e0 + p * e1

    t = 0
    n = min(rows, cols)
    while t < n:
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        if i != t:
            a[t], a[i] = a[i], a[t]
            u[t], u[i] = u[i], u[t]
        if j != t:
            for r in range(rows):
                a[r][t], a[r][j] = a[r][j], a[r][t]
            for r in range(cols):
                v[r][t], v[r][j] = v[r][j], v[r][t]
        while True:
            for i in range(rows):
                if i != t and a[i][t] != 0:
                    p, q = a[t][t], a[i][t]
                    if q % p == 0:
                        f = q // p
                        for c in range(cols):
                            a[i][c] -= f * a[t][c]
                        for c in range(rows):
                            u[i][c] -= f * u[t][c]
                    else:
                        g, x, y = _xgcd(p, q)
                        row_combine(t, i, x, y, p // g, q // g)
            for j in range(cols):
                if j != t and a[t][j] != 0:
                    p, q = a[t][t], a[t][j]
                    if q % p == 0:
                        f = q // p
                        for r in range(rows):
                            a[r][j] -= f * a[r][t]
                        for r in range(cols):
                            v[r][j] -= f * v[r][t]
                    else:
                        g, x, y = _xgcd(p, q)
                        col_combine(t, j, x, y, p // g, q // g)
            if all(a[i][t] == 0 for i in range(rows) if i != t) and all(
                a[t][j] == 0 for j in range(cols) if j != t
            ):
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        piv = a[t][t]
        clean = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % piv != 0:
                    for c in range(cols):
                        a[t][c] += a[i][c]
                    for c in range(rows):
                        u[t][c] += u[i][c]
                    clean = False
                    break
            if not clean:
                break
        if clean:
            t += 1
    return a, u, v


def det_int(m: Matrix) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = mat_copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def kernel_mod_p(m: Matrix, p: int) -> Matrix:
    """Basis of the right kernel of m over F_p (vectors as rows, entries in
    [0, p))."""
    if not m:
        return []
    rows, cols = len(m), len(m[0])
    a = [[x % p for x in row] for row in m]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c] % p != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(a[i][j] - f * a[r][j]) % p for j in range(cols)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-a[i][fc]) % p
        basis.append(v)
    return basis


def solve_mod_p(m: Matrix, rhs: list[int], p: int) -> list[int] | None:
    """One solution x of m·x = rhs over F_p, or None."""
    rows = len(m)
    cols = len(m[0]) if m else 0
    a = [[m[i][j] % p for j in range(cols)] + [rhs[i] % p] for i in range(rows)]
    r = 0
    pivots = []
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(a[i][j] - f * a[r][j]) % p for j in range(cols + 1)]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if a[i][cols]:
            return None
    x = [0] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return x

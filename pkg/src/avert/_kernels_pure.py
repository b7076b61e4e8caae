"""Pure-Python fallbacks for the enumeration kernels.

Mirrors the API of the compiled module `avert._kernels`.  Results must be
bit-identical between the two implementations: the compiled path is only a
speedup, never a semantic change.  Candidates returned by the float filters
are always re-verified exactly by the callers, so a too-generous filter is
harmless and a too-strict one is prevented by wide tolerances.
"""

from __future__ import annotations


def box_norm_search(
    embs_re: list[list[float]],
    embs_im: list[list[float]],
    bounds: list[int],
    target: float,
    rel_tol: float,
) -> list[tuple[int, ...]]:
    """Coordinate vectors c (up to sign) with |prod_s sum_i c_i emb[i][s]|
    within rel_tol of target.

    embs_re/embs_im are indexed [basis_vector][embedding].  Only vectors
    whose first nonzero coordinate is positive are reported; callers add the
    negations when they care.
    """
    n = len(bounds)
    ns = len(embs_re[0]) if n else 0
    lo = target * (1.0 - rel_tol)
    hi = target * (1.0 + rel_tol)
    out: list[tuple[int, ...]] = []
    coords = [0] * n
    # odometer enumeration over the box, skipping the all-zero vector and
    # enforcing canonical sign at the first nonzero coordinate
    sig_re = [0.0] * ns
    sig_im = [0.0] * ns

    def rec(i: int, started: bool):
        if i == n:
            if not started:
                return
            mag2 = 1.0
            for s in range(ns):
                mag2 *= sig_re[s] * sig_re[s] + sig_im[s] * sig_im[s]
            mag = mag2**0.5
            if lo <= mag <= hi:
                out.append(tuple(coords))
            return
        b = bounds[i]
        start = 0 if not started else -b
        for v in range(start, b + 1):
            coords[i] = v
            if v != 0:
                re_i, im_i = embs_re[i], embs_im[i]
                for s in range(ns):
                    sig_re[s] += v * re_i[s]
                    sig_im[s] += v * im_i[s]
                rec(i + 1, True)
                for s in range(ns):
                    sig_re[s] -= v * re_i[s]
                    sig_im[s] -= v * im_i[s]
            else:
                rec(i + 1, started)
        coords[i] = 0

    rec(0, False)
    return out


def ring_mul(
    a: tuple[int, ...],
    b: tuple[int, ...],
    table: list[list[tuple[int, ...]]],
    red_rows: list[tuple[int, ...]],
    pivots: list[int],
) -> tuple[int, ...]:
    """Product of residue vectors a, b modulo the lattice spanned by red_rows.

    table[i][j] is the coordinate vector of basis_i * basis_j.  red_rows is
    an upper-triangular HNF basis with red_rows[i][i] > 0; reduction runs
    ascending so the result lies in the canonical box.
    """
    n = len(a)
    acc = [0] * n
    for i in range(n):
        ai = a[i]
        if not ai:
            continue
        ti = table[i]
        for j in range(n):
            bj = b[j]
            if not bj:
                continue
            tij = ti[j]
            c = ai * bj
            for k in range(n):
                acc[k] += c * tij[k]
    for i in range(n):
        piv = pivots[i]
        q = acc[i] // piv
        if q:
            row = red_rows[i]
            for k in range(i, n):
                acc[k] -= q * row[k]
    return tuple(acc)

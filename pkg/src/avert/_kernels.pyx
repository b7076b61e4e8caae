# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels (hot loops of the verifier).

Same contracts as avert._kernels_pure; see that module for documentation.
ring_mul falls back to Python integers automatically when the caller's
bound check fails, so the int64 fast path here is only used when safe.
"""

from libc.stdlib cimport malloc, free


def box_norm_search(list embs_re, list embs_im, list bounds, double target, double rel_tol):
    cdef int n = len(bounds)
    cdef int ns = len(embs_re[0]) if n else 0
    cdef double lo = target * (1.0 - rel_tol)
    cdef double hi = target * (1.0 + rel_tol)
    cdef int i, s, v
    cdef double *re = <double *> malloc(n * ns * sizeof(double))
    cdef double *im = <double *> malloc(n * ns * sizeof(double))
    cdef double *sig_re = <double *> malloc(ns * sizeof(double))
    cdef double *sig_im = <double *> malloc(ns * sizeof(double))
    cdef long *coords = <long *> malloc(n * sizeof(long))
    cdef long *bnd = <long *> malloc(n * sizeof(long))
    if not (re and im and sig_re and sig_im and coords and bnd):
        raise MemoryError()
    out = []
    try:
        for i in range(n):
            bnd[i] = bounds[i]
            for s in range(ns):
                re[i * ns + s] = embs_re[i][s]
                im[i * ns + s] = embs_im[i][s]
        for s in range(ns):
            sig_re[s] = 0.0
            sig_im[s] = 0.0
        _rec(0, 0, n, ns, re, im, sig_re, sig_im, coords, bnd, lo, hi, out)
    finally:
        free(re); free(im); free(sig_re); free(sig_im); free(coords); free(bnd)
    return out


cdef void _rec(int i, int started, int n, int ns, double *re, double *im,
               double *sig_re, double *sig_im, long *coords, long *bnd,
               double lo, double hi, list out):
    cdef int s
    cdef long v, b, start
    cdef double mag2, mag
    if i == n:
        if not started:
            return
        mag2 = 1.0
        for s in range(ns):
            mag2 *= sig_re[s] * sig_re[s] + sig_im[s] * sig_im[s]
        mag = mag2 ** 0.5
        if lo <= mag <= hi:
            out.append(tuple([coords[s] for s in range(n)]))
        return
    b = bnd[i]
    start = 0 if not started else -b
    for v in range(start, b + 1):
        coords[i] = v
        if v != 0:
            for s in range(ns):
                sig_re[s] += v * re[i * ns + s]
                sig_im[s] += v * im[i * ns + s]
            _rec(i + 1, 1, n, ns, re, im, sig_re, sig_im, coords, bnd, lo, hi, out)
            for s in range(ns):
                sig_re[s] -= v * re[i * ns + s]
                sig_im[s] -= v * im[i * ns + s]
        else:
            _rec(i + 1, started, n, ns, re, im, sig_re, sig_im, coords, bnd, lo, hi, out)
    coords[i] = 0


def ring_mul(tuple a, tuple b, list table, list red_rows, list pivots):
    cdef int n = len(a)
    cdef int i, j, k
    cdef long long ai, bj, c, q, piv
    cdef long long acc[16]
    if n > 16:
        raise ValueError("ring_mul kernel supports dimension <= 16")
    for k in range(n):
        acc[k] = 0
    cdef tuple tij
    for i in range(n):
        ai = a[i]
        if ai == 0:
            continue
        ti = table[i]
        for j in range(n):
            bj = b[j]
            if bj == 0:
                continue
            tij = ti[j]
            c = ai * bj
            for k in range(n):
                acc[k] += c * <long long> tij[k]
    for i in range(n):
        piv = pivots[i]
        q = acc[i] // piv
        if acc[i] < 0 and acc[i] % piv != 0:
            q = acc[i] / piv - 1 if False else (acc[i] - (acc[i] % piv + piv) % piv) / piv
        # floor division semantics for negatives
        q = _floordiv(acc[i], piv)
        if q != 0:
            row = red_rows[i]
            for k in range(i, n):
                acc[k] -= q * <long long> row[k]
    return tuple([acc[k] for k in range(n)])


cdef inline long long _floordiv(long long a, long long b):
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q

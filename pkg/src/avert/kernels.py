"""Kernel selection: compiled extension if available, pure Python otherwise.

`ring_mul` additionally guards the compiled int64 path with an overflow
bound supplied by the caller; anything risky routes to the pure path, which
uses unbounded Python integers.
"""

from __future__ import annotations

from . import _kernels_pure as pure

try:  # pragma: no cover - depends on build environment
    from . import _kernels as compiled  # type: ignore

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover
    compiled = None
    HAVE_COMPILED = False

_active = compiled if HAVE_COMPILED else pure


def backend_name() -> str:
    return "compiled" if _active is compiled and compiled is not None else "pure"


def box_norm_search(embs_re, embs_im, bounds, target, rel_tol):
    return _active.box_norm_search(embs_re, embs_im, bounds, float(target), float(rel_tol))


def ring_mul(a, b, table, red_rows, pivots, int64_safe: bool):
    if int64_safe and HAVE_COMPILED and len(a) <= 16:
        return compiled.ring_mul(a, b, table, red_rows, pivots)
    return pure.ring_mul(a, b, table, red_rows, pivots)

"""Root localization for defining polynomials.

Two tools with different rigor profiles:

* Sturm sequences give exact rational isolating intervals for real roots;
  every sign decision downstream reduces to these plus exact evaluation.
* Complex enclosures come from mpmath seeds wrapped in the elementary bound
  min_i |z - r_i| <= n*|f(z)/f'(z)|: each approximation carries a disc
  guaranteed to contain a root, and pairwise disjointness of the n discs
  certifies isolation.  Numeric values are never trusted beyond that; any
  exact claim built on them is re-verified algebraically by the caller.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from ..exactalg.poly import QPoly
from ..intervals import QInterval


def sturm_chain(f: QPoly) -> list[QPoly]:
    chain = [f, f.derivative()]
    while chain[-1].degree > 0:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(-r)
    return [g for g in chain if not g.is_zero()]


def _sign_changes(chain: list[QPoly], x: Fraction) -> int:
    signs = []
    for g in chain:
        v = g.eval(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_changes_at_inf(chain: list[QPoly], positive: bool) -> int:
    signs = []
    for g in chain:
        lead = g.leading()
        s = 1 if lead > 0 else -1
        if not positive and g.degree % 2 == 1:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(f: QPoly) -> int:
    """Number of distinct real roots (f must be squarefree)."""
    chain = sturm_chain(f)
    return _sign_changes_at_inf(chain, False) - _sign_changes_at_inf(chain, True)


def root_bound(f: QPoly) -> Fraction:
    """Cauchy bound: all complex roots have |z| <= 1 + max|a_i/a_n|."""
    lead = abs(f.leading())
    m = max((abs(c) for c in f.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lead


def real_root_intervals(f: QPoly, width: Fraction = Fraction(1, 2**40)) -> list[QInterval]:
    """Disjoint isolating intervals for all real roots, ascending, refined
    below `width`.  Interval endpoints are never roots."""
    f = f.squarefree_part()
    chain = sturm_chain(f)
    bound = root_bound(f)

    def changes(x):
        return _sign_changes(chain, x)

    def count_between(a, b):
        return changes(a) - changes(b)

    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound - 1, bound + 1)]
    while stack:
        a, b = stack.pop()
        k = count_between(a, b)
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        while f.eval(mid) == 0:
            mid = (mid + b) / 2  # nudge off an exact root
        stack.append((a, mid))
        stack.append((mid, b))
    refined = []
    for a, b in out:
        while b - a > width:
            mid = (a + b) / 2
            if f.eval(mid) == 0:
                # exact rational root: shrink a tight interval around it
                a, b = mid - width / 4, mid + width / 4
                break
            if count_between(a, mid) == 1:
                b = mid
            else:
                a = mid
        refined.append(QInterval(a, b))
    refined.sort(key=lambda iv: iv.lo)
    return refined


def refine_real_root(f: QPoly, iv: QInterval, width: Fraction) -> QInterval:
    """Bisect an isolating interval of squarefree f down to `width`."""
    a, b = iv.lo, iv.hi
    fa = f.eval(a)
    if fa == 0:
        raise ValueError("endpoint is a root; re-isolate first")
    sa = 1 if fa > 0 else -1
    while b - a > width:
        mid = (a + b) / 2
        v = f.eval(mid)
        if v == 0:
            a, b = mid - width / 4, mid + width / 4
            break
        if (1 if v > 0 else -1) == sa:
            a = mid
        else:
            b = mid
    return QInterval(a, b)


class CertifiedRoots:
    """All complex roots of a squarefree monic integer polynomial with
    certified isolation radii and a canonical ordering.

    Order: the r1 real roots ascending, then conjugate pairs (positive
    imaginary part first) sorted by (re, im).
    """

    def __init__(self, f: QPoly, dps: int = 40):
        self.f = f
        self.n = f.degree
        self.r1 = count_real_roots(f)
        self.r2 = (self.n - self.r1) // 2
        self.dps = dps
        self._compute(dps)

    def _compute(self, dps: int) -> None:
        f = self.f
        n = self.n
        coeffs = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) for c in reversed(f.coeffs)]
        for attempt in range(12):
            with mpmath.workdps(dps):
                try:
                    approx = mpmath.polyroots(coeffs, maxsteps=200, extraprec=4 * dps)
                except mpmath.libmp.NoConvergence:
                    dps *= 2
                    continue
                fp = f.derivative()
                centers = [mpmath.mpc(z) for z in approx]
                radii = []
                ok = True
                for z in centers:
                    fz = _eval_mp(f, z)
                    fpz = _eval_mp(fp, z)
                    if fpz == 0:
                        ok = False
                        break
                    # min distance from z to a root is <= n*|f/f'|; inflate
                    radii.append(abs(fz / fpz) * n * mpmath.mpf("1.0000001") + mpmath.mpf(10) ** (-2 * dps))
                if ok:
                    for i in range(n):
                        for j in range(i + 1, n):
                            if abs(centers[i] - centers[j]) <= (radii[i] + radii[j]) * mpmath.mpf("1.000001"):
                                ok = False
                                break
                        if not ok:
                            break
                if ok:
                    self._order(centers, radii, dps)
                    self.dps = dps
                    return
            dps *= 2
        raise ArithmeticError(f"could not certify roots of {f} (dps cap reached)")

    def _order(self, centers, radii, dps) -> None:
        # a disc not meeting the real axis has a genuinely complex root;
        # we know exactly r1 are real, so the r1 smallest |imag| are real
        idx = sorted(range(self.n), key=lambda i: abs(centers[i].imag))
        real_idx = sorted(idx[: self.r1], key=lambda i: centers[i].real)
        others = idx[self.r1 :]
        for i in real_idx:
            if abs(centers[i].imag) > radii[i]:
                raise ArithmeticError("real-root identification failed; raise precision")
        pos = [i for i in others if centers[i].imag > 0]
        neg = [i for i in others if centers[i].imag < 0]
        pos.sort(key=lambda i: (centers[i].real, centers[i].imag))
        pairs = []
        used = set()
        for i in pos:
            best = None
            for j in neg:
                if j in used:
                    continue
                d = abs(centers[j] - mpmath.conj(centers[i]))
                if best is None or d < best[0]:
                    best = (d, j)
            used.add(best[1])
            pairs.append((i, best[1]))
        order = []
        for i in real_idx:
            order.append((mpmath.mpc(centers[i].real, 0), radii[i]))
        for i, j in pairs:
            order.append((centers[i], radii[i]))
            order.append((mpmath.conj(centers[i]), radii[i]))
        self.centers = [c for c, _ in order]
        self.radii = [r for _, r in order]

    def refine(self) -> "CertifiedRoots":
        self._compute(self.dps * 2)
        return self


def _eval_mp(f: QPoly, z):
    out = mpmath.mpc(0)
    for c in reversed(f.coeffs):
        out = out * z + mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
    return out


def eval_mp(f: QPoly, z):
    return _eval_mp(f, z)

"""Fundamental units of real quadratic fields.

The continued fraction of sqrt(d) yields the fundamental solution of
x^2 - d y^2 = +-1; for d = 1 mod 4 the +-4 equation is then swept directly
below the bound that solution implies.  Minimality is certified by
exhaustion in both cases, so the period bookkeeping is never trusted blindly.
"""

from __future__ import annotations

from fractions import Fraction

from ..exactalg.integers import isqrt
from ..exactalg.poly import QPoly
from .field import FieldElement, NumberField, make_field


def quadratic_field(d: int) -> NumberField:
    """Q(sqrt(d)) for squarefree d not in {0, 1}."""
    if d in (0, 1):
        raise ValueError("d must not be 0 or 1")
    if any(d % (p * p) == 0 for p in range(2, isqrt(abs(d)) + 1)):
        raise ValueError("d must be squarefree")
    return make_field([-d, 0, 1])


def _cf_sqrt_convergents(D: int):
    """Convergents (h, k) of sqrt(D) through two periods of the expansion."""
    a0 = isqrt(D)
    if a0 * a0 == D:
        raise ValueError("D is a square")
    out = []
    p, q, a = 0, 1, a0
    h0, h1 = 1, a0
    k0, k1 = 0, 1
    out.append((h1, k1))
    periods = 0
    while periods < 2:
        p = a * q - p
        q = (D - p * p) // q
        a = (a0 + p) // q
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        out.append((h1, k1))
        if q == 1:
            periods += 1
    return out


def pell_fundamental(D: int) -> tuple[int, int]:
    """Smallest (t, u), u >= 1, with t^2 - D u^2 = +-1."""
    cands = [(h, k) for h, k in _cf_sqrt_convergents(D) if h * h - D * k * k in (1, -1)]
    if not cands:
        raise ArithmeticError(f"continued fraction found no Pell solution for D={D}")
    return min(cands, key=lambda c: c[1])


def _scan_pell4(D: int, u_max: int) -> tuple[int, int] | None:
    """Smallest (t, u) with t^2 - D u^2 = +-4, scanning u = 1..u_max."""
    for u in range(1, u_max + 1):
        du2 = D * u * u
        hits = []
        for s in (-4, 4):
            t2 = du2 + s
            if t2 > 0:
                t = isqrt(t2)
                if t * t == t2:
                    hits.append(t)
        if hits:
            return min(hits), u
    return None


def fundamental_unit_quadratic(d: int) -> FieldElement:
    """The fundamental unit > 1 of Q(sqrt(d)), d squarefree > 1.

    For d = 1 mod 4 units are (t + u sqrt d)/2 with t^2 - d u^2 = +-4 (the
    parity condition holds automatically); otherwise t + u sqrt d with
    t^2 - d u^2 = +-1.  A unit is smaller exactly when its u-coordinate is
    smaller, so the ascending scans certify minimality.
    """
    if d <= 1:
        raise ValueError("need squarefree d > 1")
    field = quadratic_field(d)
    t1, u1 = pell_fundamental(d)
    if d % 4 == 1:
        sol = _scan_pell4(d, 2 * u1)  # 2*(t1 + u1 sqrt d) solves the +-4 equation
        assert sol is not None
        t, u = sol
        unit = field.from_power_poly(QPoly([Fraction(t, 2), Fraction(u, 2)]))
    else:
        t, u = t1, u1
        unit = field.from_power_poly(QPoly([Fraction(t), Fraction(u)]))
    assert unit.is_integral(), "fundamental unit must be integral"
    nrm = unit.norm()
    assert nrm in (1, -1), f"unit norm {nrm} not +-1"
    return unit

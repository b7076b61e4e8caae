"""Certified interval arithmetic on exact rational endpoints.

All load-bearing comparisons in the verifier reduce to integers or to these
intervals.  n-th roots are computed by integer root extraction on scaled
numerators, so enclosures are exact rational numbers and fully deterministic.
A comparison an interval cannot decide is retried at doubled precision up to
a hard cap and then raised as an error; nothing is ever guessed.
"""

from __future__ import annotations

from fractions import Fraction

from .exactalg.integers import introot

PREC_CAP_BITS = 4096


class Undecidable(ArithmeticError):
    """An interval comparison stayed ambiguous at the precision cap."""


class QInterval:
    """Closed interval [lo, hi] with Fraction endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @staticmethod
    def point(x) -> "QInterval":
        return QInterval(x, x)

    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def __add__(self, other):
        other = _as_interval(other)
        return QInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return QInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) + (-self)

    def __mul__(self, other):
        other = _as_interval(other)
        cands = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ]
        return QInterval(min(cands), max(cands))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_interval(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        cands = [
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        ]
        return QInterval(min(cands), max(cands))

    def strictly_less(self, other) -> bool:
        return self.hi < _as_interval(other).lo

    def strictly_greater(self, other) -> bool:
        return self.lo > _as_interval(other).hi

    def separated_from(self, other) -> bool:
        other = _as_interval(other)
        return self.strictly_less(other) or self.strictly_greater(other)

    def sign(self) -> int:
        """-1, 0 (certified zero point), or +1; Undecidable otherwise."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        raise Undecidable(f"sign of {self} undecided")

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def _as_interval(x) -> QInterval:
    return x if isinstance(x, QInterval) else QInterval.point(x)


def nth_root(x, n: int, prec_bits: int = 64) -> QInterval:
    """Certified enclosure of x**(1/n) for x >= 0, width about 2^-prec_bits
    relative."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("nth_root needs x >= 0")
    if x == 0:
        return QInterval.point(0)
    scale = 1 << (n * prec_bits)
    num = x.numerator * scale
    lo_num = introot(num // x.denominator, n)
    lo = Fraction(lo_num, 1 << prec_bits)
    hi = Fraction(lo_num + 1, 1 << prec_bits)
    # lo^n <= x/1 within scaling, hi^n > x
    return QInterval(lo, hi)


def sqrt_interval(x, prec_bits: int = 64) -> QInterval:
    return nth_root(x, 2, prec_bits)


def compare_roots(a, na: int, b, nb: int) -> int:
    """Compare a**(1/na) with b**(1/nb) for nonnegative rationals, exactly.

    Cross-powers to integers: a^(1/na) < b^(1/nb) iff a^nb < b^na.
    """
    a, b = Fraction(a), Fraction(b)
    left = a**nb
    right = b**na
    if left < right:
        return -1
    if left > right:
        return 1
    return 0

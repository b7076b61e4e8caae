"""Univariate polynomials over Q and over prime fields.

Coefficients ascend by degree.  Factorization mod p is by exhaustive search
over monic factors of degree <= deg/2; the fields in this project have degree
at most 8 and the moduli stay small, so nothing cleverer is warranted.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd


def _trim(cs: list) -> tuple:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class QPoly:
    """Polynomial with Fraction coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = _trim([Fraction(c) for c in coeffs])

    @staticmethod
    def from_int_coeffs(coeffs):
        return QPoly(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero poly gets -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return QPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __sub__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return QPoly([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self):
        return QPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return QPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = list(other.coeffs)
        dd = len(d) - 1
        lead = d[-1]
        q = [Fraction(0)] * max(0, len(r) - dd)
        while len(r) - 1 >= dd and any(r):
            if r[-1] == 0:
                r.pop()
                continue
            c = r[-1] / lead
            shift = len(r) - 1 - dd
            q[shift] = c
            for i in range(dd + 1):
                r[shift + i] -= c * d[i]
            r.pop()
        return QPoly(q), QPoly(r)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def eval(self, x):
        out = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def derivative(self) -> "QPoly":
        return QPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return QPoly([c / lead for c in self.coeffs])

    def compose(self, other: "QPoly") -> "QPoly":
        out = QPoly([])
        for c in reversed(self.coeffs):
            out = out * other + QPoly([c])
        return out

    def int_coeffs(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("polynomial is not integral")
        return [int(c) for c in self.coeffs]

    def denominator(self) -> int:
        d = 1
        for c in self.coeffs:
            d = d * c.denominator // gcd(d, c.denominator)
        return d

    def content_primitive(self) -> tuple[Fraction, "QPoly"]:
        """Write self = content * primitive with primitive integral, content>0."""
        if self.is_zero():
            return Fraction(0), self
        den = self.denominator()
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        cont = Fraction(g, den)
        return cont, QPoly([v // g for v in ints])

    def gcd(self, other: "QPoly") -> "QPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def squarefree_part(self) -> "QPoly":
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self.monic()
        return (self // g).monic()

    def resultant(self, other: "QPoly") -> Fraction:
        """Res(self, other) by the Euclidean algorithm (exact over Q)."""
        a, b = self, other
        if a.is_zero() or b.is_zero():
            return Fraction(0)
        res = Fraction(1)
        while b.degree > 0:
            r = a % b
            if r.is_zero():
                return Fraction(0)
            res *= (-1) ** (a.degree * b.degree) * b.leading() ** (a.degree - r.degree)
            a, b = b, r
        return res * b.coeffs[0] ** a.degree

    def discriminant(self) -> Fraction:
        n = self.degree
        if n < 1:
            raise ValueError("discriminant needs degree >= 1")
        res = self.resultant(self.derivative())
        sign = (-1) ** (n * (n - 1) // 2)
        return sign * res / self.leading()

    def shift_scale(self, a: Fraction, b: Fraction) -> "QPoly":
        """self(a*x + b)."""
        return self.compose(QPoly([b, a]))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(parts).replace("+ -", "- ")


def x_poly() -> QPoly:
    return QPoly([0, 1])


def lagrange_interpolate(points: list[tuple[Fraction, Fraction]]) -> QPoly:
    """Unique polynomial of degree < len(points) through the points."""
    out = QPoly([])
    for i, (xi, yi) in enumerate(points):
        num = QPoly([yi])
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * QPoly([-xj, 1]) * Fraction(1, xi - xj)
        out = out + num
    return out


def resultant_bivariate(coeffs_in_x: list[QPoly], other: QPoly) -> QPoly:
    """Res_y(A(x,y), B(y)) where A = sum coeffs_in_x[i](x) * y^i.

    Evaluation-interpolation: the resultant has degree at most
    deg_y(A)*max_x_deg + deg(B)*..., we bound it by evaluating at enough
    points.  Exact over Q.
    """
    dy = len(coeffs_in_x) - 1
    max_dx = max((c.degree for c in coeffs_in_x), default=0)
    bound = dy * 0 + max_dx * other.degree + dy * other.degree + 1
    pts = []
    k = 0
    while len(pts) < bound + 1:
        xv = Fraction(k)
        a_at = QPoly([c.eval(xv) for c in coeffs_in_x])
        if a_at.degree == dy:  # keep leading coefficient honest
            pts.append((xv, a_at.resultant(other)))
        k += 1
        if k > 10 * (bound + 2):
            raise ArithmeticError("resultant interpolation failed to find good points")
    return lagrange_interpolate(pts)


class FpPoly:
    """Monic-friendly polynomial arithmetic over F_p."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs, p: int):
        self.p = p
        self.coeffs = _trim([int(c) % p for c in coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.p))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return FpPoly(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], self.p
        )

    def __sub__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return FpPoly(
            [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], self.p
        )

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FpPoly([], self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] = (out[i + j] + ca * cb) % self.p
        return FpPoly(out, self.p)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError
        p = self.p
        r = list(self.coeffs)
        d = other.coeffs
        dd = len(d) - 1
        inv = pow(d[-1], -1, p)
        q = [0] * max(0, len(r) - dd)
        while len(r) - 1 >= dd and any(r):
            if r[-1] % p == 0:
                r.pop()
                continue
            c = r[-1] * inv % p
            shift = len(r) - 1 - dd
            q[shift] = c
            for i in range(dd + 1):
                r[shift + i] = (r[shift + i] - c * d[i]) % p
            r.pop()
        return FpPoly(q, p), FpPoly(r, p)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self):
        if self.is_zero():
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return FpPoly([c * inv for c in self.coeffs], self.p)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, mod: "FpPoly") -> "FpPoly":
        result = FpPoly([1], self.p)
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def eval(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = (out * x + c) % self.p
        return out

    def __repr__(self):
        return f"FpPoly({list(self.coeffs)}, p={self.p})"


def _monic_polys_of_degree(d: int, p: int):
    for tail in product(range(p), repeat=d):
        yield FpPoly(list(tail) + [1], p)


def is_irreducible_mod_p(f: FpPoly) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg/2 divides f."""
    if f.degree <= 0:
        return False
    if f.degree == 1:
        return True
    for d in range(1, f.degree // 2 + 1):
        for g in _monic_polys_of_degree(d, f.p):
            if (f % g).is_zero():
                return False
    return True


def factor_mod_p(f: FpPoly) -> list[tuple[FpPoly, int]]:
    """Factor a monic f over F_p into irreducibles with multiplicity.

    Exhaustive search over monic divisors, smallest degree first, so output
    order is canonical (degree, then coefficient tuple).  Rejects non-monic
    input.
    """
    if f.is_zero() or f.coeffs[-1] != 1:
        raise ValueError("factor_mod_p requires monic input")
    factors: list[tuple[FpPoly, int]] = []
    rem = f
    d = 1
    while rem.degree > 0:
        if d > rem.degree // 2:
            factors.append((rem, 1))
            break
        found = None
        for g in _monic_polys_of_degree(d, f.p):
            if (rem % g).is_zero():
                found = g
                break
        if found is None:
            d += 1
            continue
        mult = 0
        while (rem % found).is_zero():
            rem = rem // found
            mult += 1
        factors.append((found, mult))
    # merge equal irreducible factors (can only collide at the tail)
    merged: dict[tuple, tuple[FpPoly, int]] = {}
    for g, m in factors:
        key = (g.degree, g.coeffs)
        if key in merged:
            merged[key] = (g, merged[key][1] + m)
        else:
            merged[key] = (g, m)
    return [merged[k] for k in sorted(merged)]

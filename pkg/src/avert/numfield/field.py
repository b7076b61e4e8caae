"""Number fields: construction (maximal order by round-2 saturation),
elements on the integral basis, discriminants, signatures, embeddings.

A field is absolute over Q, degree <= 8, defined by a monic integer
polynomial.  The integral basis is stored as an HNF-normalized matrix over
the power basis with a common denominator, so equal fields produce
bit-identical data.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from ..exactalg.integers import factorize
from ..exactalg.intmatrix import hnf_rows, kernel_mod_p
from ..exactalg.linalg import det_frac, invert_frac, solve_frac
from ..exactalg.poly import QPoly
from ..intervals import QInterval, nth_root
from .roots import CertifiedRoots, count_real_roots, real_root_intervals, refine_real_root

DEGREE_CAP = 8


class FieldError(ValueError):
    pass


class FieldElement:
    """Element with exact rational coordinates on the integral basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field: "NumberField", coords):
        self.field = field
        self.coords = tuple(Fraction(c) for c in coords)
        if len(self.coords) != field.degree:
            raise ValueError("coordinate length mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.field is other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def int_coords(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError("element is not integral")
        return tuple(int(c) for c in self.coords)

    def __add__(self, other):
        other = self.field.coerce(other)
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-self.field.coerce(other))

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [a * other for a in self.coords])
        other = self.field.coerce(other)
        return self.field.mul_coords(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [a / Fraction(other) for a in self.coords])
        return self * self.field.coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.field.coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        m = self.field.mult_matrix(self)
        sol = solve_frac(m, list(self.field.one().coords))
        if sol is None:
            raise ZeroDivisionError("element not invertible (field arithmetic bug)")
        return FieldElement(self.field, sol)

    def norm(self) -> Fraction:
        return det_frac(self.field.mult_matrix(self))

    def trace(self) -> Fraction:
        m = self.field.mult_matrix(self)
        return sum(m[i][i] for i in range(len(m)))

    def min_poly(self) -> QPoly:
        """Monic minimal polynomial over Q."""
        field = self.field
        rows = [list(field.one().coords)]
        power = field.one()
        for _ in range(field.degree):
            power = power * self
            rows.append(list(power.coords))
            # look for a dependency among rows
            ker = _left_kernel_last(rows)
            if ker is not None:
                lead = ker[-1]
                return QPoly([c / lead for c in ker])
        raise ArithmeticError("minimal polynomial search failed")

    def to_power_poly(self) -> QPoly:
        return self.field.basis_to_power(self.coords)

    def height(self) -> Fraction:
        return max(abs(c) for c in self.coords)

    def __repr__(self):
        return f"FieldElement({list(self.coords)})"


def _left_kernel_last(rows: list[list[Fraction]]) -> list[Fraction] | None:
    """A vector (c_0..c_k) with sum c_i rows[i] = 0 and c_k != 0, else None."""
    k = len(rows) - 1
    # solve rows[:k]^T * x = -rows[k]
    cols = len(rows[0])
    m = [[rows[i][j] for i in range(k)] for j in range(cols)]
    rhs = [-rows[k][j] for j in range(cols)]
    sol = solve_frac(m, rhs) if k else ([] if all(v == 0 for v in rhs) else None)
    if sol is None:
        return None
    return list(sol) + [Fraction(1)]


class NumberField:
    def __init__(self, poly: QPoly, basis_num, basis_den: int, disc: int, signature):
        self.poly = poly
        self.degree = poly.degree
        self.basis_num = [tuple(r) for r in basis_num]  # rows over power basis
        self.basis_den = basis_den
        self.disc = disc
        self.signature = signature
        self.index = self._index()
        self._mult_table = None
        self._one = None
        self._roots_cache: CertifiedRoots | None = None
        self._real_ivs = None
        self._inv_basis = None

    # -- construction helpers -------------------------------------------------

    def _index(self) -> int:
        det = det_frac([[Fraction(x) for x in row] for row in self.basis_num])
        idx = Fraction(self.basis_den**self.degree) / abs(det)
        assert idx.denominator == 1
        return int(idx)

    @property
    def mult_table(self):
        if self._mult_table is None:
            self._mult_table = _mult_table(self.poly, self.basis_num, self.basis_den)
        return self._mult_table

    def one(self) -> FieldElement:
        if self._one is None:
            coords = self.power_to_basis(QPoly([1]))
            self._one = FieldElement(self, coords)
        return self._one

    def zero(self) -> FieldElement:
        return FieldElement(self, [0] * self.degree)

    def gen(self) -> FieldElement:
        """theta, the class of x."""
        return FieldElement(self, self.power_to_basis(QPoly([0, 1])))

    def coerce(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (int, Fraction)):
            return FieldElement(self, [Fraction(value) * c for c in self.one().coords])
        raise TypeError(f"cannot coerce {value!r}")

    def element(self, coords) -> FieldElement:
        return FieldElement(self, coords)

    def from_power_poly(self, g: QPoly) -> FieldElement:
        return FieldElement(self, self.power_to_basis(g % self.poly))

    # -- basis conversions -----------------------------------------------------

    def power_to_basis(self, g: QPoly) -> list[Fraction]:
        """Coordinates on the integral basis of the element g(theta)."""
        g = g % self.poly
        target = [g.coeffs[i] if i <= g.degree else Fraction(0) for i in range(self.degree)]
        if self._inv_basis is None:
            b = [[Fraction(self.basis_num[i][j], self.basis_den) for j in range(self.degree)] for i in range(self.degree)]
            self._inv_basis = invert_frac([[b[i][j] for i in range(self.degree)] for j in range(self.degree)])
        # coords = target * B^{-1} with B rows = basis over powers
        inv = self._inv_basis
        return [sum(inv[i][j] * target[j] for j in range(self.degree)) for i in range(self.degree)]

    def basis_to_power(self, coords) -> QPoly:
        n = self.degree
        acc = [Fraction(0)] * n
        for i, c in enumerate(coords):
            if c:
                row = self.basis_num[i]
                for j in range(n):
                    acc[j] += Fraction(c) * row[j]
        return QPoly([a / self.basis_den for a in acc])

    # -- arithmetic ------------------------------------------------------------

    def mul_coords(self, a: FieldElement, b: FieldElement) -> FieldElement:
        n = self.degree
        table = self.mult_table
        out = [Fraction(0)] * n
        for i, ca in enumerate(a.coords):
            if ca == 0:
                continue
            ti = table[i]
            for j, cb in enumerate(b.coords):
                if cb == 0:
                    continue
                c = ca * cb
                row = ti[j]
                for k in range(n):
                    if row[k]:
                        out[k] += c * row[k]
        return FieldElement(self, out)

    def mult_matrix(self, x: FieldElement):
        """Matrix of multiplication by x on the integral basis (columns are
        images of basis vectors)."""
        n = self.degree
        cols = []
        for j in range(n):
            e = FieldElement(self, [1 if i == j else 0 for i in range(n)])
            cols.append((x * e).coords)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    # -- embeddings ------------------------------------------------------------

    def roots(self, min_dps: int = 40) -> CertifiedRoots:
        if self._roots_cache is None or self._roots_cache.dps < min_dps:
            self._roots_cache = CertifiedRoots(self.poly, min_dps)
        return self._roots_cache

    def embedding_values(self, x: FieldElement, dps: int = 40):
        """Approximate values of x at all embeddings (canonical order)."""
        g = x.to_power_poly()
        roots = self.roots(dps)
        with mpmath.workdps(roots.dps):
            return [_eval_mp(g, z) for z in roots.centers]

    def real_root_intervals(self):
        if self._real_ivs is None:
            self._real_ivs = real_root_intervals(self.poly)
        return self._real_ivs

    def sign_at_real_place(self, x: FieldElement, k: int) -> int:
        """Exact sign of x at the k-th real embedding (ascending order)."""
        if x.is_zero():
            return 0
        g = x.to_power_poly()
        iv = self.real_root_intervals()[k]
        width = iv.width()
        for _ in range(200):
            lo, hi = _poly_range(g, iv)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            width = width / 4
            iv = refine_real_root(self.poly.squarefree_part(), iv, width)
        raise ArithmeticError("sign undecided; element may vanish at the place")

    def abs_bounds(self, x: FieldElement, dps: int = 40):
        """Per-embedding certified bounds [lo, hi] on |sigma(x)| (floats from
        ball evaluation with slop; exactness-critical paths must not use
        this)."""
        g = x.to_power_poly()
        roots = self.roots(dps)
        out = []
        with mpmath.workdps(roots.dps):
            slop = mpmath.mpf(2) ** (-mpmath.mp.prec + 8)
            for z, r in zip(roots.centers, roots.radii):
                c, rad = _ball_eval(g, z, mpmath.mpf(r))
                rad = rad + (abs(c) + rad) * slop
                out.append((max(mpmath.mpf(0), abs(c) - rad), abs(c) + rad))
        return out

    def __repr__(self):
        return f"NumberField({self.poly!r}, disc={self.disc})"


def _eval_mp(g: QPoly, z):
    out = mpmath.mpc(0)
    for c in reversed(g.coeffs):
        out = out * z + mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
    return out


def _ball_eval(g: QPoly, center, radius):
    """Evaluate g over the disc (center, radius): returns (value, radius)."""
    c = mpmath.mpc(0)
    r = mpmath.mpf(0)
    for coeff in reversed(g.coeffs):
        # (c + r)*(z + rz): new radius |c|*rz + |z|*r + r*rz
        nc = c * center
        nr = abs(c) * radius + abs(center) * r + r * radius
        c = nc + mpmath.mpf(coeff.numerator) / mpmath.mpf(coeff.denominator)
        r = nr
    return c, r


def _poly_range(g: QPoly, iv: QInterval) -> tuple[Fraction, Fraction]:
    """Crude exact range bound of g over [lo, hi] via interval Horner."""
    x = iv
    lo = hi = g.coeffs[-1] if g.coeffs else Fraction(0)
    acc = QInterval(lo, hi)
    for c in reversed(g.coeffs[:-1]):
        acc = acc * x + QInterval.point(c)
    return acc.lo, acc.hi


# -- maximal order construction -------------------------------------------------


def is_irreducible_q(f: QPoly) -> bool:
    """Complete irreducibility test over Q for monic integer f.

    Every monic integer factor corresponds to a subset of the complex roots
    whose elementary symmetric functions are integers; we try all subsets up
    to half degree with certified root enclosures and verify any near-integer
    candidate by exact division.
    """
    n = f.degree
    if n <= 1:
        return n == 1
    # cheap rational root screen
    a0 = int(f.coeffs[0])
    if a0 == 0:
        return False
    for d in _divisors_signed(a0):
        if f.eval(Fraction(d)) == 0:
            return False
    if n <= 3:
        return True
    g = f.gcd(f.derivative())
    if g.degree > 0:
        return False
    fac = _factor_squarefree_z(f)
    return len(fac) == 1 and fac[0][1] == 1


def _divisors_signed(a0: int):
    a0 = abs(a0)
    out = []
    d = 1
    while d * d <= a0:
        if a0 % d == 0:
            out.extend([d, -d, a0 // d, -(a0 // d)])
        d += 1
    return sorted(set(out), key=lambda v: (abs(v), v))


def _factor_squarefree_z(f: QPoly) -> list[tuple[QPoly, int]]:
    """Factor a squarefree monic integer polynomial over Z by certified
    root-subset recombination."""
    from itertools import combinations

    n = f.degree
    roots = CertifiedRoots(f, 40)
    for attempt in range(8):
        centers = roots.centers
        with mpmath.workdps(roots.dps):
            maxrad = max(roots.radii)
            for d in range(1, n // 2 + 1):
                for combo in combinations(range(n), d):
                    coeffs = _subset_poly(centers, combo)
                    ints = []
                    good = True
                    for c in coeffs:
                        ci = mpmath.nint(c.real)
                        if abs(c - ci) > 0.25 or abs(c.imag) > 0.25:
                            good = False
                            break
                        ints.append(int(ci))
                    if not good:
                        continue
                    cand = QPoly(ints + [1])
                    q, r = f.divmod(cand)
                    if r.is_zero():
                        rest = _factor_squarefree_z(q)
                        return _merge_factor(cand, rest)
            # double-check adequacy: if radii already tiny, accept irreducible
            if maxrad < mpmath.mpf(2) ** -60:
                return [(f, 1)]
        roots = roots.refine()
    return [(f, 1)]


def _merge_factor(g: QPoly, rest: list[tuple[QPoly, int]]) -> list[tuple[QPoly, int]]:
    sub = _factor_squarefree_z(g) if g.degree > 1 else [(g, 1)]
    out = sub + rest
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out


def _subset_poly(centers, combo):
    coeffs = [mpmath.mpc(1)]
    for idx in combo:
        z = centers[idx]
        coeffs = [mpmath.mpc(0)] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] -= z * coeffs[i + 1]
    return coeffs[:-1]  # ascending, degree len(combo), monic implied


def _mult_table(poly: QPoly, basis_num, basis_den: int):
    n = poly.degree
    basis_polys = [QPoly([Fraction(c, basis_den) for c in row]) for row in basis_num]
    binv = invert_frac(
        [[Fraction(basis_num[i][j], basis_den) for i in range(n)] for j in range(n)]
    )
    table = []
    for i in range(n):
        row_entries = []
        for j in range(n):
            prod = (basis_polys[i] * basis_polys[j]) % poly
            target = [prod.coeffs[k] if k <= prod.degree else Fraction(0) for k in range(n)]
            coords = [sum(binv[a][b] * target[b] for b in range(n)) for a in range(n)]
            if any(c.denominator != 1 for c in coords):
                raise FieldError("basis is not closed under multiplication (not an order)")
            row_entries.append(tuple(int(c) for c in coords))
        table.append(tuple(row_entries))
    return tuple(table)


def _saturate_at_prime(poly: QPoly, basis_num, basis_den: int, p: int):
    """One round of the radical/multiplier-ring enlargement at p."""
    n = poly.degree
    table = _mult_table(poly, basis_num, basis_den)
    # Frobenius matrix of x -> x^p on O/pO (rows: images of basis vectors)
    frob = []
    for i in range(n):
        v = tuple(1 if k == i else 0 for k in range(n))
        img = _pow_mod_p(v, p, table, p, n)
        frob.append(list(img))
    m = 1
    q = p
    while q < n:
        q *= p
        m += 1
    fm = frob
    for _ in range(m - 1):
        fm = [[sum(fm[i][t] * frob[t][k] for t in range(n)) % p for k in range(n)] for i in range(n)]
    # row vector x maps to x*F^m, so the radical is the left kernel of F^m
    rad = kernel_mod_p(_transpose(fm), p)
    lattice_rows = [list(v) for v in rad] + [[p if i == k else 0 for k in range(n)] for i in range(n)]
    lrows = hnf_rows(lattice_rows)
    # multiplier condition: y * g_k in p*L for all k  <=>  coords of y*g_k in
    # L-basis are 0 mod p
    lmat = [[Fraction(x) for x in row] for row in lrows]
    conditions = []  # rows: for each basis e_i, concatenated coords
    gen_elems = lrows
    for i in range(n):
        cond_row = []
        for g in gen_elems:
            prod = _mul_int_vec(tuple(1 if k == i else 0 for k in range(n)), tuple(g), table, n)
            coords = solve_frac([[lmat[a][b] for a in range(n)] for b in range(n)], [Fraction(c) for c in prod])
            if coords is None or any(c.denominator != 1 for c in coords):
                raise FieldError("radical lattice inversion failed")
            cond_row.extend(int(c) % p for c in coords)
        conditions.append(cond_row)
    # y = sum y_i e_i must satisfy y * C = 0 where row i of C collects the
    # L-coordinates of e_i * g_k over all k: left kernel again
    ker = kernel_mod_p(_transpose(conditions), p)
    u_rows = [list(v) for v in ker] + [[p if i == k else 0 for k in range(n)] for i in range(n)]
    u = hnf_rows(u_rows)
    # new order = (1/p) * U in current-basis coords; convert to power coords
    new_num = []
    for row in u:
        acc = [0] * n
        for i, c in enumerate(row):
            if c:
                for j in range(n):
                    acc[j] += c * basis_num[i][j]
        new_num.append(acc)
    new_den = basis_den * p
    new_num = hnf_rows(new_num)
    g = new_den
    for row in new_num:
        for v in row:
            g = gcd(g, abs(v))
    if g > 1:
        new_num = [[v // g for v in row] for row in new_num]
        new_den //= g
    return new_num, new_den


def _transpose(m):
    return [[m[i][j] for i in range(len(m))] for j in range(len(m[0]))]


def _pow_mod_p(v: tuple, e: int, table, p: int, n: int) -> tuple:
    result = None
    base = v
    one = tuple(0 for _ in range(n))
    # find coords of 1 in this basis: solve on demand is costly; derive from
    # table: 1 is the unique idempotent unit... simpler: exponentiate by
    # repeated multiplication starting from base (e >= 1 always here)
    result = base
    e -= 1
    while e:
        if e & 1:
            result = _mul_int_vec(result, base, table, n, p)
        base = _mul_int_vec(base, base, table, n, p)
        e >>= 1
    return result


def _mul_int_vec(a: tuple, b: tuple, table, n: int, p: int | None = None) -> tuple:
    out = [0] * n
    for i in range(n):
        ai = a[i]
        if not ai:
            continue
        ti = table[i]
        for j in range(n):
            bj = b[j]
            if not bj:
                continue
            row = ti[j]
            c = ai * bj
            for k in range(n):
                if row[k]:
                    out[k] += c * row[k]
    if p is not None:
        return tuple(x % p for x in out)
    return tuple(out)


@lru_cache(maxsize=None)
def _make_field_cached(coeff_key: tuple) -> NumberField:
    f = QPoly(list(coeff_key))
    n = f.degree
    disc_f = f.discriminant()
    assert disc_f.denominator == 1
    disc_f = int(disc_f)
    if disc_f == 0:
        raise FieldError("defining polynomial is not squarefree")
    basis_num = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    basis_den = 1
    for p, e in factorize(disc_f).items():
        if e < 2:
            continue
        while True:
            new_num, new_den = _saturate_at_prime(f, basis_num, basis_den, p)
            if new_num == basis_num and new_den == basis_den:
                break
            basis_num, basis_den = new_num, new_den
    det = det_frac([[Fraction(x) for x in row] for row in basis_num])
    index = Fraction(basis_den**n) / abs(det)
    assert index.denominator == 1, "index must be integral"
    index = int(index)
    assert disc_f % (index * index) == 0
    disc = disc_f // (index * index)
    r1 = count_real_roots(f)
    field = NumberField(f, basis_num, basis_den, disc, (r1, (n - r1) // 2))
    return field


def make_field(f: QPoly | list) -> NumberField:
    """Construct the number field Q[x]/(f) with certified maximal order.

    f must be monic, integral, irreducible, of degree <= 8.
    """
    if not isinstance(f, QPoly):
        f = QPoly(f)
    if f.degree < 1 or f.degree > DEGREE_CAP:
        raise FieldError(f"degree {f.degree} outside supported range 1..{DEGREE_CAP}")
    if not f.is_monic():
        raise FieldError("defining polynomial must be monic")
    if any(c.denominator != 1 for c in f.coeffs):
        raise FieldError("defining polynomial must be integral")
    if f.degree > 1 and not is_irreducible_q(f):
        raise FieldError(f"{f!r} is reducible over Q")
    return _make_field_cached(f.coeffs)


RATIONALS = make_field([0, 1])  # Q as the degree-1 field x


def root_discriminant(field: NumberField, prec_bits: int = 64) -> QInterval:
    """|disc|^(1/degree) as a certified rational interval."""
    return nth_root(abs(field.disc), field.degree, prec_bits)

"""Class groups by Minkowski-bound enumeration and principality searches.

Degree <= 2 gets the complete treatment (certified principal AND certified
non-principal, using the unit window to bound the search box).  For higher
degree the only certifiable outcome of a search is "found a generator";
an exhausted box raises Inconclusive rather than guessing, per the module
contract.  Everything a result depends on is re-verified exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from .. import kernels
from ..exactalg.poly import QPoly
from ..numfield.field import FieldElement, NumberField
from ..numfield.ideals import Ideal, factor_prime
from .abelian import AbelianStructure
from .units import UnitGroup, unit_group

# rational upper bound for 4/pi
_FOUR_OVER_PI_UB = Fraction(4 * 10**12, 3141592653589)


class Inconclusive(ArithmeticError):
    """A bounded search ran out of budget; no answer is asserted."""


@dataclass
class ClassGroup:
    field: NumberField
    invariants: tuple[int, ...]
    generator_ideals: list[Ideal]
    minkowski_bound: Fraction
    enumerated_primes: list
    certified_full: bool

    @property
    def order(self) -> int:
        h = 1
        for d in self.invariants:
            h *= d
        return h


def minkowski_bound_upper(field: NumberField) -> Fraction:
    from ..intervals import nth_root

    n = field.degree
    r2 = field.signature[1]
    sqrt_ub = nth_root(abs(field.disc), 2, 64).hi
    return Fraction(factorial(n), n**n) * _FOUR_OVER_PI_UB**r2 * sqrt_ub


def small_prime_ideals(field: NumberField, bound: Fraction):
    """All prime ideals of norm <= bound, sorted by (norm, hnf)."""
    out = []
    p = 2
    while p <= bound:
        for q in factor_prime(field, p):
            if q.norm() <= bound:
                out.append(q)
        p = _next_prime(p)
    out.sort(key=lambda q: (q.norm(), q.hnf))
    return out


def _next_prime(p: int) -> int:
    from ..exactalg.integers import is_probable_prime

    p += 1
    while not is_probable_prime(p):
        p += 1
    return p


# -- principality searches ------------------------------------------------------


def _ideal_row_embeddings(ideal: Ideal, dps: int = 60):
    field = ideal.field
    n = field.degree
    rows_re, rows_im = [], []
    for row in ideal.hnf:
        vals = field.embedding_values(field.element(row), dps)
        rows_re.append([float(v.real) for v in vals])
        rows_im.append([float(v.imag) for v in vals])
    return rows_re, rows_im


def _search_box(ideal: Ideal, target: int, bounds: list[int]):
    """Exact generators x of `ideal` with |N(x)| = target inside the
    coefficient box (coefficients against the HNF rows)."""
    field = ideal.field
    rows_re, rows_im = _ideal_row_embeddings(ideal)
    cands = kernels.box_norm_search(rows_re, rows_im, bounds, float(target), 0.5)
    hits = []
    for coeffs in cands:
        coords = [0] * field.degree
        for c, row in zip(coeffs, ideal.hnf):
            if c:
                for k in range(field.degree):
                    coords[k] += c * row[k]
        x = field.element(coords)
        if abs(x.norm()) == target and Ideal.principal(field, x) == ideal:
            hits.append(x)
    hits.sort(key=lambda x: (x.height(), x.coords))
    return hits


def principality_certified_quadratic(
    ideal: Ideal, units: UnitGroup
) -> FieldElement | None:
    """Complete principality decision for ideals of quadratic fields.

    Returns a generator, or None certifying non-principality: the search box
    provably contains an associate of any generator.
    """
    field = ideal.field
    if field.degree != 2:
        raise ValueError("certified path requires a quadratic field")
    nrm = ideal.norm()
    if field.signature == (0, 1):
        t_bound = mpmath.sqrt(nrm) * mpmath.mpf("1.0000001")
        t_vals = [t_bound, t_bound]
    else:
        eps = units.fundamental_units[0]
        emax = max(hi for _, hi in field.abs_bounds(eps, 60))
        root_n = mpmath.sqrt(nrm)
        t_vals = [root_n * emax * mpmath.mpf("1.0000001")] * 2
    bounds = _coefficient_bounds(ideal, t_vals)
    hits = _search_box(ideal, nrm, bounds)
    if hits:
        return hits[0]
    return None


def _coefficient_bounds(ideal: Ideal, t_vals) -> list[int]:
    """|c_i| bounds for x = sum c_i row_i with |sigma_k(x)| <= t_vals[k]."""
    field = ideal.field
    n = field.degree
    rows_re, rows_im = _ideal_row_embeddings(ideal)
    m = mpmath.matrix(n, n)
    for i in range(n):
        for k in range(n):
            m[k, i] = mpmath.mpc(rows_re[i][k], rows_im[i][k])
    minv = mpmath.inverse(m)
    bounds = []
    for i in range(n):
        b = mpmath.mpf(0)
        for k in range(n):
            b += abs(minv[i, k]) * t_vals[min(k, len(t_vals) - 1)]
        bounds.append(int(mpmath.floor(b * mpmath.mpf("1.000001"))) + 1)
    return bounds


def principality_search_positive(ideal: Ideal, max_coeff: int = 24) -> FieldElement:
    """Find a generator by escalating box search; raise Inconclusive if the
    budget is exhausted.  Sound for 'principal' answers only."""
    nrm = ideal.norm()
    n = ideal.field.degree
    b = 1
    while b <= max_coeff:
        hits = _search_box(ideal, nrm, [b] * n)
        if hits:
            return hits[0]
        b = b * 2
    raise Inconclusive(
        f"principality search exhausted (norm {nrm}, coefficient cap {max_coeff})"
    )


# -- quadratic conjugation -------------------------------------------------------


def conj_quadratic(x: FieldElement) -> FieldElement:
    field = x.field
    if field.degree != 2:
        raise ValueError("conjugation implemented for quadratic fields")
    f = field.poly  # x^2 + b x + c
    b = f.coeffs[1]
    g = x.to_power_poly()
    # theta-bar = -b - theta
    conj_poly = g.compose(QPoly([-b, -1]))
    return field.from_power_poly(conj_poly)


def conj_ideal_quadratic(ideal: Ideal) -> Ideal:
    field = ideal.field
    gens = [conj_quadratic(field.element(row)) for row in ideal.hnf]
    return Ideal.from_generators(field, gens)


# -- class group -----------------------------------------------------------------


def class_group(field: NumberField, units: UnitGroup | None = None) -> ClassGroup:
    """Class group by prime enumeration below the Minkowski bound.

    Quadratic fields (and Q) get the full certified structure; at higher
    degree a trivial group can be certified (all small primes principal) and
    anything else raises Inconclusive.
    """
    mb = minkowski_bound_upper(field)
    primes = small_prime_ideals(field, mb) if field.degree > 1 else []
    if not primes:
        return ClassGroup(field, (), [], mb, [], True)
    if field.degree == 2:
        return _class_group_quadratic(field, primes, mb, units)
    # higher degree: certify triviality or give up loudly
    for q in primes:
        principality_search_positive(q)  # raises Inconclusive on failure
    return ClassGroup(field, (), [], mb, primes, True)


def _class_group_quadratic(field, primes, mb, units):
    if units is None:
        units = unit_group(field)

    ideals = _ideals_below(field, primes, mb)
    classes: list[Ideal] = []
    class_of: dict = {}

    def equivalent(i1: Ideal, i2: Ideal) -> bool:
        prod = i1 * conj_ideal_quadratic(i2)
        gen = principality_certified_quadratic(prod, units)
        return gen is not None

    for ideal in ideals:
        placed = False
        for rep in classes:
            if equivalent(ideal, rep):
                class_of[ideal] = rep
                placed = True
                break
        if not placed:
            classes.append(ideal)
            class_of[ideal] = ideal

    trivial_rep = class_of[Ideal.whole_ring(field)]

    def class_mul(a: Ideal, b: Ideal) -> Ideal:
        prod = a * b
        for rep in classes:
            if equivalent(prod, rep):
                return rep
        raise ArithmeticError("class multiplication left the enumerated classes")

    structure = AbelianStructure(classes, class_mul, trivial_rep)
    gens = [g for g in structure.gens if g != trivial_rep]
    # keep only generators that are needed (structure.gens may include
    # dependent entries; generator_ideals is advisory data)
    return ClassGroup(field, structure.invariants, gens, mb, primes, True)


def _ideals_below(field, primes, bound):
    """All integral ideals of norm <= bound (products of the small primes),
    including O itself."""
    out = [Ideal.whole_ring(field)]
    frontier = [(Ideal.whole_ring(field), 0)]
    while frontier:
        ideal, start = frontier.pop()
        for idx in range(start, len(primes)):
            q = primes[idx]
            nxt = ideal * q
            if nxt.norm() <= bound:
                out.append(nxt)
                frontier.append((nxt, idx))
    # dedupe (different factorizations cannot collide, but HNF is canonical)
    seen = {}
    for i in out:
        seen[i.hnf] = i
    return sorted(seen.values(), key=lambda i: (i.norm(), i.hnf))

"""Ray class groups from the exact sequence O* -> (O/m)* x signs -> Cl_m ->
Cl -> 0, character conductors, and the conductor-discriminant minimum used
to certify maximal torsion extensions.

Scope: the quotient is formed against a class group that is certified
trivial, either fully (quadratics, Q) or in its 2-part (degree-8 descent);
the certification scope is recorded on the result and consumed by the
torsion-field certifier, which only ever inspects characters of ell-power
order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..intervals import QInterval, compare_roots, nth_root
from ..numfield.field import NumberField
from .abelian import QuotientGroup
from .classgroup import ClassGroup, Inconclusive
from .modulus import Modulus, ResidueGroup
from .units import UnitGroup


@dataclass
class RayClassGroup:
    field: NumberField
    modulus: Modulus
    invariants: tuple[int, ...]
    scope: str  # "full" | "2-part"
    quotient: QuotientGroup
    residue_group: ResidueGroup
    unit_group: UnitGroup

    @property
    def order(self) -> int:
        h = 1
        for d in self.invariants:
            h *= d
        return h

    def dlog_element(self, x) -> tuple[int, ...]:
        return self.quotient.dlog(self.residue_group.image_of(x))

    def dlog_principal_ideal_generator(self, g) -> tuple[int, ...]:
        return self.dlog_element(g)

    def is_cyclic(self) -> bool:
        return len(self.invariants) <= 1


def ray_class_group(
    field: NumberField,
    modulus: Modulus,
    units: UnitGroup,
    cl: ClassGroup,
    scope: str = "full",
) -> RayClassGroup:
    """Cl_m as the quotient of (O/m)* x signs by the global units.

    Requires the class group trivial within the stated scope; a nontrivial
    certified class group is propagated as Inconclusive (supporting class
    group generators is out of scope for the worked examples).
    """
    if cl.invariants:
        raise Inconclusive(
            "ray class computation over a field with nontrivial class group is unsupported"
        )
    rg = ResidueGroup(modulus)
    rel_imgs = [rg.image_of(units.torsion_gen)]
    for u in units.fundamental_units:
        rel_imgs.append(rg.image_of(u))
    quotient = QuotientGroup(rg.elements, rg.mul, rg.identity, rel_imgs)
    # exactness spot-check: unit images become trivial in the quotient
    for img in rel_imgs:
        assert quotient.dlog(img) == quotient.structure.dlog(quotient.identity_rep)
    return RayClassGroup(
        field, modulus, quotient.structure.invariants, scope, quotient, rg, units
    )


def character_conductor(rcg: RayClassGroup, char: tuple[int, ...]) -> Modulus:
    """Smallest divisor modulus through which the character factors."""
    struct = rcg.quotient.structure
    trivial_on: list[Modulus] = []
    for div in rcg.modulus.divisors():
        subgroup = rcg.residue_group.subgroup_one_mod(div)
        classes = {rcg.quotient.project(x) for x in subgroup}
        if all(struct.char_value_num_den(char, struct.dlog(c)) == 0 for c in classes):
            trivial_on.append(div)
    if not trivial_on:
        raise ArithmeticError("character does not even factor through the full modulus")
    # meet of all divisors the character factors through
    best_exps = None
    best_places = None
    for div in trivial_on:
        exps = {p.hnf: e for p, e in div.finite_factors}
        places = set(div.real_places)
        if best_exps is None:
            best_exps, best_places = exps, places
        else:
            best_exps = {
                h: min(e, best_exps.get(h, 0)) for h, e in exps.items() if best_exps.get(h, 0)
            }
            best_places &= places
    factors = tuple(
        (p, best_exps.get(p.hnf, 0))
        for p, _ in rcg.modulus.finite_factors
        if best_exps and best_exps.get(p.hnf, 0) > 0
    )
    meet = Modulus(rcg.field, factors, tuple(sorted(best_places or ())))
    # the set of factoring moduli is meet-closed; verify once
    subgroup = rcg.residue_group.subgroup_one_mod(meet)
    classes = {rcg.quotient.project(x) for x in subgroup}
    assert all(struct.char_value_num_den(char, struct.dlog(c)) == 0 for c in classes)
    return meet


def conductor_norm(modulus: Modulus) -> int:
    n = 1
    for p, e in modulus.finite_factors:
        n *= p.norm() ** e
    return n


@dataclass
class MinAbelianResult:
    """Minimum root discriminant over nontrivial cyclic ell-power quotients."""

    found: bool
    rd_interval: QInterval | None
    disc_power: int | None  # |d_L|
    root_degree: int | None  # [L:Q]
    witness_char: tuple[int, ...] | None
    witness_order: int | None
    witness_conductors: list[int] | None  # norms of f(chi^t), t = 1..d-1


def min_abelian_ext_rootdisc(
    rcg: RayClassGroup, ell: int, prec_bits: int = 80
) -> MinAbelianResult:
    """Apply conductor-discriminant over all nontrivial characters of
    ell-power order; the minimizing abelian extension's data is returned with
    exact integers so callers can compare without rounding."""
    struct = rcg.quotient.structure
    field = rcg.field
    n_f = field.degree
    d_f = abs(field.disc)
    best = None
    # enumerate characters of ell-power order
    ell_power = 1
    while rcg.order % (ell_power * ell) == 0:
        ell_power *= ell
    for char in struct.characters(order_divides=ell_power):
        order = struct.char_order(char)
        if order == 1 or order % ell != 0:
            continue
        cond_norms = []
        total = d_f**order
        for t in range(1, order):
            pw = tuple((t * c) % d for c, d in zip(char, struct.invariants))
            cond = character_conductor(rcg, pw)
            nrm = conductor_norm(cond)
            cond_norms.append(nrm)
            total *= nrm
        degree = order * n_f
        key = (total, degree)
        if best is None or compare_roots(total, degree, best[0][0], best[0][1]) < 0:
            best = (key, char, order, cond_norms)
    if best is None:
        return MinAbelianResult(False, None, None, None, None, None, None)
    (total, degree), char, order, cond_norms = best
    return MinAbelianResult(
        True, nth_root(total, degree, prec_bits), total, degree, char, order, cond_norms
    )

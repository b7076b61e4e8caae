"""Simple group schemes of prime order ell over O_S, via the parameter
classification: G_{a,b} with (a)(b) = (ell), up to the unit action
a -> u^(ell-1) a.

For ell = 2 every such scheme has rational points, so the points field is
the base; the generic construction (splitting x^ell = a*x together with
ell-th roots of unity) is kept for ell = 3 so the types stay usable there.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..classfield.classgroup import (
    Inconclusive,
    principality_certified_quadratic,
    principality_search_positive,
)
from ..classfield.units import UnitGroup
from ..exactalg.poly import QPoly
from ..numfield.compositum import compositum
from ..numfield.field import FieldElement, NumberField, make_field
from ..numfield.ideals import Ideal, factor_prime


class SchemeError(ValueError):
    pass


@dataclass
class SimpleScheme:
    label: str
    kind: str  # "etale" | "multiplicative" | "oort-tate"
    a: FieldElement
    b: FieldElement
    order: int
    points_field: NumberField
    points_field_is_base: bool
    dual_label: str

    def __repr__(self):
        return f"SimpleScheme({self.label}, kind={self.kind})"

    def describe_parameters(self) -> str:
        return f"a={self.a.to_power_poly()}, b={self.b.to_power_poly()}"


def oort_tate_simples(
    field: NumberField, s_primes, ell: int, cl, units: UnitGroup
) -> list[SimpleScheme]:
    """All simple order-ell schemes over O_S: one per principal divisor of
    (ell), with canonical generators modulo the unit action.

    Raises SchemeError (naming the divisor) if a principality search cannot
    conclude; with trivial certified class group every divisor is principal
    and the search is only a matter of budget.
    """
    if any(p % ell == 0 for p in s_primes):
        raise SchemeError("ell must be coprime to S")
    primes_over = [q for q in factor_prime(field, ell) if q.p == ell]
    if any(q.e > 1 for q in primes_over):
        raise SchemeError("ell must be unramified in the base field")
    ell_elem = field.coerce(ell)
    out = []
    divisor_masks = list(product((0, 1), repeat=len(primes_over)))
    for mask in divisor_masks:
        ideal = Ideal.whole_ring(field)
        for q, bit in zip(primes_over, mask):
            if bit:
                ideal = ideal * q
        if all(bit == 0 for bit in mask):
            a = field.one()
        elif all(bit == 1 for bit in mask):
            a = ell_elem
        else:
            a = _principal_generator(ideal, units)
            a = _canonical_generator(a, units, ell)
        b = ell_elem * a.inverse()
        if not b.is_integral():
            raise SchemeError("divisor complement not integral (bookkeeping bug)")
        kind = (
            "etale"
            if all(bit == 0 for bit in mask)
            else "multiplicative"
            if all(bit == 1 for bit in mask)
            else "oort-tate"
        )
        out.append((mask, ideal, a, b, kind))
    labels = _assign_labels(out, ell)
    schemes = []
    for (mask, ideal, a, b, kind), label in zip(out, labels):
        dual_mask = tuple(1 - bit for bit in mask)
        dual_label = labels[divisor_masks.index(dual_mask)]
        pf, pf_is_base = _points_field(field, a, ell)
        schemes.append(
            SimpleScheme(label, kind, a, b, ell, pf, pf_is_base, dual_label)
        )
    schemes.sort(key=lambda s: s.label)
    # duality closes the set
    have = {s.label for s in schemes}
    assert all(s.dual_label in have for s in schemes)
    return schemes


def _principal_generator(ideal: Ideal, units: UnitGroup) -> FieldElement:
    field = ideal.field
    if field.degree <= 2:
        gen = principality_certified_quadratic(ideal, units)
        if gen is None:
            raise SchemeError(
                f"divisor of norm {ideal.norm()} is not principal: no scheme parameters"
            )
        return gen
    try:
        return principality_search_positive(ideal)
    except Inconclusive as exc:
        raise SchemeError(f"divisor of norm {ideal.norm()}: {exc}") from exc


def _canonical_generator(a: FieldElement, units: UnitGroup, ell: int) -> FieldElement:
    """Smallest representative of a modulo u^(ell-1) for units u (all units
    when ell = 2), by (height, coordinates); scan window certified by height
    growth at the ends."""
    field = a.field
    cands = []
    tor = units.torsion_gen
    tor_pows = [field.one()]
    for _ in range(units.torsion_order - 1):
        tor_pows.append(tor_pows[-1] * tor)
    fund = units.fundamental_units
    span = 6
    for t in tor_pows:
        base = a * (t ** (ell - 1))
        if not fund:
            cands.append(base)
            continue
        eps = fund[0] ** (ell - 1)
        x = base
        for k in range(0, span + 1):
            cands.append(x)
            x = x * eps
        x = base
        inv = eps.inverse()
        for k in range(1, span + 1):
            x = x * inv
            cands.append(x)
    key = lambda e: (e.height(), e.coords)
    best = min(cands, key=key)
    # growth check: the extremes of the scan window must be worse than best
    if fund:
        assert key(cands[span]) >= key(best) and key(cands[-1]) >= key(best)
    return best


def _assign_labels(entries, ell: int) -> list[str]:
    labels = []
    mids = [e for e in entries if e[4] == "oort-tate"]
    mids_sorted = sorted(mids, key=lambda e: e[1].hnf)
    for entry in entries:
        mask, ideal, a, b, kind = entry
        if kind == "etale":
            labels.append(f"Z/{ell}Z")
        elif kind == "multiplicative":
            labels.append(f"mu_{ell}")
        elif len(mids_sorted) == 2:
            labels.append("G_pi" if entry is mids_sorted[0] else "G_pibar")
        else:
            labels.append(f"G_div{mids_sorted.index(entry)}")
    return labels


def _points_field(field: NumberField, a: FieldElement, ell: int):
    if ell == 2:
        # x^2 = a*x splits as x(x - a) over the base
        return field, True
    if ell == 3:
        # points generate K(sqrt(a), zeta_3) at most
        mp = a.min_poly()
        sq = mp.compose(QPoly([0, 0, 1]))
        try:
            quad = make_field(sq)
        except Exception:
            quad = field
        zeta = make_field([1, 1, 1])
        f1, _, _ = compositum(quad, zeta)
        f2, _, _ = compositum(f1, field)
        return f2, f2.degree == field.degree
    raise SchemeError(f"points field construction for ell={ell} not supported")


def cartier_dual(scheme: SimpleScheme, all_schemes: list[SimpleScheme]) -> SimpleScheme:
    """The dual scheme: (a, b) swapped, etale and multiplicative exchanged."""
    for s in all_schemes:
        if s.label == scheme.dual_label:
            return s
    raise SchemeError(f"dual {scheme.dual_label} not present in the scheme list")

"""Unit groups: computed for degree <= 2, certified-fixture beyond.

A fixture never gets trusted: every claimed unit is re-verified (norm,
integrality), multiplicative independence is certified through an interval
regulator, the index of the claimed lattice is bounded via the universal
regulator lower bound 0.2, and when that bound alone cannot force index one
the claimed units (and, stronger than required, all products against the
torsion unit) are checked not to be squares.  The verification outcome mode
is recorded and propagates into every certificate built on top.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath

from ..exactalg.poly import QPoly
from ..numfield.compositum import find_root_in_field, sqrt_in_field
from ..numfield.field import FieldElement, NumberField
from ..numfield.quadratic import fundamental_unit_quadratic


class UnitVerificationError(ValueError):
    """A claimed unit system failed a verification check (check named)."""


@dataclass
class UnitGroup:
    field: NumberField
    torsion_order: int
    torsion_gen: FieldElement
    fundamental_units: list[FieldElement]
    regulator_interval: tuple[Fraction, Fraction] | None
    mode: str  # "computed" | "certified-fixture"
    checks: list[str] = dc_field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.fundamental_units)


def unit_rank(field: NumberField) -> int:
    r1, r2 = field.signature
    return r1 + r2 - 1


def torsion_units_quadratic(field: NumberField) -> tuple[int, FieldElement]:
    """(order, generator) of the roots of unity; degree <= 2 only."""
    if field.signature[0] > 0 or field.degree == 1:
        return 2, field.coerce(-1)
    # imaginary quadratic: only Q(i) and Q(zeta_3) have extra torsion
    disc = field.disc
    if disc == -4:
        gen = find_root_in_field(QPoly([1, 0, 1]), field)
        assert gen is not None
        return 4, gen
    if disc == -3:
        gen = find_root_in_field(QPoly([1, -1, 1]), field)  # primitive 6th root
        assert gen is not None
        return 6, gen
    return 2, field.coerce(-1)


def unit_group(field: NumberField, fixture: "UnitFixtureRecord | None" = None) -> UnitGroup:
    """Unit group: computed via continued fractions for degree <= 2; fixture
    mode (verified) otherwise."""
    if fixture is None:
        if field.degree > 2:
            raise UnitVerificationError(
                "no unit fixture supplied and degree > 2: computed mode unavailable"
            )
        tor_order, tor_gen = torsion_units_quadratic(field)
        if unit_rank(field) == 0:
            return UnitGroup(field, tor_order, tor_gen, [], None, "computed")
        d = -int(field.poly.coeffs[0])  # x^2 - d
        eps = fundamental_unit_quadratic(d)
        reg = _regulator_interval(field, [eps])
        return UnitGroup(field, tor_order, tor_gen, [eps], reg, "computed")
    return verify_unit_fixture(field, fixture)


# -- fixtures -----------------------------------------------------------------


@dataclass
class UnitFixtureRecord:
    poly_coeffs: list[int]
    torsion_order: int
    torsion_coords: list[Fraction]
    unit_coords: list[list[Fraction]]
    regulator: Fraction
    regulator_precision: Fraction


def parse_unit_fixtures(text: str) -> list[UnitFixtureRecord]:
    """Parse the unit-system fixture format (see data/README grammar)."""
    records = []
    cur: dict | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        key = parts[0]
        if key == "field":
            if cur is not None:
                raise ValueError(f"line {lineno}: nested record (missing 'end')")
            cur = {"poly": [int(v) for v in parts[1:]], "units": [], "torsion": None}
        elif cur is None:
            raise ValueError(f"line {lineno}: {key} outside a record")
        elif key == "torsion_order":
            cur["torsion_order"] = int(parts[1])
        elif key == "torsion_unit":
            cur["torsion"] = [Fraction(v) for v in parts[1:]]
        elif key == "unit":
            cur["units"].append([Fraction(v) for v in parts[1:]])
        elif key == "regulator":
            cur["regulator"] = Fraction(parts[1])
            cur["regulator_precision"] = Fraction(parts[2])
        elif key == "end":
            records.append(
                UnitFixtureRecord(
                    poly_coeffs=cur["poly"],
                    torsion_order=cur["torsion_order"],
                    torsion_coords=cur["torsion"],
                    unit_coords=cur["units"],
                    regulator=cur["regulator"],
                    regulator_precision=cur["regulator_precision"],
                )
            )
            cur = None
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if cur is not None:
        raise ValueError("unterminated fixture record")
    return records


def fixture_for_field(records: list[UnitFixtureRecord], field: NumberField):
    """The fixture record matching `field` up to isomorphism transport.

    Returns (record, transported_torsion, transported_units) or None.  If the
    fixture polynomial differs from the field's, the fixture field is mapped
    in through an exactly verified root; failure to embed means mismatch.
    """
    from ..numfield.field import make_field

    for rec in records:
        if rec.poly_coeffs == [int(c) for c in field.poly.coeffs]:
            tor = field.element(rec.torsion_coords)
            units = [field.element(c) for c in rec.unit_coords]
            return rec, tor, units
    for rec in records:
        if len(rec.poly_coeffs) - 1 != field.degree:
            continue
        src = make_field(rec.poly_coeffs)
        if abs(src.disc) != abs(field.disc):
            continue
        img = find_root_in_field(src.poly, field)
        if img is None:
            continue

        def transport(coords):
            g = src.basis_to_power(coords)
            acc = field.zero()
            for c in reversed(g.coeffs):
                acc = acc * img + field.coerce(c)
            return acc

        tor = transport(rec.torsion_coords)
        units = [transport(c) for c in rec.unit_coords]
        return rec, tor, units
    return None


def verify_unit_fixture(field: NumberField, fixture) -> UnitGroup:
    """Run the certification battery on a claimed unit system.

    fixture: either a UnitFixtureRecord or the output of fixture_for_field.
    Raises UnitVerificationError naming the failing check.
    """
    if isinstance(fixture, UnitFixtureRecord):
        found = fixture_for_field([fixture], field)
        if found is None:
            raise UnitVerificationError("fixture-transport: record does not embed into field")
        rec, tor, units = found
    else:
        rec, tor, units = fixture
    checks = []

    r = unit_rank(field)
    if len(units) != r:
        raise UnitVerificationError(
            f"rank: fixture supplies {len(units)} units, field needs rank {r}"
        )

    # torsion checks
    if not tor.is_integral():
        raise UnitVerificationError("torsion: generator not integral")
    pw = field.one()
    order = 0
    for k in range(1, rec.torsion_order + 1):
        pw = pw * tor
        if pw == field.one():
            order = k
            break
    if order != rec.torsion_order:
        raise UnitVerificationError("torsion: claimed order incorrect")
    if sqrt_in_field(tor) is not None:
        raise UnitVerificationError("torsion: generator is a square (torsion not maximal)")
    if rec.torsion_order % 3 != 0 and find_root_in_field(QPoly([1, 1, 1]), field) is not None:
        raise UnitVerificationError("torsion: field contains cube roots of unity not in fixture")
    checks.append(f"torsion-order-{order}-certified")

    # unit norms
    for idx, u in enumerate(units):
        if not u.is_integral():
            raise UnitVerificationError(f"unit-{idx}: not integral")
        if u.norm() not in (1, -1):
            raise UnitVerificationError(f"unit-{idx}: norm not +-1")
    checks.append("norms-pm1")

    # independence and regulator via interval logs
    reg = _regulator_interval(field, units)
    if reg is None or not (reg[0] > 0):
        raise UnitVerificationError("independence: regulator interval does not exclude 0")
    checks.append("regulator-interval-positive")
    if abs(Fraction(rec.regulator) - (reg[0] + reg[1]) / 2) > rec.regulator_precision + (
        reg[1] - reg[0]
    ):
        raise UnitVerificationError("regulator: claimed value outside computed interval")
    checks.append("regulator-matches-claim")

    # index bound: [O^* : U] <= reg(U)/0.2 (universal lower bound)
    index_bound = reg[1] / Fraction(1, 5)
    if index_bound >= 2:
        # cannot force index 1; certify 2-saturation instead (ell = 2 scope):
        # no claimed unit, nor any product against torsion, is a square
        import itertools

        for mask in itertools.product((0, 1), repeat=len(units)):
            if not any(mask):
                continue
            for a in range(order):
                x = field.one()
                for u, bit in zip(units, mask):
                    if bit:
                        x = x * u
                for _ in range(a):
                    x = x * tor
                if sqrt_in_field(x) is not None:
                    raise UnitVerificationError(
                        f"saturation: product mask={mask} torsion^{a} is a square"
                    )
        checks.append(f"two-saturated-despite-index-bound-{float(index_bound):.2f}")
    else:
        checks.append("index-one-by-regulator-bound")

    return UnitGroup(
        field,
        order,
        tor,
        list(units),
        reg,
        "certified-fixture",
        checks,
    )


def _regulator_interval(field: NumberField, units) -> tuple[Fraction, Fraction] | None:
    """Certified interval for |det(m_v log|u_i|_v)| over the first r places."""
    r = len(units)
    if r == 0:
        return (Fraction(1), Fraction(1))
    r1, r2 = field.signature
    # columns: archimedean places (real first, then one per conjugate pair)
    place_mult = [1] * r1 + [2] * r2
    place_emb = list(range(r1)) + [r1 + 2 * k for k in range(r2)]
    cols = list(range(r1 + r2))
    logs = []
    for u in units:
        bounds = field.abs_bounds(u, 60)
        row = []
        for c in cols:
            lo, hi = bounds[place_emb[c]]
            if not (lo > 0):
                return None
            with mpmath.workdps(40):
                l_lo = mpmath.log(lo) * place_mult[c]
                l_hi = mpmath.log(hi) * place_mult[c]
                pad = mpmath.mpf(2) ** -40
                row.append((_to_frac(l_lo - pad), _to_frac(l_hi + pad)))
        logs.append(row)
    # determinant over any r of the r1+r2 columns; drop the last place
    best = None
    from itertools import combinations, permutations

    for chosen in combinations(range(len(cols) - 1), r):
        lo_acc, hi_acc = Fraction(0), Fraction(0)
        for perm, sign in _signed_permutations(r):
            term_lo, term_hi = Fraction(1), Fraction(1)
            for i in range(r):
                a, b = logs[i][chosen[perm[i]]]
                cands = [term_lo * a, term_lo * b, term_hi * a, term_hi * b]
                term_lo, term_hi = min(cands), max(cands)
            if sign > 0:
                lo_acc += term_lo
                hi_acc += term_hi
            else:
                lo_acc -= term_hi
                hi_acc -= term_lo
        iv = (min(abs(lo_acc), abs(hi_acc)), max(abs(lo_acc), abs(hi_acc)))
        if lo_acc <= 0 <= hi_acc:
            iv = (Fraction(0), max(abs(lo_acc), abs(hi_acc)))
        if best is None or iv[0] > best[0]:
            best = iv
    return best


def _signed_permutations(r: int):
    from itertools import permutations

    def parity(p):
        seen = [False] * len(p)
        sign = 1
        for i in range(len(p)):
            if seen[i]:
                continue
            j = i
            cyc = 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                cyc += 1
            if cyc % 2 == 0:
                sign = -sign
        return sign

    for p in permutations(range(r)):
        yield p, parity(p)


def _to_frac(x) -> Fraction:
    """Exact Fraction from an mpf via its mantissa/exponent pair."""
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    val = Fraction(man if sign == 0 else -man)
    if exp >= 0:
        return val * (1 << exp)
    return val / (1 << -exp)

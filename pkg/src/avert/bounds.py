"""Root-discriminant machinery: the torsion-field bound and table-driven
degree caps.

The degree-cap table ships as an external CSV treated as untrusted input:
monotonicity is checked on load, values are parsed exactly as rationals, and
caps always use the conservative side of an interval (upper end for the
bound, never the lower end to exclude a field).  The torsion-field bound for
a field K and prime l is rd(K) * l^(1 + 1/(l-1)); the exponent lives in
EXPONENT_NUM/DEN as auditable data, not buried in code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intervals import QInterval, compare_roots, nth_root
from .numfield.field import NumberField
from .numfield.ideals import factor_prime

# exponent 1 + 1/(l-1) = l/(l-1), stored as a rational pair (cited bound on
# root discriminants of l-power torsion fields of group schemes over O_S)
EXPONENT_NUM = lambda ell: ell
EXPONENT_DEN = lambda ell: ell - 1


class BoundsError(ValueError):
    pass


@dataclass
class FontaineBound:
    """rd(K) * l^(l/(l-1)) in the exact radical form base^(1/root_degree)."""

    base_field: NumberField
    ell: int
    base: int  # bound = base^(1/root_degree)
    root_degree: int
    interval: QInterval

    def exceeded_by_root(self, value_base: int, value_root_degree: int) -> bool:
        """value_base^(1/value_root_degree) > bound, decided exactly."""
        return compare_roots(value_base, value_root_degree, self.base, self.root_degree) > 0

    def dominates_root(self, value_base: int, value_root_degree: int) -> bool:
        """value_base^(1/value_root_degree) < bound, decided exactly."""
        return compare_roots(value_base, value_root_degree, self.base, self.root_degree) < 0


def fontaine_bound(field: NumberField, ell: int, s_primes=(), prec_bits: int = 72) -> FontaineBound:
    """The root-discriminant cap for the maximal ell-torsion extension.

    Preconditions checked: ell unramified in the field and coprime to S.
    """
    for p in s_primes:
        if p % ell == 0:
            raise BoundsError(f"ell={ell} is not coprime to S (prime {p})")
    for q in factor_prime(field, ell):
        if q.e > 1:
            raise BoundsError(f"ell={ell} ramifies in the base field")
    n = field.degree
    # bound^(2n(l-1)) = l^(2n*l) * |d|^(2(l-1))  -- integral exponents for any l
    root_degree = 2 * n * (ell - 1)
    base = ell ** (2 * n * ell) * abs(field.disc) ** (2 * (ell - 1))
    return FontaineBound(field, ell, base, root_degree, nth_root(base, root_degree, prec_bits))


@dataclass
class OdlyzkoTable:
    rows: list[tuple[int, Fraction]]  # (degree, minimum root discriminant)

    @staticmethod
    def parse(text: str) -> "OdlyzkoTable":
        rows = []
        lines = [l.strip() for l in text.splitlines() if l.strip() and not l.startswith("#")]
        header = lines[0].replace(" ", "")
        if header != "degree,min_root_disc":
            raise BoundsError(f"bad table header {lines[0]!r}")
        for line in lines[1:]:
            d_s, v_s = line.split(",")
            rows.append((int(d_s), _parse_decimal(v_s)))
        table = OdlyzkoTable(rows)
        table.validate()
        return table

    def validate(self) -> None:
        degs = [d for d, _ in self.rows]
        if degs != sorted(set(degs)):
            raise BoundsError("table degrees must be strictly increasing")
        vals = [v for _, v in self.rows]
        if any(b < a for a, b in zip(vals, vals[1:])):
            raise BoundsError("table bounds must be non-decreasing in degree")

    def max_degree(self, bound: QInterval) -> int:
        """Largest degree a field with root discriminant below `bound` can
        have, per the table: one less than the first tabulated degree whose
        minimum exceeds the bound's upper end (conservative direction)."""
        ub = bound.hi
        for d, v in self.rows:
            if v > ub:
                return d - 1
        raise BoundsError("unbounded by table: bound exceeds the last tabulated row")

    def max_degree_exact(self, bound: FontaineBound) -> int:
        """Same cap but with the exact radical comparison (no rounding)."""
        for d, v in self.rows:
            # v > base^(1/rootdeg)  <=>  v^rootdeg > base
            if Fraction(v) ** bound.root_degree > bound.base:
                return d - 1
        raise BoundsError("unbounded by table: bound exceeds the last tabulated row")


def _parse_decimal(s: str) -> Fraction:
    s = s.strip()
    return Fraction(s)


def load_default_table() -> OdlyzkoTable:
    from importlib import resources

    text = resources.files("avert.data").joinpath("odlyzko.csv").read_text()
    return OdlyzkoTable.parse(text)

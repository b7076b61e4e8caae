"""Moduli (finite part + real places) and the residue group (O/m)* x signs.

The residue group is enumerated directly from the canonical residue box of
the finite part (norms stay small in this project); sign coordinates at the
chosen real places ride along as formal {+1,-1} components, which is exactly
the group O -> (O/m)* x {+-1}^S surjects onto.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..numfield.field import FieldElement, NumberField
from ..numfield.ideals import Ideal, PrimeIdeal
from .abelian import AbelianStructure

RESIDUE_CAP = 500_000


@dataclass(frozen=True)
class Modulus:
    field: NumberField
    finite_factors: tuple[tuple[PrimeIdeal, int], ...]
    real_places: tuple[int, ...]

    @staticmethod
    def make(field, finite_factors=(), real_places=()) -> "Modulus":
        return Modulus(field, tuple(finite_factors), tuple(sorted(real_places)))

    @staticmethod
    def all_real_places(field, finite_factors=()) -> "Modulus":
        return Modulus.make(field, finite_factors, tuple(range(field.signature[0])))

    def finite_ideal(self) -> Ideal:
        ideal = Ideal.whole_ring(self.field)
        for p, k in self.finite_factors:
            ideal = ideal * p**k
        return ideal

    def is_trivial(self) -> bool:
        return not self.finite_factors and not self.real_places

    def divisors(self):
        """All divisor moduli, coarsest-first ordering not guaranteed."""
        from itertools import chain, combinations, product

        exp_ranges = [range(k + 1) for _, k in self.finite_factors]
        place_subsets = list(
            chain.from_iterable(
                combinations(self.real_places, r) for r in range(len(self.real_places) + 1)
            )
        )
        for exps in product(*exp_ranges):
            factors = tuple(
                (p, e) for (p, _), e in zip(self.finite_factors, exps) if e > 0
            )
            for places in place_subsets:
                yield Modulus(self.field, factors, tuple(places))

    def divides(self, other: "Modulus") -> bool:
        other_map = {p.hnf: k for p, k in other.finite_factors}
        for p, k in self.finite_factors:
            if other_map.get(p.hnf, 0) < k:
                return False
        return set(self.real_places) <= set(other.real_places)

    def describe(self) -> str:
        if self.is_trivial():
            return "(1)"
        parts = []
        for p, k in self.finite_factors:
            parts.append(f"P(norm {p.norm()})^{k}" if k > 1 else f"P(norm {p.norm()})")
        if self.real_places:
            parts.append("oo_" + ",".join(str(v) for v in self.real_places))
        return " * ".join(parts)


class ResidueGroup:
    """(O/m)* x {+-1}^(real places of m), with exact discrete logs."""

    def __init__(self, modulus: Modulus):
        self.modulus = modulus
        field = modulus.field
        self.field = field
        finite = modulus.finite_ideal()
        self.finite = finite
        if finite.norm() > RESIDUE_CAP:
            raise ValueError(f"modulus norm {finite.norm()} beyond residue cap")
        prime_lattices = [p for p, _ in modulus.finite_factors]
        unit_residues = []
        for r in finite.residues():
            elem = field.element(r)
            if all(not p.contains(elem) for p in prime_lattices):
                unit_residues.append(r)
        self.unit_residues = unit_residues
        signs = _sign_tuples(len(modulus.real_places))
        self.elements = [(r, s) for r in unit_residues for s in signs]
        one_r = finite.reduce(tuple(int(c) for c in field.one().coords))
        self.identity = (one_r, (1,) * len(modulus.real_places))
        n = field.degree
        table = field.mult_table
        red_rows = [list(row) for row in finite.hnf]
        pivots = [finite.hnf[i][i] for i in range(n)]
        max_piv = max(pivots)
        max_tab = max(abs(v) for row in table for cell in row for v in cell)
        self._int64_safe = n * n * max_piv * max_piv * max_tab < 2**62
        self._table = [list(r) for r in table]
        self._red_rows = [tuple(r) for r in red_rows]
        self._pivots = pivots
        self.structure = AbelianStructure(self.elements, self.mul, self.identity)

    def mul(self, a, b):
        from .. import kernels

        ra = kernels.ring_mul(
            a[0], b[0], self._table, self._red_rows, self._pivots, self._int64_safe
        )
        rs = tuple(x * y for x, y in zip(a[1], b[1]))
        return (ra, rs)

    def image_of(self, x: FieldElement):
        """Group element of an integral x coprime to the modulus."""
        if not x.is_integral():
            raise ValueError("element must be integral for residue image")
        coords = tuple(int(c) for c in x.coords)
        for p, _ in self.modulus.finite_factors:
            if p.contains(x):
                raise ValueError("element not coprime to the modulus")
        r = self.finite.reduce(coords)
        s = tuple(
            self.field.sign_at_real_place(x, v) for v in self.modulus.real_places
        )
        return (r, s)

    def subgroup_one_mod(self, divisor: Modulus):
        """Elements of the group that are 1 modulo the divisor: residue = 1
        mod the divisor's finite part and sign +1 at its places."""
        div_fin = divisor.finite_ideal()
        one = self.identity[0]
        keep_places = [
            i for i, v in enumerate(self.modulus.real_places) if v in divisor.real_places
        ]
        out = []
        for r, s in self.elements:
            diff = tuple(a - b for a, b in zip(r, one))
            if any(v != 0 for v in div_fin.reduce(diff)):
                continue
            if any(s[i] != 1 for i in keep_places):
                continue
            out.append((r, s))
        return out


def _sign_tuples(k: int):
    from itertools import product

    return [tuple(s) for s in product((1, -1), repeat=k)]

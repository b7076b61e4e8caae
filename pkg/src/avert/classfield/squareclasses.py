"""Representatives of O_S^* / (O_S^*)^2.

Generators: the torsion generator, the fundamental units, and one generator
per S-prime (which must be principal; a class-group obstruction is a hard
error).  Distinctness of the 2^k products is certified by verifying no
nonempty product of generators is a square.
"""

from __future__ import annotations

from itertools import product

from ..numfield.compositum import sqrt_in_field
from ..numfield.field import NumberField
from ..numfield.ideals import factor_prime
from .classgroup import principality_certified_quadratic, principality_search_positive
from .units import UnitGroup


class SUnitObstruction(ArithmeticError):
    pass


def s_unit_square_classes(field: NumberField, s_primes, units: UnitGroup):
    """All square classes of the S-unit group, as field elements.

    s_primes: rational primes; every prime of O above them contributes one
    generator.  Returns 2^(#generators) elements, exponent-vector order.
    """
    gens = [units.torsion_gen] + list(units.fundamental_units)
    for p in sorted(s_primes):
        for prime_ideal in factor_prime(field, p):
            if field.degree == 2:
                g = principality_certified_quadratic(prime_ideal, units)
                if g is None:
                    raise SUnitObstruction(
                        f"prime over {p} is not principal (class-group obstruction)"
                    )
            else:
                g = principality_search_positive(prime_ideal)
            gens.append(g)
    # certify independence modulo squares
    for mask in product((0, 1), repeat=len(gens)):
        if not any(mask):
            continue
        x = field.one()
        for g, bit in zip(gens, mask):
            if bit:
                x = x * g
        if sqrt_in_field(x) is not None:
            raise SUnitObstruction(
                f"generators dependent modulo squares (mask {mask}); "
                "square-class count would be wrong"
            )
    out = []
    for mask in product((0, 1), repeat=len(gens)):
        x = field.one()
        for g, bit in zip(gens, mask):
            if bit:
                x = x * g
        out.append(x)
    return out

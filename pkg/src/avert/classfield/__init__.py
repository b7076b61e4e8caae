"""Class field machinery: units, class groups, ray class groups, conductors."""

from .classgroup import ClassGroup, Inconclusive, class_group
from .descent import TwoPartDescentCertificate, two_part_trivial_by_descent
from .modulus import Modulus, ResidueGroup
from .rayclass import (
    MinAbelianResult,
    RayClassGroup,
    character_conductor,
    min_abelian_ext_rootdisc,
    ray_class_group,
)
from .squareclasses import s_unit_square_classes
from .units import (
    UnitFixtureRecord,
    UnitGroup,
    UnitVerificationError,
    fixture_for_field,
    parse_unit_fixtures,
    unit_group,
    verify_unit_fixture,
)

__all__ = [
    "ClassGroup",
    "class_group",
    "Inconclusive",
    "Modulus",
    "ResidueGroup",
    "RayClassGroup",
    "ray_class_group",
    "character_conductor",
    "min_abelian_ext_rootdisc",
    "MinAbelianResult",
    "UnitGroup",
    "unit_group",
    "UnitFixtureRecord",
    "UnitVerificationError",
    "parse_unit_fixtures",
    "fixture_for_field",
    "verify_unit_fixture",
    "s_unit_square_classes",
    "TwoPartDescentCertificate",
    "two_part_trivial_by_descent",
]

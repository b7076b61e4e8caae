"""Simple prime-order group schemes, torsion-field certification, and the
finite group theory the main argument leans on."""

from .groups import (
    FiniteGroup,
    check_cyclic_pgroup,
    check_divisibility_lemma,
    ell_core,
    parse_group_catalog,
)
from .modules import GaloisModule, simple_modules
from .oorttate import SimpleScheme, cartier_dual, oort_tate_simples
from .torsion import TorsionFieldCertificate, TorsionTower, certify_torsion_field, torsion_field_lower

__all__ = [
    "SimpleScheme",
    "oort_tate_simples",
    "cartier_dual",
    "TorsionTower",
    "TorsionFieldCertificate",
    "torsion_field_lower",
    "certify_torsion_field",
    "FiniteGroup",
    "ell_core",
    "check_cyclic_pgroup",
    "check_divisibility_lemma",
    "parse_group_catalog",
    "GaloisModule",
    "simple_modules",
]

"""Filtration calculus: rewriting filtrations of finite flat group schemes
against an Ext table, with a brute-force model category as oracle."""

from .calculus import (
    BlockedRewrite,
    FiltrationObject,
    admits,
    dual_filtration,
    etale_decomposition,
    force_subobject,
    isotypic_split,
    point_count_bound,
)
from .model import model_check
from .table import ExtEntry, ExtTable, parse_ext_tables

__all__ = [
    "ExtTable",
    "ExtEntry",
    "parse_ext_tables",
    "FiltrationObject",
    "admits",
    "force_subobject",
    "isotypic_split",
    "etale_decomposition",
    "dual_filtration",
    "point_count_bound",
    "BlockedRewrite",
    "model_check",
]

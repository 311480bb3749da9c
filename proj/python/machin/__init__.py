"""Machin-type arctangent formulae: exact verification, search, bounds and pi."""

from ._core import (
    Relation,
    enumerate_solutions,
    exponent_bound,
    find_three_term,
    format_relation,
    known_formulae,
    numeric_check,
    parse_relation,
    pi_digits,
    pure_power_scan,
    stormer_identity,
    table,
    tau_for,
    verify,
)

__all__ = [
    "Relation",
    "enumerate_solutions",
    "exponent_bound",
    "find_three_term",
    "format_relation",
    "known_formulae",
    "numeric_check",
    "parse_relation",
    "pi_digits",
    "pure_power_scan",
    "stormer_identity",
    "table",
    "tau_for",
    "verify",
]

"""Levels of the classifying diagram of a finite category, decomposed into
components with explicit stabilizer groups, with closed forms for ordinals,
truncated ordered sets, finite sets, and vector spaces over prime fields
cross-checked against a brute-force orbit engine."""

from .chains import (Chain, ChainIso, Orbit, StabilizerGroup, act,
                     enumerate_chains, orbits, stabilizer)
from .classifying import (Component, Decomposition, completeness_check,
                          face_degeneracy_report, is_discrete_classifying,
                          level_decomposition, nerve_truncation, segal_check)
from .fincat import (FiniteCategory, check_equivalence_invariants, from_catdef,
                     iso_interval, maximal_subgroupoid, one_object_group,
                     opposite, ordinal, parse_catdef, truncated_delta,
                     validate_category, walking_arrow)
from .groups import (CayleyTable, GeneralLinear, GeneratorSet, GroupExpr,
                     Product, Symmetric, Trivial, Wreath, are_isomorphic,
                     closure, materialize)
from .limits import DEFAULT_LIMITS, Limits

__version__ = "0.1.0"

__all__ = [
    "Chain", "ChainIso", "Orbit", "StabilizerGroup", "act", "enumerate_chains", "orbits",
    "stabilizer", "Component", "Decomposition", "completeness_check",
    "face_degeneracy_report", "is_discrete_classifying", "level_decomposition",
    "nerve_truncation", "segal_check", "FiniteCategory",
    "check_equivalence_invariants", "from_catdef", "iso_interval",
    "maximal_subgroupoid", "one_object_group", "opposite", "ordinal",
    "parse_catdef", "truncated_delta", "validate_category", "walking_arrow",
    "CayleyTable", "GeneralLinear", "GeneratorSet", "GroupExpr", "Product",
    "Symmetric", "Trivial", "Wreath", "are_isomorphic", "closure",
    "materialize", "DEFAULT_LIMITS", "Limits",
]

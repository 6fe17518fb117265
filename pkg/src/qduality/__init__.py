"""Exact verification of q-Pochhammer duality identities and the level
correspondence of K-theoretic I-functions of Gr(r, n) and Gr(n-r, n)."""

from .compositions import difference, weak_compositions
from .duality import (
    DualityCase,
    IndexSubset,
    LevelSpec,
    Regime,
    a_sum,
    b_sum,
    boundary_c,
    boundary_d,
    corollary_unity,
    verify_case,
    verify_interior,
    verify_lower_boundary,
    verify_upper_boundary,
)
from .fields import ParameterPoint, field_pow, parse_field, sample_parameter_point
from .qseries import PoleError, level_weight_A, level_weight_B, qfactorial, qpochhammer

__all__ = [
    "DualityCase", "IndexSubset", "LevelSpec", "ParameterPoint", "PoleError", "Regime",
    "a_sum", "b_sum", "boundary_c", "boundary_d", "corollary_unity", "difference",
    "field_pow", "level_weight_A", "level_weight_B", "parse_field", "qfactorial",
    "qpochhammer", "sample_parameter_point", "verify_case", "verify_interior",
    "verify_lower_boundary", "verify_upper_boundary", "weak_compositions",
]

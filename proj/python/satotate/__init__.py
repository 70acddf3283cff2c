"""Sato-Tate groups, characteristic polynomials and moments for y^2 = x^m - 1."""

from ._core import (
    BoundExceeded,
    CacheCorruption,
    CurveFamily,
    ResourceLimit,
    averaged_moment,
    charpoly,
    check_conjectures,
    component_moment,
    default_generator,
    gamma,
    haar_sample,
    lpoly_coeffs,
    moment_table,
    multinomial_mu1_moment,
    numeric_moments,
    point_count,
    scan,
    trace_a1,
    u1_2_moment,
    u1_moment,
    unit_group_generators,
    verify,
)

__all__ = [
    "BoundExceeded",
    "CacheCorruption",
    "CurveFamily",
    "ResourceLimit",
    "averaged_moment",
    "charpoly",
    "check_conjectures",
    "component_moment",
    "default_generator",
    "gamma",
    "haar_sample",
    "lpoly_coeffs",
    "moment_table",
    "multinomial_mu1_moment",
    "numeric_moments",
    "point_count",
    "scan",
    "trace_a1",
    "u1_2_moment",
    "u1_moment",
    "unit_group_generators",
    "verify",
]

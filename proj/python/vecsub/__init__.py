"""Analysis and execution of multivariate vector subdivision schemes.

Thin wrapper over the C++ core `_vecsub`. Exact rational arithmetic stays on
the C++ side; rationals cross the boundary as canonical "p/q" strings, grids
come back as numpy arrays.
"""

from _vecsub import (  # noqa: F401
    Filter,
    MathError,
    ParseError,
    ResourceError,
    balanced_from_scalar,
    bspline,
    bspline_filter,
    check_symmetry,
    convergence_check,
    convolve,
    delta,
    delta_col,
    delta_row,
    difference,
    fixture,
    fixture_names,
    load_filter,
    phi_grid,
    run_scheme,
    sm_estimate,
    subdivision_apply,
    sum_rule_order,
    tensor_filter,
    three_direction_filter,
)

__all__ = [
    "Filter",
    "MathError",
    "ParseError",
    "ResourceError",
    "balanced_from_scalar",
    "bspline",
    "bspline_filter",
    "check_symmetry",
    "convergence_check",
    "convolve",
    "delta",
    "delta_col",
    "delta_row",
    "difference",
    "fixture",
    "fixture_names",
    "load_filter",
    "phi_grid",
    "run_scheme",
    "sm_estimate",
    "subdivision_apply",
    "sum_rule_order",
    "tensor_filter",
    "three_direction_filter",
]

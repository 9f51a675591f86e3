"""Exact polyhedral convex analysis and differential stability of parametric
polyhedral programs."""

from .convex import (
    PolyhedralFunction,
    epigraph,
    evaluate,
    function_sum,
    indicator,
    normal_cone,
    singular_subdifferential,
    subdifferential,
)
from .polyhedron import (
    HPolyhedron,
    VPolyhedron,
    contains_point,
    h_to_v,
    includes,
    intersect,
    minkowski_sum,
    normalize,
    project,
    set_equal,
    v_to_h,
)
from .stability import (
    ParametricProblem,
    PolyhedralMap,
    StabilityReport,
    choice_independence,
    coderivative,
    estimate_B0,
    estimate_B0_infty,
    map_value,
    mu_subdifferential,
    optimal_value,
    solution_set,
    value_function,
    verify_stability,
)

__version__ = "0.1.0"

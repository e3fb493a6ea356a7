"""Newton polygons of zeta function numerators for y^2 + y = f(x) over F_{2^a}."""

from .field import (
    FieldCtx,
    FieldElement,
    abs_trace,
    embed_bits,
    enumerate_field,
    field_table,
    is_irreducible,
    make_ctx,
    mul,
    smallest_irreducible,
)
from .hasse import TheoremCase, classify, hasse_polynomial
from .modsolve import (
    DensityResult,
    ModSolution,
    density,
    min_weight_solution,
    minimal_irreducible_solutions,
    odds_up_to,
    sigma,
    support_sum_lower_bound,
)
from .vss import (
    MinimalSupportMatrix,
    VssReport,
    build_matrix,
    effective_exponent_set,
    predict_first_vertex,
    vss_dim,
    vss_report,
)
from .zeta import (
    CurvePoly,
    exponential_sum,
    first_vertex,
    l_polynomial,
    newton_polygon,
    newton_polygon_of_curve,
    point_count,
)

__all__ = [
    "CurvePoly",
    "DensityResult",
    "FieldCtx",
    "FieldElement",
    "MinimalSupportMatrix",
    "ModSolution",
    "TheoremCase",
    "VssReport",
    "abs_trace",
    "build_matrix",
    "classify",
    "density",
    "effective_exponent_set",
    "embed_bits",
    "enumerate_field",
    "exponential_sum",
    "field_table",
    "first_vertex",
    "hasse_polynomial",
    "is_irreducible",
    "l_polynomial",
    "make_ctx",
    "min_weight_solution",
    "minimal_irreducible_solutions",
    "mul",
    "newton_polygon",
    "newton_polygon_of_curve",
    "odds_up_to",
    "point_count",
    "predict_first_vertex",
    "sigma",
    "smallest_irreducible",
    "support_sum_lower_bound",
    "vss_dim",
    "vss_report",
]

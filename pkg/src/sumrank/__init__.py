"""Sum-rank metric codes from elliptic function fields over small odd finite fields.

Two code families of 2x2 matrix blocks: message functions take their poles
either at the single place over infinity or at the two places over a
completely split point, and codewords evaluate the induced 2x2 matrices at
rational places of the base rational function field.  Everything is exact
and desk-scale: brute-force weight distributions, minimum distances and
Singleton-type bound checks are computed by full enumeration.
"""

from .effield import BasePlace, Curve, CurveFunction, CurvePlace, LocalExpansion, Splitting
from .errors import SumRankError
from .gf import Field, FieldElement
from .srcodes import (
    CodeSpec,
    EvaluatedMatrix,
    FunctionMatrix,
    Operator,
    PoleData,
    construct_code_at_infinity,
    construct_code_at_split,
    evaluate_operator,
    involution_matrix,
    multiplication_matrix,
    operator_det,
    operator_matrix,
    operator_matrix_at,
)
from .srmetric import (
    BoundsReport,
    WeightDistribution,
    bounds_report,
    min_distance,
    sampled_weight_distribution,
    sum_rank_weight,
    weight_distribution,
)
from .upoly import Poly, RationalFunction, parse_poly

__version__ = "0.1.0"

__all__ = [
    "BasePlace",
    "BoundsReport",
    "CodeSpec",
    "Curve",
    "CurveFunction",
    "CurvePlace",
    "EvaluatedMatrix",
    "Field",
    "FieldElement",
    "FunctionMatrix",
    "LocalExpansion",
    "Operator",
    "Poly",
    "PoleData",
    "RationalFunction",
    "Splitting",
    "SumRankError",
    "WeightDistribution",
    "bounds_report",
    "construct_code_at_infinity",
    "construct_code_at_split",
    "evaluate_operator",
    "involution_matrix",
    "min_distance",
    "multiplication_matrix",
    "operator_det",
    "operator_matrix",
    "operator_matrix_at",
    "parse_poly",
    "sampled_weight_distribution",
    "sum_rank_weight",
    "weight_distribution",
    "__version__",
]

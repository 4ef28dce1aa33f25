"""Projective Reed-Muller codes: construction, duals, hulls, enumeration."""

from __future__ import annotations

from .analyze import (
    NOT_A_DESIGN,
    BlockFamily,
    WeightDistribution,
    design_lambda,
    min_distance,
    min_weight_supports,
    weight_distribution,
    weight_distribution_with_supports,
)
from .code import (
    HullReport,
    LinearCode,
    code_from_rows,
    contains_vector,
    dual,
    equal_codes,
    hull,
    is_lcd,
    is_self_dual,
    is_self_orthogonal,
)
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    InternalInconsistency,
    NotPrimePower,
    OutOfRange,
    PrmHullError,
)
from .exactla import MatrixFq, SubspaceBasis
from .field import Field, field_make, power_sum
from .geometry import (
    ProjectivePointSet,
    affine_points,
    evaluate,
    evaluate_rows,
    monomials_of_degree,
    num_projective_points,
    projective_points,
    reduce_monomial,
    reduced_basis_monomials,
)
from .prm import (
    NO_CLOSED_FORM,
    ClassificationReport,
    DualDescription,
    PrmCode,
    PrmParams,
    arm_code,
    classification_report,
    classify_predicted,
    described_dual_code,
    dim_mr,
    dim_sorensen,
    dual_description,
    hull_basis_predicted,
    hull_dim_cases,
    hull_dim_predicted,
    lcd_witness,
    min_dist_formula,
    prm_code,
    rsj_hull_dim,
)

__all__ = [
    "NOT_A_DESIGN",
    "NO_CLOSED_FORM",
    "BlockFamily",
    "BudgetExceeded",
    "ClassificationReport",
    "DimensionMismatch",
    "DivisionByZero",
    "DualDescription",
    "Field",
    "FieldMismatch",
    "HullReport",
    "InternalInconsistency",
    "LinearCode",
    "MatrixFq",
    "NotPrimePower",
    "OutOfRange",
    "PrmCode",
    "PrmHullError",
    "PrmParams",
    "ProjectivePointSet",
    "SubspaceBasis",
    "WeightDistribution",
    "affine_points",
    "arm_code",
    "classification_report",
    "classify_predicted",
    "code_from_rows",
    "contains_vector",
    "described_dual_code",
    "design_lambda",
    "dim_mr",
    "dim_sorensen",
    "dual",
    "dual_description",
    "equal_codes",
    "evaluate",
    "evaluate_rows",
    "field_make",
    "hull",
    "hull_basis_predicted",
    "hull_dim_cases",
    "hull_dim_predicted",
    "is_lcd",
    "is_self_dual",
    "is_self_orthogonal",
    "lcd_witness",
    "min_dist_formula",
    "min_distance",
    "min_weight_supports",
    "monomials_of_degree",
    "num_projective_points",
    "power_sum",
    "prm_code",
    "projective_points",
    "reduce_monomial",
    "reduced_basis_monomials",
    "rsj_hull_dim",
    "weight_distribution",
    "weight_distribution_with_supports",
]

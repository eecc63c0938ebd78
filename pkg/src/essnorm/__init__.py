"""Hankel operator norms and essential-norm brackets on products of disks."""

from .domain import ProductDomain, UNIT_BIDISK
from .exact import ExactComplex, PiScalar, SqrtScaled
from .symbols import (
    DiskSlice,
    HarmonicityReport,
    Symbol,
    check_admissible,
    restrict,
)
from .bergman import (
    BasisIndex,
    QuadRule,
    bergman_kernel,
    derivative_norm_balance,
    inner_product,
    moment,
    norm_sq,
    normalized_kernel_coeffs,
    project,
    quad_integrate,
)
from .hankel import (
    BasisWindow,
    EssNormBracket,
    HermitianGram,
    Rotate,
    Swap,
    compose_unitary,
    ess_norm_bracket,
    gram,
    kernel_rayleigh_sequence,
    op_norm,
    projection_coeffs,
)
from .bounds import (
    BoundReport,
    DiskFamily,
    NeumannConstants,
    NotAdmissibleError,
    SearchConfig,
    area_form_identity,
    bidisk_lower,
    evaluate_bounds,
    lower_bound,
    neumann_constants,
    sandwich_check,
    upper_bound,
)
from .verify import VerificationRow, run_verification

__version__ = "0.1.0"

__all__ = [
    "ProductDomain",
    "UNIT_BIDISK",
    "ExactComplex",
    "PiScalar",
    "SqrtScaled",
    "Symbol",
    "DiskSlice",
    "HarmonicityReport",
    "check_admissible",
    "restrict",
    "BasisIndex",
    "QuadRule",
    "moment",
    "inner_product",
    "norm_sq",
    "project",
    "bergman_kernel",
    "normalized_kernel_coeffs",
    "quad_integrate",
    "derivative_norm_balance",
    "BasisWindow",
    "HermitianGram",
    "EssNormBracket",
    "gram",
    "op_norm",
    "projection_coeffs",
    "ess_norm_bracket",
    "kernel_rayleigh_sequence",
    "compose_unitary",
    "Rotate",
    "Swap",
    "DiskFamily",
    "SearchConfig",
    "BoundReport",
    "NeumannConstants",
    "NotAdmissibleError",
    "lower_bound",
    "bidisk_lower",
    "upper_bound",
    "evaluate_bounds",
    "area_form_identity",
    "neumann_constants",
    "sandwich_check",
    "VerificationRow",
    "run_verification",
]

"""Moore-Penrose pseudoinverses and generalized Cauchy duals of matrices.

Quick start::

    >>> import numpy as np
    >>> from cauchy_dual import cauchy_dual
    >>> cauchy_dual(np.array([[1, 0], [1, 0]])).real
    array([[0.5, 0. ],
           [0.5, 0. ]])
"""

from .blocks import BlockOperator, direct_sum, full_2x2_pinv, lower_tri_pinv, make_block_operator, upper_block_pinv
from .classify import OperatorClassification, classify
from .dual import ROUTES, cauchy_dual, dual, power_gap, product_law_check, w
from .errors import (
    CauchyDualError,
    FactorizationError,
    MatrixFormatError,
    PreconditionError,
    RouteFailure,
    ShapeError,
)
from .generators import gen_ep, gen_normal_ep, gen_orthogonal_range_blocks, gen_random, gen_range_matched_pair
from .linalg import DEFAULT_CONFIG, ToleranceConfig, null_projector, range_projector, svd
from .models import KernelSpec, nystrom, spectral_dual_shift, weighted_shift
from .pinv import abs_op, penrose_residuals, pinv, polar

__version__ = "0.1.0"

__all__ = [
    "BlockOperator", "CauchyDualError", "DEFAULT_CONFIG", "FactorizationError", "KernelSpec",
    "MatrixFormatError", "OperatorClassification", "PreconditionError", "ROUTES", "RouteFailure",
    "ShapeError", "ToleranceConfig", "abs_op", "cauchy_dual", "classify", "direct_sum", "dual",
    "full_2x2_pinv", "gen_ep", "gen_normal_ep", "gen_orthogonal_range_blocks", "gen_random",
    "gen_range_matched_pair", "lower_tri_pinv", "make_block_operator", "null_projector", "nystrom",
    "penrose_residuals", "pinv", "polar", "power_gap", "product_law_check", "range_projector",
    "spectral_dual_shift", "svd", "upper_block_pinv", "w", "weighted_shift",
]  # fmt: skip

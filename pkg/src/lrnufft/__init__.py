"""Nonuniform FFTs as sums of diagonally scaled FFTs.

Types I, II and III in one dimension, type II in two dimensions, and inverse
types I and II by conjugate gradients.  Every transform is planned once and
then applied many times::

    plan = plan_nufft2(x, epsilon=1e-7)
    f = exec_nufft2(plan, c)
"""

from .approx import LowRankFactors, build_factors, cheb_coefficients, select_rank
from .fft import fft_2d_forward, fft_forward, fft_inverse
from .inverse import (
    CgReport,
    CGNotConverged,
    ToeplitzOperator,
    cg_solve,
    inufft1,
    inufft2,
    toeplitz_from_column,
    toeplitz_from_normal,
    toeplitz_matvec,
)
from .oracle import nudft2d_direct, nudft_direct, perturbed_grid, worst_grid
from .special import bessel_j_int, lambert_w
from .transform2d import Plan2D, exec_nufft2d2, grid_assign_2d, plan_nufft2d2
from .transforms import (
    Plan1,
    Plan2,
    Plan3,
    SampleSet,
    exec_nufft1,
    exec_nufft2,
    exec_nufft2_adjoint,
    exec_nufft3,
    grid_assign,
    normalize_samples,
    plan_nufft1,
    plan_nufft2,
    plan_nufft3,
)

__version__ = "0.1.0"

__all__ = [
    "LowRankFactors",
    "build_factors",
    "cheb_coefficients",
    "select_rank",
    "fft_2d_forward",
    "fft_forward",
    "fft_inverse",
    "CgReport",
    "CGNotConverged",
    "ToeplitzOperator",
    "cg_solve",
    "inufft1",
    "inufft2",
    "toeplitz_from_column",
    "toeplitz_from_normal",
    "toeplitz_matvec",
    "nudft2d_direct",
    "nudft_direct",
    "perturbed_grid",
    "worst_grid",
    "bessel_j_int",
    "lambert_w",
    "Plan2D",
    "exec_nufft2d2",
    "grid_assign_2d",
    "plan_nufft2d2",
    "Plan1",
    "Plan2",
    "Plan3",
    "SampleSet",
    "exec_nufft1",
    "exec_nufft2",
    "exec_nufft2_adjoint",
    "exec_nufft3",
    "grid_assign",
    "normalize_samples",
    "plan_nufft1",
    "plan_nufft2",
    "plan_nufft3",
]

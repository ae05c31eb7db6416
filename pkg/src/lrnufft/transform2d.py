"""Two-dimensional type-II NUFFT.

Computes, for an m-by-n coefficient matrix C and samples (x_j, y_j),

    f_j = sum_{k1 < m} sum_{k2 < n} C[k1, k2] exp(-2 pi i (k1 x_j + k2 y_j)).

``x`` runs along the rows of C (grid spacing 1/m) and ``y`` along the
columns (spacing 1/n).  Each axis gets its own low-rank correction, giving

    f_j = sum_{r1, r2} ux[j, r1] uy[j, r2] * (F_m D_vx[r1] C D_vy[r2] F_n^T)[tx_j, ty_j]

where the row transform ``F_m D_vx[r1] C`` is shared by every r2.
"""

from dataclasses import dataclass, field

import numpy as np

from . import fft
from .approx import LowRankFactors, build_factors
from .transforms import DEFAULT_EPS, _check_eps, _frozen, _sample_set, normalize_samples

__all__ = ["Plan2D", "grid_assign_2d", "plan_nufft2d2", "exec_nufft2d2"]


@dataclass(frozen=True)
class Plan2D:
    m: int
    n: int
    samples: np.ndarray
    sx: np.ndarray
    sy: np.ndarray
    tx: np.ndarray
    ty: np.ndarray
    gamma_x: float
    gamma_y: float
    factors_x: LowRankFactors = field(repr=False)
    factors_y: LowRankFactors = field(repr=False)
    flat_index: np.ndarray = field(repr=False)
    epsilon: float = DEFAULT_EPS

    @property
    def N(self):
        return self.samples.shape[0]

    @property
    def K1(self):
        return self.factors_x.K

    @property
    def K2(self):
        return self.factors_y.K


def _normalize_2d(samples):
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] != 2:
        raise ValueError(f"samples must have shape (N, 2), got {samples.shape}")
    if samples.shape[0] == 0:
        raise ValueError("need at least one sample")
    return np.column_stack([normalize_samples(samples[:, 0]), normalize_samples(samples[:, 1])])


def _check_dims(m, n):
    m, n = int(m), int(n)
    if m < 1 or n < 1:
        raise ValueError(f"grid sizes must be >= 1, got m={m}, n={n}")
    return m, n


def grid_assign_2d(samples, m, n):
    """Per-axis nearest-node assignment.

    Returns ``(sx, sy, tx, ty, gamma_x, gamma_y)`` with ``sx = round(m x)``,
    ``sy = round(n y)``, ``tx = sx mod m``, ``ty = sy mod n``.
    """
    m, n = _check_dims(m, n)
    samples = np.asarray(samples, dtype=float)
    if np.any((samples < 0) | (samples >= 1)):
        raise ValueError("samples must be normalized into [0, 1)^2")
    ax = _sample_set(samples[:, 0].copy(), m)
    ay = _sample_set(samples[:, 1].copy(), n)
    return ax.s, ay.s, ax.t, ay.t, ax.gamma, ay.gamma


def plan_nufft2d2(samples, m, n, epsilon=DEFAULT_EPS):
    """Plan a 2D type-II NUFFT for an m-by-n coefficient matrix.

    `samples` is (N, 2); N is independent of m and n.
    """
    m, n = _check_dims(m, n)
    epsilon = _check_eps(epsilon)
    samples = _normalize_2d(samples)
    ax = _sample_set(samples[:, 0].copy(), m)
    ay = _sample_set(samples[:, 1].copy(), n)
    fx = build_factors(ax.delta, ax.gamma, np.arange(m) / m, epsilon)
    fy = build_factors(ay.delta, ay.gamma, np.arange(n) / n, epsilon)
    return Plan2D(
        m=m,
        n=n,
        samples=_frozen(samples),
        sx=ax.s,
        sy=ay.s,
        tx=ax.t,
        ty=ay.t,
        gamma_x=ax.gamma,
        gamma_y=ay.gamma,
        factors_x=LowRankFactors(K=fx.K, U=_frozen(fx.U), V=_frozen(fx.V)),
        factors_y=LowRankFactors(K=fy.K, U=_frozen(fy.U), V=_frozen(fy.V)),
        # column-major position of entry (tx, ty) in an m-by-n matrix
        flat_index=_frozen(ax.t + m * ay.t),
        epsilon=epsilon,
    )


def exec_nufft2d2(plan, C, reuse=True):
    """Apply a 2D type-II plan to the m-by-n matrix `C`.

    With ``reuse=False`` the row transform is recomputed for every (r1, r2)
    pair; the result is bit-identical, only slower.
    """
    C = np.asarray(C)
    if C.shape != (plan.m, plan.n):
        raise ValueError(f"expected a {plan.m}x{plan.n} matrix, got shape {C.shape}")
    if not np.all(np.isfinite(C)):
        raise ValueError("input contains NaN or Inf")
    C = C.astype(complex, copy=False)
    Ux, Vx = plan.factors_x.U, plan.factors_x.V
    Uy, Vy = plan.factors_y.U, plan.factors_y.V
    f = np.zeros(plan.N, dtype=complex)
    for r1 in range(plan.K1):
        if reuse:
            rows = fft.fft_forward(Vx[:, r1][:, None] * C, axis=0)
        for r2 in range(plan.K2):
            if not reuse:
                rows = fft.fft_forward(Vx[:, r1][:, None] * C, axis=0)
            full = fft.fft_forward(rows * Vy[:, r2][None, :], axis=1)
            f += Ux[:, r1] * Uy[:, r2] * full.ravel(order="F")[plan.flat_index]
    return f

"""Low-rank approximation of the NUDFT correction matrix.

For offsets ``delta`` in [-gamma, gamma] and scaled frequencies ``w`` in [0, 1]
the matrix

    A[j, k] = exp(-2j*pi * delta[j] * w[k])

is approximated by ``U @ V.T`` with K columns, using a truncated bivariate
Chebyshev expansion of exp(-i x y) whose coefficients are products of Bessel
functions.  ``U`` depends only on the samples and ``V`` only on the
frequencies, so both are computed once per plan.
"""

import math
from dataclasses import dataclass

import numpy as np

from .special import bessel_j_int, lambert_w

__all__ = [
    "ChebCoefficients",
    "LowRankFactors",
    "STANDARD_PRECISIONS",
    "MAX_RANK",
    "cheb_coefficients",
    "select_rank",
    "cheb_eval_matrix",
    "build_factors",
]

MAX_RANK = 64

# Working precisions with empirically tuned ranks, one entry per gamma bracket
# (0, 1/32], (1/32, 1/16], (1/16, 1/8], (1/8, 1/4], (1/4, 1/2].
STANDARD_PRECISIONS = {
    "double": (2.2e-16, (8, 9, 11, 13, 16)),
    "single": (1.2e-7, (5, 6, 7, 8, 10)),
    "half": (9.8e-4, (3, 3, 4, 5, 7)),
}
_GAMMA_BRACKETS = (1 / 32, 1 / 16, 1 / 8, 1 / 4, 1 / 2)


@dataclass(frozen=True)
class ChebCoefficients:
    """K-by-K Chebyshev coefficients ``a[p, r]`` of exp(-i x y)."""

    K: int
    a: np.ndarray
    gamma: float


@dataclass(frozen=True)
class LowRankFactors:
    """Columns ``U[:, r]``, ``V[:, r]`` with ``A ~ U @ V.T``."""

    K: int
    U: np.ndarray
    V: np.ndarray

    def reconstruct(self):
        return self.U @ self.V.T


def cheb_coefficients(gamma, K):
    """Coefficients ``a[p, r] = 4 i^r J_{(p+r)/2}(-gamma*pi/2) J_{(r-p)/2}(-gamma*pi/2)``.

    Entries with odd ``p - r`` are exactly zero.
    """
    gamma = float(gamma)
    K = int(K)
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K!r}")
    z = -gamma * math.pi / 2
    jz = {n: bessel_j_int(n, z) for n in range(-K, K)}
    a = np.zeros((K, K), dtype=complex)
    ipow = (1, 1j, -1, -1j)
    for p in range(K):
        for r in range(p % 2, K, 2):
            a[p, r] = 4 * ipow[r % 4] * jz[(p + r) // 2] * jz[(r - p) // 2]
    return ChebCoefficients(K=K, a=a, gamma=gamma)


def _table_rank(gamma, row):
    for edge, K in zip(_GAMMA_BRACKETS, row):
        if gamma <= edge:
            return K
    raise ValueError(f"gamma must be <= 1/2, got {gamma!r}")


def formula_rank(gamma, epsilon):
    """Closed-form rank ``max(3, ceil(5 gamma exp(W(log(140/eps) / (5 gamma)))))``."""
    L = math.log(140.0 / epsilon)
    y = L / (5.0 * gamma)
    if math.isinf(y):
        return 3
    # 5 gamma exp(W(y)) == L / W(y), which avoids overflow for tiny gamma
    return max(3, math.ceil(L / lambert_w(y)))


def select_rank(gamma, epsilon):
    """Number of FFTs K for perturbation `gamma` at working precision `epsilon`.

    ``gamma == 0`` needs a single FFT.  When `epsilon` is within a factor of 2
    of a standard precision (2.2e-16, 1.2e-7, 9.8e-4) the tuned table is used;
    otherwise the closed-form bound, capped at ``MAX_RANK``.
    """
    gamma = float(gamma)
    epsilon = float(epsilon)
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if not 0.0 <= gamma <= 0.5:
        raise ValueError(f"gamma must lie in [0, 1/2], got {gamma!r}")
    if gamma == 0.0:
        return 1
    for ref, row in STANDARD_PRECISIONS.values():
        if ref / 2 <= epsilon <= ref * 2:
            return _table_rank(gamma, row)
    K = max(1, formula_rank(gamma, epsilon))
    if K > MAX_RANK:
        raise ValueError(
            f"rank {K} exceeds {MAX_RANK}; epsilon={epsilon!r} is below attainable precision"
        )
    return K


def cheb_eval_matrix(points, K):
    """Columns ``T_0(points), ..., T_{K-1}(points)`` by three-term recurrence."""
    x = np.asarray(points, dtype=float).ravel()
    if np.any(np.abs(x) > 1 + 1e-12):
        raise ValueError("Chebyshev points must lie in [-1, 1]")
    x = np.clip(x, -1.0, 1.0)
    T = np.empty((x.size, K))
    T[:, 0] = 1.0
    if K > 1:
        T[:, 1] = x
    for p in range(2, K):
        T[:, p] = 2 * x * T[:, p - 1] - T[:, p - 2]
    return T


def build_factors(delta, gamma, omega_scaled, epsilon):
    """Factors ``U`` (samples) and ``V`` (frequencies) approximating A.

    Parameters
    ----------
    delta : (N,) array
        Sample offsets from their grid nodes, in units of the grid spacing;
        ``|delta| <= gamma``.
    gamma : float
        Perturbation parameter in [0, 1/2].
    omega_scaled : (M,) array
        Frequencies divided by N, in [0, 1].
    epsilon : float
        Working precision, passed to :func:`select_rank`.

    Returns
    -------
    LowRankFactors
        ``U`` is (N, K), ``V`` is (M, K).
    """
    delta = np.asarray(delta, dtype=float)
    w = np.asarray(omega_scaled, dtype=float)
    K = select_rank(gamma, epsilon)
    # only frequency 0: A is exactly all ones whatever the offsets
    if gamma == 0.0 or not np.any(w):
        return LowRankFactors(K=1, U=np.ones((delta.size, 1), complex), V=np.ones((w.size, 1)))
    if np.any(np.abs(delta) > gamma * (1 + 1e-12)):
        raise ValueError("|delta| exceeds gamma")
    a = cheb_coefficients(gamma, K).a.copy()
    a[0, :] *= 0.5
    Tx = cheb_eval_matrix(delta / gamma, K)
    U = (np.exp(-1j * np.pi * delta)[:, None] * Tx) @ a
    V = cheb_eval_matrix(2 * w - 1, K)
    V[:, 0] *= 0.5
    return LowRankFactors(K=K, U=U, V=V)

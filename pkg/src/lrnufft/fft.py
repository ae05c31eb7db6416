"""Uniform FFT adapter.

Every transform in the package goes through these functions, so the sign and
normalization conventions live in exactly one place:

* forward:  ``y[j] = sum_k v[k] exp(-2j*pi*j*k/N)``  (no scaling)
* inverse:  ``v[k] = (1/N) sum_j y[j] exp(+2j*pi*j*k/N)``

The backend is :mod:`scipy.fft`, which handles any length (including primes)
in O(N log N).  Thread count follows ``scipy.fft.set_workers``.
"""

import numpy as np
import scipy.fft as sfft

__all__ = [
    "fft_forward",
    "fft_inverse",
    "fft_transpose",
    "fft_2d_forward",
]


def _check(v, axis=None):
    v = np.asarray(v)
    if v.size == 0:
        raise ValueError("FFT input must be non-empty")
    if axis is not None and v.shape[axis] == 0:
        raise ValueError("FFT axis must have length >= 1")
    if not np.all(np.isfinite(v)):
        raise ValueError("FFT input contains NaN or Inf")
    return v


def fft_forward(v, axis=-1):
    """Unnormalized DFT, ``F v`` with ``F[j, k] = exp(-2j*pi*j*k/N)``.

    Parameters
    ----------
    v : array_like
        Input; transformed along `axis`.
    axis : int
        Axis of length N to transform. Other axes are batched.
    """
    v = _check(v)
    return sfft.fft(v, axis=axis)


def fft_inverse(v, axis=-1):
    """Inverse of :func:`fft_forward`, including the 1/N factor."""
    v = _check(v)
    return sfft.ifft(v, axis=axis)


def fft_transpose(v, axis=-1):
    """``F.T @ v``.

    The DFT matrix is symmetric, so this is the forward transform; it is the
    same product as ``N * conj(F)^{-1} v``.  Kept as a separate name so the
    type-I code reads as the transpose of the type-II code.
    """
    return fft_forward(v, axis=axis)


def fft_2d_forward(C):
    """``F_m @ C @ F_n.T`` for an m-by-n matrix `C`.

    Column-major flattening of the result, ``out.ravel(order="F")``, gives
    entry ``j`` at row ``j % m`` and column ``j // m``.
    """
    C = _check(C)
    if C.ndim != 2:
        raise ValueError(f"expected a 2D matrix, got shape {C.shape}")
    return sfft.fft(sfft.fft(C, axis=0), axis=1)

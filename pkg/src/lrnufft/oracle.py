"""Brute-force references and adversarial sample families.

The reference sums are O(N^2) and exist to check the fast transforms.  Two
things keep them accurate without arbitrary precision:

* phases ``x * omega`` are formed as an exact two-term product and reduced
  mod 1 exactly, so large products do not lose the fractional part;
* the sums use error-compensated (TwoSum) accumulation, or ``math.fsum``.
"""

import math

import numpy as np

__all__ = [
    "nudft_direct",
    "nudft2d_direct",
    "worst_grid",
    "perturbed_grid",
    "dense_nudft_matrix",
    "dense_nudft2_matrix",
]

DENSE_LIMIT = 4096


def _split(a):
    c = 134217729.0 * a  # 2**27 + 1
    hi = c - (c - a)
    return hi, a - hi


def _reduced_phase(x, w, scale=1):
    """``x * w / scale mod 1`` in [-1/2, 1/2], with a single final rounding.

    `scale` is a positive integer; the integer multiple of it is removed from
    the exact product before dividing.
    """
    a, b = np.meshgrid(np.asarray(x, float), np.asarray(w, float), indexing="ij")
    hi = a * b
    a1, a2 = _split(a)
    b1, b2 = _split(b)
    lo = ((a1 * b1 - hi) + a1 * b2 + a2 * b1) + a2 * b2
    # hi - scale * rint(hi / scale) is exact
    p = ((hi - scale * np.rint(hi / scale)) + lo) / scale
    return p - np.rint(p)


def _kernel(phase):
    return np.exp(-2j * np.pi * phase)


def _compensated_sum(terms):
    """Sum columns of ``terms`` (rows independent) with Knuth's TwoSum."""
    s = np.zeros(terms.shape[0])
    comp = np.zeros(terms.shape[0])
    for col in terms.T:
        t = s + col
        z = t - s
        comp += (s - (t - z)) + (col - z)
        s = t
    return s + comp


def _check_lengths(x, omega, c):
    x = np.asarray(x, dtype=float).ravel()
    omega = np.asarray(omega, dtype=float).ravel()
    c = np.asarray(c, dtype=complex).ravel()
    if omega.size != c.size:
        raise ValueError(f"{omega.size} frequencies but {c.size} coefficients")
    return x, omega, c


def nudft_direct(x, omega, c, method="compensated", block=256, scale=1):
    """Naive ``f_j = sum_k c_k exp(-2 pi i x_j omega_k / scale)``.

    Parameters
    ----------
    x : (M,) float
        Samples (any reals).
    omega : (N,) float
        Frequencies.
    c : (N,) complex
        Coefficients.
    method : {"compensated", "fsum"}
        ``"compensated"`` accumulates over k with TwoSum, a block of rows at a
        time.  ``"fsum"`` is an independently coded row-by-row path using
        correctly rounded ``math.fsum``; slower, used to cross-check.
    scale : int
        Positive integer divisor of the phase.  ``x = arange(N), scale = N``
        evaluates at the exact points ``j/N``, which ``arange(N)/N`` would
        round.
    """
    scale = int(scale)
    if scale < 1:
        raise ValueError(f"scale must be a positive integer, got {scale}")
    x, omega, c = _check_lengths(x, omega, c)
    out = np.empty(x.size, dtype=complex)
    if method == "fsum":
        for j, xj in enumerate(x):
            terms = c * _kernel(_reduced_phase([xj], omega, scale)[0])
            out[j] = complex(math.fsum(terms.real), math.fsum(terms.imag))
        return out
    if method != "compensated":
        raise ValueError(f"unknown method {method!r}")
    for lo in range(0, x.size, block):
        terms = _kernel(_reduced_phase(x[lo:lo + block], omega, scale)) * c
        out[lo:lo + block] = _compensated_sum(terms.real) + 1j * _compensated_sum(terms.imag)
    return out


def nudft2d_direct(samples, C, method="compensated"):
    """Naive 2D type-II sum ``f_j = sum_{k1,k2} C[k1,k2] exp(-2 pi i (k1 x_j + k2 y_j))``.

    `samples` is (N, 2) with columns ``x`` (paired with rows of `C`) and ``y``
    (paired with columns).  ``method="compensated"`` sums in column-major
    order of `C`; ``"fsum"`` sums row-major with ``math.fsum``.
    """
    samples = np.asarray(samples, dtype=float)
    C = np.asarray(C, dtype=complex)
    if samples.ndim != 2 or samples.shape[1] != 2:
        raise ValueError(f"samples must have shape (N, 2), got {samples.shape}")
    if C.ndim != 2 or C.size == 0:
        raise ValueError(f"C must be a non-empty matrix, got shape {C.shape}")
    m, n = C.shape
    x, y = samples[:, 0], samples[:, 1]
    px = _reduced_phase(x, np.arange(m))  # (N, m)
    py = _reduced_phase(y, np.arange(n))  # (N, n)
    out = np.empty(x.size, dtype=complex)
    if method == "fsum":
        for j in range(x.size):
            terms = (C * _kernel(px[j][:, None] + py[j][None, :])).ravel(order="C")
            out[j] = complex(math.fsum(terms.real), math.fsum(terms.imag))
        return out
    if method != "compensated":
        raise ValueError(f"unknown method {method!r}")
    terms = _kernel(px[:, :, None] + py[:, None, :]) * C[None]
    terms = terms.transpose(0, 2, 1).reshape(x.size, m * n)
    return _compensated_sum(terms.real) + 1j * _compensated_sum(terms.imag)


def worst_grid(N, gamma):
    """Perturbed grid with every sample exactly `gamma`/N from its node.

    ``x_j = (j + gamma)/N`` for ``j <= N // 2``, else ``(j - gamma)/N``,
    reduced into [0, 1).
    """
    N = int(N)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if not 0.0 <= gamma <= 0.5:
        raise ValueError(f"gamma must lie in [0, 1/2], got {gamma!r}")
    j = np.arange(N, dtype=float)
    x = np.where(j <= N // 2, (j + gamma) / N, (j - gamma) / N)
    return x - np.floor(x)


def perturbed_grid(N, gamma, rng):
    """Random perturbed grid ``(j + gamma * u_j)/N`` with ``u_j`` uniform in [-1, 1].

    One offset is pinned to exactly `gamma` so the sample set has
    perturbation parameter `gamma`.  Reduced into [0, 1).
    """
    if not 0.0 <= gamma <= 0.5:
        raise ValueError(f"gamma must lie in [0, 1/2], got {gamma!r}")
    u = rng.uniform(-1.0, 1.0, int(N))
    u[rng.integers(int(N))] = 1.0
    x = (np.arange(int(N)) + gamma * u) / N
    return x - np.floor(x)


def dense_nudft_matrix(x, omega):
    """Dense ``exp(-2 pi i x_j omega_k)``; refuses sizes beyond 4096."""
    x = np.asarray(x, dtype=float).ravel()
    omega = np.asarray(omega, dtype=float).ravel()
    if max(x.size, omega.size) > DENSE_LIMIT:
        raise ValueError(f"dense matrices are limited to size {DENSE_LIMIT}")
    return _kernel(_reduced_phase(x, omega))


def dense_nudft2_matrix(x, N):
    """Dense type-II matrix ``exp(-2 pi i x_j k)``, ``k = 0..N-1``."""
    if int(N) > DENSE_LIMIT:
        raise ValueError(f"dense matrices are limited to size {DENSE_LIMIT}")
    return dense_nudft_matrix(x, np.arange(int(N)))

"""One-dimensional NUFFTs of types I, II and III.

Each sample is snapped to its nearest node ``s_j / N`` of the uniform grid,
and the remaining offset is absorbed into a low-rank correction, so the
transform becomes a handful of diagonally scaled FFTs:

    type II:  f = sum_r  u_r * (F (v_r * c))[t]
    type I:   f = sum_r  v_r * F scatter_t(u_r * c)        (transpose of II)
    type III: type-I core on the frequencies, wrapped in a type-II style
              correction on the samples.

Plans hold everything that does not depend on the coefficients and are
immutable, so they can be shared between threads.
"""

from dataclasses import dataclass, field

import numpy as np

from . import fft
from .approx import LowRankFactors, build_factors

__all__ = [
    "SampleSet",
    "Plan1",
    "Plan2",
    "Plan3",
    "normalize_samples",
    "grid_assign",
    "plan_nufft1",
    "plan_nufft2",
    "plan_nufft3",
    "exec_nufft1",
    "exec_nufft2",
    "exec_nufft2_adjoint",
    "exec_nufft3",
]

DEFAULT_EPS = 2.2e-16
_SPLIT = 134217729.0  # 2**27 + 1


def _two_prod(a, b):
    """Dekker's error-free product: ``a * b == hi + lo`` exactly."""
    hi = a * b
    ca = _SPLIT * a
    a_hi = ca - (ca - a)
    a_lo = a - a_hi
    cb = _SPLIT * b
    b_hi = cb - (cb - b)
    b_lo = b - b_hi
    lo = ((a_hi * b_hi - hi) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return hi, lo


def _frozen(a, order="C"):
    a = np.asarray(a, order=order)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SampleSet:
    """Samples in [0, 1) with their grid assignment on ``{0, 1/N, ..., 1}``.

    Attributes
    ----------
    x : (N,) float
        Normalized samples.
    n : int
        Grid size (also the transform size).
    gamma : float
        ``max_j |N x_j - s_j|``, in [0, 1/2].
    s : (N,) int
        Nearest node index, in ``{0, ..., N}``.
    t : (N,) int
        ``s mod N``; the row of the DFT each sample reads from.
    delta : (N,) float
        ``N x_j - s_j`` computed without cancellation error.
    """

    x: np.ndarray
    n: int
    gamma: float
    s: np.ndarray
    t: np.ndarray
    delta: np.ndarray = field(repr=False)


def normalize_samples(x_raw):
    """Reduce samples into [0, 1) using period-1 periodicity."""
    x = np.asarray(x_raw, dtype=float).ravel()
    if not np.all(np.isfinite(x)):
        raise ValueError("samples must be finite")
    y = x - np.floor(x)
    # x slightly below an integer can round up to exactly 1.0
    y[y >= 1.0] = 0.0
    return y


def _assign(hi, lo, n):
    """Round ``hi + lo`` half away from zero (inputs are >= 0)."""
    s = np.floor(hi)
    d = (hi - s) + lo
    up = d >= 0.5
    down = d < -0.5
    s = s + up - down
    delta = (hi - s) + lo
    # offsets below the representation error of x are treated as on-grid
    delta[np.abs(delta) <= 2 * np.finfo(float).eps * np.maximum(s, 1.0)] = 0.0
    s = s.astype(np.int64)
    t = np.mod(s, n)
    gamma = float(np.max(np.abs(delta))) if delta.size else 0.0
    return s, t, delta, min(gamma, 0.5)


def _sample_set(x, n):
    hi, lo = _two_prod(x, float(n))
    s, t, delta, gamma = _assign(hi, lo, n)
    return SampleSet(x=_frozen(x), n=n, gamma=gamma, s=_frozen(s), t=_frozen(t), delta=_frozen(delta))


def grid_assign(x, n):
    """Nearest-node assignment of normalized samples.

    Returns
    -------
    s : (N,) int
        ``round(n x)``, ties rounded away from zero, in ``{0, ..., n}``.
    t : (N,) int
        ``s mod n``.
    gamma : float
        ``max |n x - s|``.
    """
    x = np.asarray(x, dtype=float).ravel()
    if np.any((x < 0) | (x >= 1)):
        raise ValueError("samples must be normalized into [0, 1)")
    ss = _sample_set(x, int(n))
    return ss.s, ss.t, ss.gamma


@dataclass(frozen=True)
class Plan2:
    """Precomputed type-II transform ``f_j = sum_k c_k exp(-2 pi i x_j k)``."""

    samples: SampleSet
    epsilon: float
    factors: LowRankFactors

    @property
    def n(self):
        return self.samples.n

    @property
    def K(self):
        return self.factors.K

    @property
    def gamma(self):
        return self.samples.gamma


@dataclass(frozen=True)
class Plan1:
    """Precomputed type-I transform ``f_j = sum_k c_k exp(-2 pi i (j/N) omega_k)``."""

    freqs: np.ndarray
    inner: Plan2

    @property
    def n(self):
        return self.inner.n

    @property
    def K(self):
        return self.inner.K

    @property
    def gamma(self):
        return self.inner.gamma


@dataclass(frozen=True)
class Plan3:
    """Precomputed type-III transform ``f_j = sum_k c_k exp(-2 pi i x_j omega_k)``.

    ``U``/``V`` are the combined sample/frequency factors: the rank-K
    approximation of the offset matrix, doubled to 2K when some sample wraps
    from node N to node 0 (``b_trivial`` is False).
    """

    samples: SampleSet
    freqs: np.ndarray
    factors_a: LowRankFactors
    b_trivial: bool
    U: np.ndarray = field(repr=False)
    V: np.ndarray = field(repr=False)
    inner: Plan1 = field(repr=False)

    @property
    def n(self):
        return self.samples.n

    @property
    def K(self):
        return self.factors_a.K

    @property
    def rank(self):
        return self.U.shape[1]

    @property
    def gamma(self):
        return self.samples.gamma


def _check_eps(epsilon):
    epsilon = float(epsilon)
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    return epsilon


def _plan2_from_samples(samples, epsilon):
    n = samples.n
    factors = build_factors(samples.delta, samples.gamma, np.arange(n) / n, epsilon)
    factors = LowRankFactors(K=factors.K, U=_frozen(factors.U, "F"), V=_frozen(factors.V, "F"))
    return Plan2(samples=samples, epsilon=epsilon, factors=factors)


def plan_nufft2(x_raw, epsilon=DEFAULT_EPS):
    """Plan a type-II NUFFT on samples `x_raw` (any reals; reduced mod 1).

    The transform size N is the number of samples.
    """
    epsilon = _check_eps(epsilon)
    x = normalize_samples(x_raw)
    if x.size == 0:
        raise ValueError("need at least one sample")
    return _plan2_from_samples(_sample_set(x, x.size), epsilon)


def _freq_samples(omega, n):
    """Sample set for frequencies ``omega / n`` without dividing by n."""
    w = np.where(omega >= n, omega - n, omega)
    s, t, delta, gamma = _assign(w, np.zeros_like(w), n)
    x = normalize_samples(omega / n)
    return SampleSet(x=_frozen(x), n=n, gamma=gamma, s=_frozen(s), t=_frozen(t), delta=_frozen(delta))


def _check_freqs(omega, upper_closed):
    omega = np.asarray(omega, dtype=float).ravel()
    if omega.size == 0:
        raise ValueError("need at least one frequency")
    n = omega.size
    if not np.all(np.isfinite(omega)):
        raise ValueError("frequencies must be finite")
    bad = (omega < 0) | ((omega > n) if upper_closed else (omega >= n))
    if np.any(bad):
        rng = "[0, N]" if upper_closed else "[0, N)"
        raise ValueError(f"frequencies must lie in {rng} with N={n}")
    return omega


def plan_nufft1(omega, epsilon=DEFAULT_EPS):
    """Plan a type-I NUFFT with frequencies `omega` in [0, N]."""
    epsilon = _check_eps(epsilon)
    omega = _check_freqs(omega, upper_closed=True)
    inner = _plan2_from_samples(_freq_samples(omega, omega.size), epsilon)
    return Plan1(freqs=_frozen(omega), inner=inner)


def plan_nufft3(x_raw, omega, epsilon=DEFAULT_EPS):
    """Plan a type-III NUFFT: samples `x_raw` (reduced mod 1), frequencies in [0, N)."""
    epsilon = _check_eps(epsilon)
    omega = _check_freqs(omega, upper_closed=False)
    x = normalize_samples(x_raw)
    n = x.size
    if omega.size != n:
        raise ValueError(f"got {n} samples but {omega.size} frequencies")
    samples = _sample_set(x, n)
    fa = build_factors(samples.delta, samples.gamma, omega / n, epsilon)
    inner = plan_nufft1(omega, epsilon)
    wrapped = (samples.s != samples.t).astype(float)
    b_trivial = not wrapped.any()
    if b_trivial:
        U, V = fa.U, fa.V
    else:
        # B = (1 - b) 1^T + b exp(-2 pi i omega)^T, b = (s - t)/N in {0, 1}
        frac = omega - np.round(omega)
        e = np.exp(-2j * np.pi * frac)
        U = np.hstack([fa.U * (1 - wrapped)[:, None], fa.U * wrapped[:, None]])
        V = np.hstack([fa.V, fa.V * e[:, None]])
    return Plan3(
        samples=samples,
        freqs=_frozen(omega),
        factors_a=LowRankFactors(K=fa.K, U=_frozen(fa.U, "F"), V=_frozen(fa.V, "F")),
        b_trivial=b_trivial,
        U=_frozen(U, "F"),
        V=_frozen(V, "F"),
        inner=inner,
    )


def _check_vector(c, n):
    c = np.asarray(c)
    if c.shape != (n,):
        raise ValueError(f"expected a vector of length {n}, got shape {c.shape}")
    if not np.all(np.isfinite(c)):
        raise ValueError("input contains NaN or Inf")
    return c.astype(complex, copy=False)


def _scatter(z, t, n):
    """``out[t[j]] += z[j]``; duplicate targets add in index order."""
    re = np.bincount(t, weights=z.real, minlength=n)
    im = np.bincount(t, weights=z.imag, minlength=n)
    return re + 1j * im


# The exec paths loop over r with one length-N work buffer, so the working set
# stays O(N) rather than O(K N).  Terms are added in ascending r.


def _apply2(factors, t, c):
    Ut, Vt = factors.U.T, factors.V.T
    f = np.zeros(t.size, dtype=complex)
    buf = np.empty(c.size, dtype=complex)
    for r in range(Ut.shape[0]):
        np.multiply(Vt[r], c, out=buf)
        X = fft.fft_forward(buf)
        g = X[t]
        g *= Ut[r]
        f += g
    return f


def _apply1(factors, t, n, c):
    Ut, Vt = factors.U.T, factors.V.T
    f = np.zeros(n, dtype=complex)
    for r in range(Ut.shape[0]):
        X = fft.fft_transpose(_scatter(Ut[r] * c, t, n))
        X *= Vt[r]
        f += X
    return f


def exec_nufft2(plan, c):
    """Apply a type-II plan: ``f_j ~ sum_k c_k exp(-2 pi i x_j k)``.

    Error contract: ``||f - f_exact||_2 <= N * eps * ||c||_2``.
    """
    c = _check_vector(c, plan.n)
    return _apply2(plan.factors, plan.samples.t, c)


def exec_nufft2_adjoint(plan, f):
    """Apply the conjugate transpose of a type-II plan."""
    f = _check_vector(f, plan.n)
    Ut, Vt, t, n = plan.factors.U.T, plan.factors.V.T, plan.samples.t, plan.n
    c = np.zeros(n, dtype=complex)
    for r in range(Ut.shape[0]):
        Y = fft.fft_inverse(_scatter(Ut[r].conj() * f, t, n))
        Y *= n * Vt[r].conj()
        c += Y
    return c


def exec_nufft1(plan, c):
    """Apply a type-I plan: ``f_j ~ sum_k c_k exp(-2 pi i (j/N) omega_k)``."""
    c = _check_vector(c, plan.n)
    inner = plan.inner
    return _apply1(inner.factors, inner.samples.t, inner.n, c)


def exec_nufft3(plan, c):
    """Apply a type-III plan: ``f_j ~ sum_k c_k exp(-2 pi i x_j omega_k)``."""
    c = _check_vector(c, plan.n)
    inner = plan.inner.inner
    Ut, Vt, t = plan.U.T, plan.V.T, plan.samples.t
    f = np.zeros(plan.n, dtype=complex)
    for r in range(Ut.shape[0]):
        g = _apply1(inner.factors, inner.samples.t, inner.n, Vt[r] * c)[t]
        g *= Ut[r]
        f += g
    return f

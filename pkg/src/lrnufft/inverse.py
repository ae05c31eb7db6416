"""Inverse NUFFTs by conjugate gradients on Toeplitz normal equations.

For type II, ``F2^* F2`` has entries ``sum_p exp(2 pi i x_p (j - k))``, which
depend only on ``j - k``.  Its first column is one forward and one adjoint
NUFFT of ``e_0``; after that every CG step is one FFT and one inverse FFT of
size 2N through a circulant embedding.  Type I is the same with the Gram
matrix ``F1 F1^*`` on the other side.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import fft
from .transforms import Plan1, Plan2, exec_nufft1, exec_nufft2, exec_nufft2_adjoint

__all__ = [
    "ToeplitzOperator",
    "CgReport",
    "CGNotConverged",
    "toeplitz_from_column",
    "toeplitz_from_normal",
    "toeplitz_matvec",
    "cg_solve",
    "inufft1",
    "inufft2",
]

DEFAULT_TOL = 1e-14


@dataclass(frozen=True)
class ToeplitzOperator:
    """Hermitian Toeplitz matrix stored as its circulant-embedding spectrum."""

    n: int
    spectrum: np.ndarray = field(repr=False)
    first_column: np.ndarray = field(repr=False)

    def dense(self):
        """Dense N-by-N matrix (for tests and diagnostics)."""
        col = self.first_column
        idx = np.arange(self.n)
        d = idx[:, None] - idx[None, :]
        return np.where(d >= 0, col[np.abs(d)], col[np.abs(d)].conj())

    def __matmul__(self, v):
        return toeplitz_matvec(self, v)


@dataclass
class CgReport:
    solution: np.ndarray
    iterations: int
    relative_residual: float
    converged: bool = True
    residuals: list = field(default_factory=list, repr=False)


class CGNotConverged(RuntimeError):
    """CG hit its iteration cap; ``report`` holds the last iterate."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"CG did not converge in {report.iterations} iterations "
            f"(relative residual {report.relative_residual:.3e})"
        )


def toeplitz_from_column(first_column):
    """Hermitian Toeplitz operator with the given first column.

    ``first_column[0]`` is taken as real; the first row is the conjugate of the
    first column.  The length-2N embedding is
    ``(c_0, ..., c_{N-1}, 0, conj(c_{N-1}), ..., conj(c_1))``.
    """
    col = np.array(first_column, dtype=complex).ravel()
    if col.size == 0:
        raise ValueError("first column must be non-empty")
    col[0] = col[0].real
    n = col.size
    embed = np.concatenate([col, [0.0], col[:0:-1].conj()])
    # the embedding is Hermitian, so its eigenvalues are real up to roundoff
    spectrum = fft.fft_forward(embed).real.copy()
    spectrum.flags.writeable = False
    col.flags.writeable = False
    return ToeplitzOperator(n=n, spectrum=spectrum, first_column=col)


def toeplitz_from_normal(plan):
    """Normal-equation operator ``F2^* F2`` for a type-II plan."""
    e0 = np.zeros(plan.n, dtype=complex)
    e0[0] = 1.0
    return toeplitz_from_column(exec_nufft2_adjoint(plan, exec_nufft2(plan, e0)))


def toeplitz_matvec(T, v):
    """``T @ v`` in O(N log N) by circulant embedding."""
    v = np.asarray(v)
    if v.shape != (T.n,):
        raise ValueError(f"expected a vector of length {T.n}, got shape {v.shape}")
    padded = np.zeros(2 * T.n, dtype=complex)
    padded[: T.n] = v
    return fft.fft_inverse(T.spectrum * fft.fft_forward(padded))[: T.n]


def _default_max_iter(n):
    return max(100, int(math.ceil(4 * math.sqrt(n))))


def cg_solve(apply, rhs, tol=DEFAULT_TOL, max_iter=None):
    """Conjugate gradients for a Hermitian positive (semi)definite operator.

    Stops when ``||r_k|| <= tol * ||rhs||`` using the recursively updated
    residual.  Raises :class:`CGNotConverged` after `max_iter` iterations.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    b = np.asarray(rhs, dtype=complex).ravel()
    if max_iter is None:
        max_iter = _default_max_iter(b.size)
    x = np.zeros_like(b)
    bnorm = np.linalg.norm(b)
    if bnorm == 0:
        return CgReport(solution=x, iterations=0, relative_residual=0.0, residuals=[0.0])
    r = b.copy()
    p = r.copy()
    rr = np.vdot(r, r).real
    history = [1.0]
    for k in range(1, max_iter + 1):
        Ap = apply(p)
        pAp = np.vdot(p, Ap).real
        if pAp <= 0:
            break
        alpha = rr / pAp
        x += alpha * p
        r -= alpha * Ap
        rr_new = np.vdot(r, r).real
        rel = math.sqrt(rr_new) / bnorm
        history.append(rel)
        if rel <= tol:
            return CgReport(solution=x, iterations=k, relative_residual=rel, residuals=history)
        p = r + (rr_new / rr) * p
        rr = rr_new
    report = CgReport(
        solution=x, iterations=len(history) - 1, relative_residual=history[-1],
        converged=False, residuals=history,
    )
    raise CGNotConverged(report)


def _check_invertible(gamma):
    if gamma >= 0.5:
        raise ValueError(
            "inverse transforms need gamma < 1/2; with gamma = 1/2 samples may coincide"
        )


def inufft2(plan, f, tol=DEFAULT_TOL, max_iter=None):
    """Solve ``F2 c = f`` for a type-II plan.

    Runs CG on ``F2^* F2 c = F2^* f`` with a fast Toeplitz multiply.
    Returns a :class:`CgReport` whose ``solution`` is ``c``.
    """
    if not isinstance(plan, Plan2):
        raise TypeError("inufft2 needs a Plan2")
    _check_invertible(plan.gamma)
    T = toeplitz_from_normal(plan)
    rhs = exec_nufft2_adjoint(plan, f)
    return cg_solve(T.__matmul__, rhs, tol=tol, max_iter=max_iter)


def _exec1_adjoint(plan, y):
    # F1 = F2.T on the same plan, so F1^* y = conj(F2 conj(y))
    return exec_nufft2(plan.inner, np.conj(y)).conj()


def inufft1(plan, f, tol=DEFAULT_TOL, max_iter=None):
    """Solve ``F1 c = f`` for a type-I plan.

    Solves ``(F1 F1^*) y = f`` by CG, then ``c = F1^* y``.
    """
    if not isinstance(plan, Plan1):
        raise TypeError("inufft1 needs a Plan1")
    _check_invertible(plan.gamma)
    f = np.asarray(f, dtype=complex)
    if f.shape != (plan.n,):
        raise ValueError(f"expected a vector of length {plan.n}, got shape {f.shape}")
    e0 = np.zeros(plan.n, dtype=complex)
    e0[0] = 1.0
    T = toeplitz_from_column(exec_nufft1(plan, _exec1_adjoint(plan, e0)))
    report = cg_solve(T.__matmul__, f, tol=tol, max_iter=max_iter)
    report.solution = _exec1_adjoint(plan, report.solution)
    return report

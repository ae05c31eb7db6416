"""Scalar special functions needed to build the low-rank factors.

Only the regimes that actually occur are supported: Bessel functions of integer
order at small arguments, and the principal branch of Lambert W on [0, inf).
"""

import math

__all__ = ["bessel_j_int", "lambert_w"]


def bessel_j_int(order, z):
    """Bessel function of the first kind J_n(z) for integer n.

    Ascending power series

        J_n(z) = sum_m (-1)^m (z/2)^(2m+n) / (m! (m+n)!)

    which converges in under 20 terms for |z| <= pi/4.  Negative orders use
    J_{-n}(z) = (-1)^n J_n(z).

    Parameters
    ----------
    order : int
    z : float
        Requires |z| <= 2.
    """
    n = int(order)
    if n != order:
        raise ValueError(f"order must be an integer, got {order!r}")
    if abs(z) > 2.0:
        raise ValueError(f"|z| must be <= 2, got {z!r}")
    if n < 0:
        return (-1) ** (-n) * bessel_j_int(-n, z)
    half = 0.5 * z
    if half == 0.0:
        return 1.0 if n == 0 else 0.0
    # (z/2)^n / n! built by repeated multiplication: no overflow for n <= 170
    term = 1.0
    for k in range(1, n + 1):
        term *= half / k
    if term == 0.0:
        return 0.0
    q = -half * half
    total = term
    m = 0
    while True:
        m += 1
        term *= q / (m * (m + n))
        total += term
        if abs(term) <= 1e-18 * abs(total):
            return total


def lambert_w(x, *, max_iter=50, rtol=1e-14):
    """Principal branch W(x) of the Lambert W function for x >= 0.

    Solves ``w * exp(w) = x`` by Halley iteration from ``log(1 + x)``.
    """
    x = float(x)
    if not x >= 0.0 or math.isinf(x):
        raise ValueError(f"lambert_w requires finite x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    if x > 1e200:
        # w e^w overflows near here; solve w + log(w) = log(x) instead
        lx = math.log(x)
        w = lx - math.log(lx)
        for _ in range(max_iter):
            step = (w + math.log(w) - lx) / (1.0 + 1.0 / w)
            w -= step
            if abs(step) <= 1e-16 * w:
                break
        return w
    w = math.log1p(x)
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        if abs(f) <= rtol * x:
            break
        wp1 = w + 1.0
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= 1e-16 * max(1.0, abs(w)):
            break
    return w

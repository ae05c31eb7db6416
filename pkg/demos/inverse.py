"""Recover coefficients from nonuniform samples with the inverse type II.

Each CG step costs two FFTs of size 2N through the Toeplitz normal matrix.
Run: python demos/inverse.py
"""

import numpy as np

from lrnufft import exec_nufft2, inufft2, perturbed_grid, plan_nufft2

rng = np.random.default_rng(2)
N = 4096
c = rng.standard_normal(N) + 1j * rng.standard_normal(N)

print(f"{'gamma':>8} {'CG its':>6} {'rel error':>10}")
for gamma in (0.0, 1 / 32, 1 / 8, 7 / 16):
    plan = plan_nufft2(perturbed_grid(N, gamma, rng))
    report = inufft2(plan, exec_nufft2(plan, c), tol=1e-12)
    err = np.linalg.norm(report.solution - c) / np.linalg.norm(c)
    print(f"{gamma:8.4g} {report.iterations:6d} {err:10.2e}")

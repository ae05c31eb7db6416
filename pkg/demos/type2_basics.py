"""Type-II NUFFT on a perturbed grid, checked against the direct sum.

Run: python demos/type2_basics.py
"""

import numpy as np

from lrnufft import exec_nufft2, nudft_direct, plan_nufft2, worst_grid

rng = np.random.default_rng(0)
N = 1024
c = rng.standard_normal(N) + 1j * rng.standard_normal(N)

print(f"{'gamma':>8} {'eps':>9} {'K':>3} {'rel error':>10} {'N eps':>10}")
for gamma in (0.0, 1 / 32, 1 / 8, 1 / 2):
    x = worst_grid(N, gamma)
    exact = nudft_direct(x, np.arange(N), c)
    for eps in (2.2e-16, 1.2e-7, 9.8e-4):
        # planning depends only on x; the plan can be reused for many c
        plan = plan_nufft2(x, eps)
        err = np.linalg.norm(exec_nufft2(plan, c) - exact) / np.linalg.norm(c)
        print(f"{gamma:8.4g} {eps:9.2g} {plan.K:3d} {err:10.2e} {N * eps:10.2e}")

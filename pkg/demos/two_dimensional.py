"""2D type-II transform of an m-by-n matrix at scattered points.

Run: python demos/two_dimensional.py
"""

import numpy as np

from lrnufft import exec_nufft2d2, nudft2d_direct, plan_nufft2d2

rng = np.random.default_rng(3)
m, n, N = 48, 32, 2000
C = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
# x pairs with the rows of C, y with the columns
pts = rng.uniform(0, 1, (N, 2))

plan = plan_nufft2d2(pts, m, n)
got = exec_nufft2d2(plan, C)
exact = nudft2d_direct(pts, C)
err = np.linalg.norm(got - exact) / np.linalg.norm(C)
print(f"K1={plan.K1} K2={plan.K2} rel error {err:.2e}")

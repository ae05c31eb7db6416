"""Type-I (nonuniform frequencies) and type-III (both nonuniform) transforms.

Run: python demos/types1_and_3.py
"""

import numpy as np

from lrnufft import exec_nufft1, exec_nufft3, nudft_direct, plan_nufft1, plan_nufft3

rng = np.random.default_rng(1)
N = 512
c = rng.standard_normal(N) + 1j * rng.standard_normal(N)

# type I: uniform samples j/N, frequencies anywhere in [0, N]
omega = np.clip(np.arange(N) + rng.uniform(-0.3, 0.3, N), 0, N)
plan1 = plan_nufft1(omega)
exact = nudft_direct(np.arange(N), omega, c, scale=N)
err = np.linalg.norm(exec_nufft1(plan1, c) - exact) / np.linalg.norm(c)
print(f"type I   K={plan1.K:2d} gamma={plan1.gamma:.3f} rel error {err:.2e}")

# type III: samples in [0, 1) and frequencies in [0, N)
x = rng.uniform(0, 1, N)
w = rng.uniform(0, N, N)
plan3 = plan_nufft3(x, w)
exact = nudft_direct(x, w, c)
err = np.linalg.norm(exec_nufft3(plan3, c) - exact) / np.linalg.norm(c)
print(f"type III K={plan3.K:2d} executed rank {plan3.rank} rel error {err:.2e}")

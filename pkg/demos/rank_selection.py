"""How the number of FFTs K depends on the perturbation and the precision.

Run: python demos/rank_selection.py
"""

from lrnufft import select_rank

gammas = (0.0, 1 / 64, 1 / 32, 1 / 16, 1 / 8, 1 / 4, 1 / 2)
print("eps       " + "".join(f"{g:>8.4g}" for g in gammas))
for eps in (2.2e-16, 1e-12, 1e-9, 1.2e-7, 1e-5, 9.8e-4, 1e-2):
    print(f"{eps:<10.2g}" + "".join(f"{select_rank(g, eps):>8d}" for g in gammas))

"""Residual of Wilson's iteration per step on random spectra and the AR example pair.

    python scripts/wilson_convergence.py
"""
import argparse

import numpy as np

from specgeo.factorization import factorize_matrix
from specgeo.psd import FrequencyGrid, matrix_example_pair
from specgeo.sampling import random_ma_psd


def history(f, steps):
    out = []
    for k in range(1, steps + 1):
        _, rep = factorize_matrix(f, tol=0.0, max_iter=k)
        out.append(rep.residual)
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--steps", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    grid = FrequencyGrid(args.n)
    rng = np.random.default_rng(args.seed)
    named = [(f"random MA(2), m={m}", random_ma_psd(rng, grid, m, order=2)) for m in (1, 2, 4)]
    named.append(("matrix example f0", matrix_example_pair(grid)[0]))
    for name, f in named:
        res = history(f, args.steps)
        print(f"{name:>22s}: " + " ".join(f"{r:.1e}" for r in res))

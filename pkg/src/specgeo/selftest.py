"""Randomized property battery behind ``specgeo selftest --seed``."""
from __future__ import annotations

import numpy as np

from .divergences import d1, d2, d_frobenius, d_hellinger, d_itakura_saito, d_log_spectral
from .factorization import anticausal_energy_ratio, factorize_matrix, szego_kolmogorov_check
from .geometry import geodesic_distance, psd_geodesic
from .hermitian import logm, spd_distance
from .sampling import random_ma_psd, random_spd
from .psd import FrequencyGrid

MEASURES = (d1, d2, d_frobenius, d_hellinger, d_itakura_saito, d_log_spectral)


def _line(ok, name, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return ok


def run(seed, trials=20, n_points=256):
    rng = np.random.default_rng(seed)
    grid = FrequencyGrid(n_points)
    results = []

    worst = 0.0
    for _ in range(trials):
        f = random_ma_psd(rng, grid, m=int(rng.choice([1, 2, 4])))
        sf, rep = factorize_matrix(f)
        worst = max(worst, rep.residual, anticausal_energy_ratio(sf), 1e-2 * szego_kolmogorov_check(f, sf.omega))
        if not rep.converged:
            worst = np.inf
    results.append(_line(worst <= 1e-8, "factorization", f"worst residual/outerness {worst:.2e}"))

    low = np.inf
    for _ in range(trials):
        m = int(rng.choice([1, 2]))
        fa, fb = random_ma_psd(rng, grid, m), random_ma_psd(rng, grid, m)
        low = min(low, *(fn(fa, fb).value for fn in MEASURES))
    results.append(_line(low >= -1e-10, "divergence nonnegativity", f"smallest value {low:.3e}"))

    gap = 0.0
    for _ in range(trials):
        fa, fb = random_ma_psd(rng, grid, 2), random_ma_psd(rng, grid, 2)
        d = geodesic_distance(fa, fb)
        for tau in (0.25, 0.5, 0.75):
            gap = max(gap, abs(geodesic_distance(fa, psd_geodesic(fa, fb, tau)) - tau * d) / d)
    results.append(_line(gap <= 1e-8, "geodesic proportionality", f"worst relative gap {gap:.2e}"))

    slack = np.inf
    for _ in range(trials * 10):
        A, B, C = (random_spd(rng, 3) for _ in range(3))
        slack = min(slack, spd_distance(A, B) + spd_distance(B, C) - spd_distance(A, C))
        emi = spd_distance(A, B) - np.linalg.norm(logm(A) - logm(B))
        slack = min(slack, emi)
    results.append(_line(slack >= -1e-9, "SPD triangle / exponential-metric-increasing", f"min slack {slack:.2e}"))
    return all(results)

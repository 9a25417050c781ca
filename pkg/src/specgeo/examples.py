"""The two worked interpolation examples: a pair of AR spectra and a 2x2 pair.

The scalar example compares three paths between ``f0`` and ``f1``: AR
coefficient interpolation, the straight line, and the g1-geodesic
``f0 (f1/f0)^tau``. The matrix example samples the geodesic surface.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import psd_geodesic
from .psd import (
    FrequencyGrid,
    Inadmissible,
    ar_coefficient_path,
    ar_path_psd,
    ar_stability,
    example_ar_polynomials,
    linear_psd_path,
    matrix_example_pair,
    polynomial_roots,
    scalar_example_pair,
)

EXAMPLE_TAUS = (0.0, 1 / 3, 2 / 3, 1.0, 4 / 3)
PATHS = ("ar", "linear", "geodesic")


@dataclass
class ScalarExample:
    f0: object
    f1: object
    taus: tuple
    # samples[path][i] is a MatrixPsd or an Inadmissible for taus[i]
    samples: dict = field(default_factory=dict)

    def inadmissible(self):
        """``(path, tau)`` pairs that left the admissible set."""
        return [
            (path, tau)
            for path in PATHS
            for tau, s in zip(self.taus, self.samples[path])
            if isinstance(s, Inadmissible)
        ]

    def report(self):
        rows = []
        for path in PATHS:
            for tau, s in zip(self.taus, self.samples[path]):
                entry = {"path": path, "tau": tau, "admissible": not isinstance(s, Inadmissible)}
                if isinstance(s, Inadmissible):
                    entry["reason"] = s.reason
                    if s.max_root_modulus is not None:
                        entry["max_root_modulus"] = s.max_root_modulus
                    if s.theta.size:
                        entry["negative_frequencies"] = int(s.theta.size)
                        entry["theta_range"] = [float(s.theta.min()), float(s.theta.max())]
                        entry["min_value"] = float(s.min_eigenvalue.min())
                elif path == "ar":
                    a = ar_coefficient_path(*example_ar_polynomials(), tau)
                    entry["max_root_modulus"] = ar_stability(a)
                rows.append(entry)
        return rows


def scalar_example(grid=None, taus=EXAMPLE_TAUS):
    grid = grid or FrequencyGrid()
    a0, a1 = example_ar_polynomials()
    f0, f1 = scalar_example_pair(grid)
    ex = ScalarExample(f0, f1, tuple(taus))
    ex.samples["ar"] = [ar_path_psd(a0, a1, t, grid) for t in taus]
    ex.samples["linear"] = [linear_psd_path(f0, f1, t) for t in taus]
    ex.samples["geodesic"] = [psd_geodesic(f0, f1, t) for t in taus]
    return ex


def log_spectrum_rows(ex, path):
    """Rows ``(tau, theta, log|f|, admissible)``; inadmissible AR samples are omitted.

    For a linear sample that turns negative the log of the absolute value is
    given with ``admissible = 0`` at the offending frequencies.
    """
    theta = ex.f0.grid.theta
    rows = []
    for tau, s in zip(ex.taus, ex.samples[path]):
        if isinstance(s, Inadmissible):
            if path != "linear":
                continue
            vals = (1 - tau) * ex.f0.values[:, 0, 0].real + tau * ex.f1.values[:, 0, 0].real
        else:
            vals = s.values[:, 0, 0].real
        for th, v in zip(theta, vals):
            rows.append((tau, th, float(np.log(abs(v))), int(v > 0)))
    return rows


def root_locus_rows(n_tau=101):
    """Rows ``(tau, index, re, im, modulus)`` for the roots of ``a_tau`` over ``[0, 1]``."""
    a0, a1 = example_ar_polynomials()
    rows = []
    for tau in np.linspace(0.0, 1.0, n_tau):
        roots = polynomial_roots(ar_coefficient_path(a0, a1, tau))
        roots = roots[np.lexsort((roots.imag, roots.real))]
        for i, r in enumerate(roots):
            rows.append((float(tau), i, r.real, r.imag, abs(r)))
    return rows


def matrix_example(grid=None):
    return matrix_example_pair(grid or FrequencyGrid())


ENTRY_IDS = ("11", "12", "21", "22")


def surface_values(f):
    """Per-entry channels: log-magnitude for (1,1), (1,2), (2,2); phase of (2,1) in (-pi, pi]."""
    v = f.values
    phase = np.angle(v[:, 1, 0])
    phase = np.where(phase <= -np.pi, np.pi, phase)
    return {
        "11": np.log(np.abs(v[:, 0, 0])),
        "12": np.log(np.abs(v[:, 0, 1])),
        "21": phase,
        "22": np.log(np.abs(v[:, 1, 1])),
    }


def geodesic_surface_rows(f0, f1, taus):
    """Rows ``(tau, theta, entry, value)`` over the geodesic from ``f0`` to ``f1``."""
    theta = f0.grid.theta
    rows = []
    for tau in taus:
        ch = surface_values(psd_geodesic(f0, f1, tau))
        for eid in ENTRY_IDS:
            rows.extend((float(tau), th, eid, float(v)) for th, v in zip(theta, ch[eid]))
    return rows

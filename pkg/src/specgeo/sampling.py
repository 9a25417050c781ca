"""Random test objects: SPD matrices and smooth moving-average spectra."""
from __future__ import annotations

import numpy as np

from .psd import ma_psd


def random_spd(rng, m, cond=10.0):
    """Random complex SPD matrix with eigenvalues log-uniform in ``[1, cond]``."""
    Z = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    Q, _ = np.linalg.qr(Z)
    lam = np.exp(rng.uniform(0.0, np.log(cond), m))
    return (Q * lam) @ Q.conj().T


def random_outer_coeffs(rng, m, order=2, radius=0.9):
    """Coefficients ``I, C_1, ..., C_q`` of ``g(z) = I + C_1 z + ... + C_q z^q``.

    The block companion matrix of ``g`` is rescaled so its spectral radius is
    drawn from ``[0.3, radius)``; ``det g`` then has all zeros outside the disc
    and ``g`` is outer.
    """
    C = rng.standard_normal((order, m, m)) + 1j * rng.standard_normal((order, m, m))
    comp = np.zeros((order * m, order * m), dtype=complex)
    comp[:m, :] = -np.concatenate(list(C), axis=1)
    comp[m:, :-m] = np.eye((order - 1) * m)
    rho = np.max(np.abs(np.linalg.eigvals(comp)))
    target = rng.uniform(0.3, radius)
    # scaling C_t by s^t scales the companion eigenvalues by s
    s = target / rho
    C = C * (s ** np.arange(1, order + 1))[:, None, None]
    return np.concatenate([np.eye(m)[None], C])


def random_ma_psd(rng, grid, m, order=2, radius=0.9, noise=True):
    """``g S g^H`` with ``g`` from :func:`random_outer_coeffs` and random SPD ``S``."""
    S = random_spd(rng, m) if noise else None
    return ma_psd(random_outer_coeffs(rng, m, order, radius), grid, S, "random-ma")

"""Canonical left spectral factors, prediction-error variances and predictors.

Fourier coefficients are indexed circularly: entry ``t`` of a length-``N``
coefficient array is lag ``t`` for ``t < N/2`` and lag ``t - N`` for
``t > N/2``. Lag ``N/2`` is the Nyquist term.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .hermitian import (
    DomainError,
    as_spd,
    ctranspose,
    herm_eig,
    sqrtm,
    symmetrize,
)
from .psd import MatrixPsd, integrate_matrix, integrate_scalar

__all__ = [
    "SpectralFactor",
    "FactorizationReport",
    "FactorizationError",
    "CepstrumDecayWarning",
    "to_lags",
    "from_lags",
    "factorize_scalar",
    "factorize_matrix",
    "factorize",
    "prediction_error_variance",
    "szego_kolmogorov_check",
    "optimal_predictor",
    "cross_error_variance",
    "innovation_spectrum",
    "anticausal_energy_ratio",
    "factorization_residual",
]

WILSON_TOL = 1e-10
WILSON_MAX_ITER = 200


class FactorizationError(RuntimeError):
    """Spectral factorization did not converge."""


class CepstrumDecayWarning(UserWarning):
    """The cepstrum has not decayed by the Nyquist lag; the grid is too coarse."""


def to_lags(samples):
    """Fourier coefficients ``int s(theta) e^{-j t theta} dtheta/2pi`` along axis 0."""
    n = samples.shape[0]
    sign = (-1.0) ** np.arange(n)
    c = np.fft.fft(samples, axis=0) / n
    return c * sign.reshape((n,) + (1,) * (samples.ndim - 1))


def from_lags(coeffs):
    """Inverse of :func:`to_lags`: grid samples of ``sum_t c_t e^{j t theta}``."""
    n = coeffs.shape[0]
    sign = (-1.0) ** np.arange(n)
    return np.fft.ifft(coeffs * sign.reshape((n,) + (1,) * (coeffs.ndim - 1)), axis=0) * n


@dataclass(frozen=True)
class FactorizationReport:
    iterations: int
    residual: float
    converged: bool


@dataclass(frozen=True)
class SpectralFactor:
    """Samples of the canonical left factor ``f_+`` with ``f = f_+ f_+^H``.

    ``causal_coeffs[t]`` are the circular Fourier coefficients of
    ``factor_values``; ``causal_coeffs[0] = f_+(0) = omega^{1/2}``.
    """

    grid: object
    factor_values: np.ndarray
    causal_coeffs: np.ndarray
    omega: np.ndarray

    @property
    def m(self):
        return self.factor_values.shape[-1]

    @property
    def lag0(self):
        return self.causal_coeffs[0]

    def inverse_values(self):
        return np.linalg.inv(self.factor_values)


def factorization_residual(factor_values, f_values):
    """``max_k ||psi psi^H - f||_F / ||f||_F``."""
    prod = factor_values @ ctranspose(factor_values)
    num = np.linalg.norm(prod - f_values, axis=(-2, -1))
    den = np.linalg.norm(f_values, axis=(-2, -1))
    return float(np.max(num / den))


def anticausal_energy_ratio(sf):
    """Energy of the factor's upper-half (negative) lags over its total energy."""
    c = sf.causal_coeffs
    n = c.shape[0]
    energy = np.sum(np.abs(c) ** 2, axis=(-2, -1))
    return float(energy[n // 2 + 1 :].sum() / energy.sum())


def factorize_scalar(f):
    """Outer factor of a scalar spectrum by the cepstral (Herglotz) construction.

    ``f_+ = exp(c_0/2 + sum_{0<t<N/2} c_t z^t + c_{N/2}/2 z^{N/2})`` with ``c``
    the Fourier coefficients of ``log f``. Half the Nyquist term is kept so
    that ``|f_+|^2 = f`` holds exactly on the grid.
    """
    if f.m != 1:
        raise ValueError("factorize_scalar needs a scalar spectrum (m = 1)")
    logf = np.log(f.values[:, 0, 0].real)
    n = f.n_points
    c = to_lags(logf)
    h = n // 2
    if abs(c[1]) > 0 and abs(c[h - 1]) / abs(c[1]) > 1e-6:
        warnings.warn(
            f"cepstrum decays slowly (|c_{h - 1}|/|c_1| = {abs(c[h - 1]) / abs(c[1]):.2e}); "
            "refine the grid for an accurate factor",
            CepstrumDecayWarning,
            stacklevel=2,
        )
    half = np.zeros(n, dtype=complex)
    half[0] = c[0].real / 2
    half[1:h] = c[1:h]
    half[h] = c[h].real / 2
    psi = np.exp(from_lags(half))[:, None, None]
    coeffs = to_lags(psi)
    lag0 = np.exp(c[0].real / 2)
    coeffs[0] = lag0
    return SpectralFactor(f.grid, psi, coeffs, np.array([[lag0**2]], dtype=complex))


def _plus(g):
    """Causal projection: lags 0 and N/2 halved, lags 1..N/2-1 kept, negative lags dropped.

    Halving the Nyquist lag splits it evenly between ``P_+ g`` and its adjoint;
    keeping it whole makes that coefficient flip sign at every step instead of
    converging.
    """
    n = g.shape[0]
    beta = to_lags(g)
    beta[0] *= 0.5
    beta[n // 2] *= 0.5
    beta[n // 2 + 1 :] = 0
    return from_lags(beta)


def _polar_unitary(A):
    """Unitary factor ``U`` of the polar decomposition ``A = P U``."""
    W, _, Vh = np.linalg.svd(A)
    return W @ Vh


def factorize_matrix(f, tol=WILSON_TOL, max_iter=WILSON_MAX_ITER):
    """Canonical left spectral factor by Wilson's Newton iteration.

    Parameters
    ----------
    f : MatrixPsd
        Positive definite on the grid.
    tol : float
        Target for the largest pointwise relative residual
        ``||psi psi^H - f||_F / ||f||_F``.
    max_iter : int
        Iteration cap.

    Returns
    -------
    SpectralFactor, FactorizationReport
        The report carries ``converged=False`` when the cap is hit; callers
        must check it.

    Notes
    -----
    Starting from the constant ``psi_0 = (int f dtheta/2pi)^{1/2}``, each step
    is ``psi <- psi P_+(psi^{-1} f psi^{-H} + I)``. Once ``tol`` is met one
    further step is taken and kept if it lowers the residual. The result is finally
    right-multiplied by a constant unitary so its lag-0 coefficient is
    Hermitian positive definite.
    """
    F = f.values
    n, m = F.shape[0], f.m
    eye = np.eye(m)
    psi = np.broadcast_to(sqrtm(integrate_matrix(f.grid, F)), F.shape).copy()
    residual = factorization_residual(psi, F)
    iterations = 0

    def step(psi):
        psi_inv = np.linalg.inv(psi)
        g = psi_inv @ F @ ctranspose(psi_inv)
        new = psi @ _plus(g + eye)
        return new, factorization_residual(new, F)

    while iterations < max_iter:
        iterations += 1
        psi, residual = step(psi)
        if residual <= tol:
            break
    converged = residual <= tol
    if converged:
        # convergence is quadratic, so one more step usually lands at roundoff;
        # downstream log-det differences of nearby spectra need that accuracy
        polished, res2 = step(psi)
        if res2 < residual:
            psi, residual = polished, res2
            iterations += 1

    coeffs = to_lags(psi)
    U = _polar_unitary(coeffs[0])
    psi = psi @ ctranspose(U)
    coeffs = coeffs @ ctranspose(U)
    lag0 = symmetrize(coeffs[0])
    lam, _ = herm_eig(lag0)
    if lam[0] <= 0:
        raise DomainError(f"factor at lag 0 is singular (eigenvalue {lam[0]:.3g})")
    coeffs[0] = lag0
    omega = symmetrize(lag0 @ lag0)
    sf = SpectralFactor(f.grid, psi, coeffs, omega)
    return sf, FactorizationReport(iterations, residual, converged)


def factorize(f, method="auto", tol=WILSON_TOL, max_iter=WILSON_MAX_ITER):
    """Canonical factor of ``f``, raising :class:`FactorizationError` on non-convergence.

    ``method="auto"`` uses the cepstral construction for scalar spectra (its
    ``Omega`` satisfies the Szego-Kolmogorov identity exactly) and Wilson's
    iteration otherwise.
    """
    if method == "auto":
        method = "cepstral" if f.m == 1 else "wilson"
    if method == "cepstral":
        return factorize_scalar(f)
    if method != "wilson":
        raise ValueError(f"unknown factorization method {method!r}")
    sf, report = factorize_matrix(f, tol, max_iter)
    if not report.converged:
        raise FactorizationError(
            f"Wilson iteration stopped after {report.iterations} iterations "
            f"with residual {report.residual:.3g}"
        )
    return sf


def prediction_error_variance(sf):
    """``Omega = f_+(0) f_+(0)^H``."""
    return symmetrize(sf.lag0 @ ctranspose(sf.lag0))


def szego_kolmogorov_check(f, omega):
    """Relative gap between ``det Omega`` and ``exp(int log det f dtheta/2pi)``."""
    _, logdet = np.linalg.slogdet(f.values)
    target = np.exp(integrate_scalar(f.grid, logdet))
    det_omega = np.linalg.det(as_spd(omega)).real
    return float(abs(det_omega - target) / target)


def optimal_predictor(sf):
    """Samples of ``p(e^{j theta}) = f_+(0) f_+(e^{j theta})^{-1}``."""
    try:
        inv = np.linalg.inv(sf.factor_values)
    except np.linalg.LinAlgError as exc:
        raise DomainError("spectral factor is singular at a grid point") from exc
    return sf.lag0 @ inv


def _check_pair(f_i, sf_j):
    if f_i.grid != sf_j.grid or f_i.m != sf_j.m:
        from .psd import GridMismatchError

        raise GridMismatchError("spectrum and factor live on different grids or dimensions")


def cross_error_variance(f_i, sf_j):
    """``Omega_{i,j} = int p_j f_i p_j^H dtheta/2pi``: error variance of ``p_j`` on ``f_i``."""
    _check_pair(f_i, sf_j)
    p = optimal_predictor(sf_j)
    return integrate_matrix(f_i.grid, p @ f_i.values @ ctranspose(p))


def innovation_spectrum(f_i, sf_j):
    """Spectrum ``f_{j+}^{-1} f_i f_{j+}^{-H}`` of the normalized innovations."""
    _check_pair(f_i, sf_j)
    try:
        inv = np.linalg.inv(sf_j.factor_values)
    except np.linalg.LinAlgError as exc:
        raise DomainError("spectral factor is singular at a grid point") from exc
    return MatrixPsd(f_i.grid, inv @ f_i.values @ ctranspose(inv), "innovations")


def ar_denominator(f, tol=1e-9):
    """Recover ``a`` with ``f = 1 / |a(e^{j theta})|^2`` for a scalar all-pole spectrum.

    The roots of ``a`` are placed inside the unit disc and its leading
    coefficient is real positive. The Fourier coefficients of ``1/f`` must
    vanish (relative to lag 0, below ``tol``) beyond some lag ``q < N/4``;
    otherwise ``f`` is not treated as all-pole and ``ValueError`` is raised.
    """
    from .psd import ComplexPolynomial

    if f.m != 1:
        raise ValueError("AR denominators are only recovered for scalar spectra")
    n = f.n_points
    r = to_lags(1.0 / f.values[:, 0, 0].real)
    r0 = abs(r[0])
    lags = np.arange(1, n // 2 + 1)
    big = lags[np.abs(r[lags]) > tol * r0]
    q = int(big.max()) if big.size else 0
    if q >= n // 4:
        raise ValueError(f"spectrum is not all-pole of order < {n // 4} on this grid")
    if q == 0:
        return ComplexPolynomial([np.sqrt(r[0].real)])
    # z^q * sum_{|t|<=q} r_t z^t, ascending powers
    sym = np.concatenate([r[n - q :], r[: q + 1]])
    roots = np.roots(sym[::-1])
    inside = roots[np.abs(roots) < 1.0]
    if inside.size != q or np.any(np.abs(np.abs(roots) - 1.0) < 1e-8):
        raise ValueError("AR denominator has roots on the unit circle")
    monic = ComplexPolynomial.from_roots(inside)
    gain = np.sqrt(r[0].real / np.mean(np.abs(monic(f.grid.z)) ** 2))
    return ComplexPolynomial(gain * monic.coefficients)

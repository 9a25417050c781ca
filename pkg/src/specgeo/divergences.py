"""Divergence measures between matrix-valued power spectra.

All measures except ``d2`` are pointwise in frequency. The Frobenius,
Hellinger, Itakura-Saito and log-spectral measures depend only on the
eigenvalues of ``f_j^{-1} f_i``, which is how they are computed by default;
``method="factor"`` evaluates them through the normalized innovations
spectrum ``f_{j+}^{-1} f_i f_{j+}^{-H}`` instead.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .factorization import (
    cross_error_variance,
    factorize,
    innovation_spectrum,
    prediction_error_variance,
)
from .hermitian import congruence_eigvals, invsqrtm, sqrtm
from .psd import integrate_matrix, integrate_scalar

__all__ = [
    "Measure",
    "DivergenceResult",
    "NumericalInconsistencyError",
    "d1",
    "d2",
    "d_frobenius",
    "d_hellinger",
    "d_itakura_saito",
    "d_log_spectral",
    "divergence",
]


class Measure(str, enum.Enum):
    D1 = "d1"
    D2 = "d2"
    FROBENIUS = "fro"
    HELLINGER = "hellinger"
    ITAKURA_SAITO = "is"
    LOG_SPECTRAL = "log"


class NumericalInconsistencyError(ArithmeticError):
    """Two algebraically equal evaluation routes disagree beyond tolerance."""


@dataclass(frozen=True)
class DivergenceResult:
    value: float
    measure: Measure
    details: np.ndarray | None = field(default=None, repr=False)

    def __float__(self):
        return self.value


# absolute slack for cross-checks: log-det sums of O(1) terms carry ~1e-13 roundoff
_ROUNDOFF = 1e-12


def _agree(a, b, rtol, what):
    if abs(a - b) > rtol * max(abs(a), abs(b)) + _ROUNDOFF:
        raise NumericalInconsistencyError(f"{what}: {a!r} vs {b!r}")


def _eigs(f_i, f_j, method):
    """Eigenvalues of ``f_j^{-1} f_i`` at each grid point, shape ``(N, m)``."""
    f_i.check_compatible(f_j)
    if method == "direct":
        return congruence_eigvals(f_j.values, f_i.values)
    if method == "factor":
        h = innovation_spectrum(f_i, factorize(f_j))
        return np.linalg.eigvalsh(h.values)
    raise ValueError(f"unknown method {method!r}")


def _trace_real(A):
    return np.trace(A, axis1=-2, axis2=-1).real


def d1(f1, f2):
    """``int tr(f2^{-1} f1 + f1^{-1} f2 - 2I) dtheta/2pi``.

    The value is summed as ``sum (lam - 1)^2 / lam`` over the eigenvalues of
    ``f2^{-1} f1``, which avoids the cancellation in ``- 2I`` when the spectra
    are close. The trace form and the square-root form
    ``||f1^{-1/2} f2^{1/2} - f1^{1/2} f2^{-1/2}||_F^2`` are evaluated alongside
    and must agree with it to 1e-9 relative.
    """
    f1.check_compatible(f2)
    F1, F2 = f1.values, f2.values
    m = f1.m
    lam = congruence_eigvals(F2, F1)
    integrand = np.sum((lam - 1) ** 2 / lam, axis=-1)
    value = float(integrate_scalar(f1.grid, integrand))

    trace_form = _trace_real(np.linalg.solve(F2, F1)) + _trace_real(np.linalg.solve(F1, F2)) - 2 * m
    _agree(value, float(integrate_scalar(f1.grid, trace_form)), 1e-9, "D1 trace form disagrees")
    r1, r2 = sqrtm(F1), sqrtm(F2)
    ir1, ir2 = invsqrtm(F1), invsqrtm(F2)
    diff = ir1 @ r2 - r1 @ ir2
    alt = float(integrate_scalar(f1.grid, np.sum(np.abs(diff) ** 2, axis=(-2, -1))))
    _agree(value, alt, 1e-9, "D1 square-root form disagrees")
    return DivergenceResult(value, Measure.D1, integrand)


def d2(f1, f2, check=True):
    """Log-det degradation of prediction variance when ``f2``'s predictor is used on ``f1``.

    ``log det(Omega_1^{-1/2} Omega_{1,2} Omega_1^{-1/2})``. With ``check`` the
    value is recomputed as ``log det int h - int log det h`` with ``h`` the
    innovations spectrum of ``f1`` against ``f2``'s factor (agreement 1e-7).
    Not symmetric in its arguments.

    Raises
    ------
    FactorizationError
        If either spectrum fails to factorize.
    """
    f1.check_compatible(f2)
    sf1 = factorize(f1)
    sf2 = factorize(f2)
    omega1 = prediction_error_variance(sf1)
    omega12 = cross_error_variance(f1, sf2)
    _, ld12 = np.linalg.slogdet(omega12)
    _, ld1 = np.linalg.slogdet(omega1)
    value = float(ld12 - ld1)

    h = innovation_spectrum(f1, sf2)
    _, ld_h = np.linalg.slogdet(h.values)
    _, ld_mean = np.linalg.slogdet(integrate_matrix(f1.grid, h.values))
    if check:
        alt = float(ld_mean - integrate_scalar(f1.grid, ld_h))
        _agree(value, alt, 1e-7, "D2 variance-ratio and log-det forms disagree (grid too coarse for the factorization?)")
    return DivergenceResult(value, Measure.D2, ld_h)


def d_frobenius(f1, f2, method="direct"):
    """``1/2 sum_{(i,j)} int ||f_j^{-1/2} f_i f_j^{-1/2} - I||_F^2`` over both orderings."""
    lam = _eigs(f1, f2, method)
    lam_rev = 1.0 / lam if method == "direct" else _eigs(f2, f1, method)
    integrand = 0.5 * (np.sum((lam - 1) ** 2, axis=-1) + np.sum((lam_rev - 1) ** 2, axis=-1))
    return DivergenceResult(float(integrate_scalar(f1.grid, integrand)), Measure.FROBENIUS, integrand)


def d_hellinger(f1, f2, method="direct"):
    """``sum_{(i,j)} int ||(f_j^{-1/2} f_i f_j^{-1/2})^{1/2} - I||_F^2`` over both orderings."""
    lam = _eigs(f1, f2, method)
    lam_rev = 1.0 / lam if method == "direct" else _eigs(f2, f1, method)
    integrand = np.sum((np.sqrt(lam) - 1) ** 2, axis=-1) + np.sum((np.sqrt(lam_rev) - 1) ** 2, axis=-1)
    return DivergenceResult(float(integrate_scalar(f1.grid, integrand)), Measure.HELLINGER, integrand)


def d_itakura_saito(f1, f2, method="direct"):
    """Multivariable Itakura-Saito divergence of ``f1`` from the reference ``f2``.

    ``int tr(f2^{-1} f1) - log det(f2^{-1} f1) - m``. Not symmetric.
    """
    lam = _eigs(f1, f2, method)
    integrand = np.sum(lam - np.log(lam) - 1, axis=-1)
    return DivergenceResult(float(integrate_scalar(f1.grid, integrand)), Measure.ITAKURA_SAITO, integrand)


def d_log_spectral(f1, f2, method="direct"):
    """Multivariable log-spectral deviation ``int ||log(f1^{-1/2} f2 f1^{-1/2})||_F^2``."""
    lam = _eigs(f2, f1, method)
    integrand = np.sum(np.log(lam) ** 2, axis=-1)
    return DivergenceResult(float(integrate_scalar(f1.grid, integrand)), Measure.LOG_SPECTRAL, integrand)


_DISPATCH = {
    Measure.D1: d1,
    Measure.D2: d2,
    Measure.FROBENIUS: d_frobenius,
    Measure.HELLINGER: d_hellinger,
    Measure.ITAKURA_SAITO: d_itakura_saito,
    Measure.LOG_SPECTRAL: d_log_spectral,
}


def divergence(measure, f1, f2):
    """Evaluate a measure given by name (``d1``, ``d2``, ``fro``, ``hellinger``, ``is``, ``log``)."""
    return _DISPATCH[Measure(measure)](f1, f2)

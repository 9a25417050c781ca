"""Riemannian metrics on spectral densities, geodesics and geodesic distance."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .divergences import d1, d2
from .factorization import factorize
from .hermitian import congruence_eigvals, ctranspose, invsqrtm, spd_geodesic
from .psd import MatrixPsd, PerturbationField, integrate_matrix, integrate_scalar

__all__ = [
    "GeodesicPath",
    "ExpansionTable",
    "metric_g1",
    "metric_g2",
    "psd_geodesic",
    "geodesic_distance",
    "expansion_check_d1",
    "expansion_check_d2",
    "DEFAULT_LADDER",
]

DEFAULT_LADDER = (1e-1, 5e-2, 2.5e-2, 1.25e-2)
# residuals below this are numerical zeros in the expansion checks
_NOISE_FLOOR = 1e-13


def _check_field(f, delta):
    if f.grid != delta.grid or f.m != delta.m:
        raise ValueError("spectrum and perturbation live on different grids or dimensions")


def metric_g1(f, delta):
    """``int ||f^{-1/2} Delta f^{-1/2}||_F^2 dtheta/2pi``.

    Also evaluated as ``int tr(f^{-1} Delta f^{-1} Delta)``; the two must agree
    to 1e-10 relative.
    """
    _check_field(f, delta)
    ih = invsqrtm(f.values)
    X = ih @ delta.values @ ih
    value = float(integrate_scalar(f.grid, np.sum(np.abs(X) ** 2, axis=(-2, -1))))
    Y = np.linalg.solve(f.values, delta.values)
    alt = float(integrate_scalar(f.grid, np.trace(Y @ Y, axis1=-2, axis2=-1).real))
    if abs(value - alt) > 1e-10 * max(value, abs(alt)) + 1e-15:
        raise ArithmeticError(f"g1 forms disagree: {value!r} vs {alt!r}")
    return value


def metric_g2(f, delta):
    """``g1 - tr(A^2)`` with ``A = int f_+^{-1} Delta f_+^{-H} dtheta/2pi``.

    Evaluated as the spread ``int ||X - A||_F^2`` of ``X = f_+^{-1} Delta f_+^{-H}``
    about its mean, which is the same quantity and cannot go negative.
    """
    _check_field(f, delta)
    inv = np.linalg.inv(factorize(f).factor_values)
    X = inv @ delta.values @ ctranspose(inv)
    A = integrate_matrix(f.grid, X)
    return float(integrate_scalar(f.grid, np.sum(np.abs(X - A) ** 2, axis=(-2, -1))))


def psd_geodesic(f0, f1, tau):
    """``f0^{1/2} (f0^{-1/2} f1 f0^{-1/2})^tau f0^{1/2}`` at every frequency."""
    f0.check_compatible(f1)
    return MatrixPsd(f0.grid, spd_geodesic(f0.values, f1.values, tau), f"geodesic(tau={tau:g})")


@dataclass(frozen=True)
class GeodesicPath:
    """The g1-geodesic through ``f0`` (at 0) and ``f1`` (at 1), defined for all real ``tau``."""

    f0: MatrixPsd
    f1: MatrixPsd

    def __post_init__(self):
        self.f0.check_compatible(self.f1)

    def __call__(self, tau):
        return psd_geodesic(self.f0, self.f1, tau)

    @property
    def length(self):
        return geodesic_distance(self.f0, self.f1)


def geodesic_distance(f0, f1):
    """``sqrt(int ||log(f0^{-1/2} f1 f0^{-1/2})||_F^2 dtheta/2pi)``."""
    f0.check_compatible(f1)
    lam = congruence_eigvals(f0.values, f1.values)
    return float(np.sqrt(integrate_scalar(f0.grid, np.sum(np.log(lam) ** 2, axis=-1))))


@dataclass(frozen=True)
class ExpansionTable:
    """Residuals of a divergence against its quadratic model along an epsilon ladder."""

    eps: np.ndarray
    divergence: np.ndarray
    quadratic: np.ndarray
    ratio: np.ndarray
    passed: bool

    def rows(self):
        return list(zip(self.eps, self.divergence, self.quadratic, self.ratio))


def _ladder_table(eps, div, quad, max_spread):
    eps = np.asarray(eps, dtype=float)
    div = np.asarray(div)
    quad = np.asarray(quad)
    resid = np.abs(div - quad)
    ratio = resid / eps**3
    if np.all(resid <= _NOISE_FLOOR):
        passed = True
    else:
        lo = ratio.min()
        passed = bool(lo > 0 and ratio.max() / lo <= max_spread)
    return ExpansionTable(eps, div, quad, ratio, passed)


def _perturbed(f, delta, e):
    return MatrixPsd(f.grid, f.values + e * delta.values, "perturbed")


def expansion_check_d1(f, delta, ladder=DEFAULT_LADDER, max_spread=8.0):
    """Check ``D1(f, f + eps Delta) = g1(eps Delta) + O(eps^3)``.

    Returns the table of ``r(eps) = |D1 - g1| / eps^3``; it passes when the
    ratios stay within a factor ``max_spread`` of each other.
    """
    g = metric_g1(f, delta)
    divs = [d1(f, _perturbed(f, delta, e)).value for e in ladder]
    quads = [g * e * e for e in ladder]
    return _ladder_table(ladder, divs, quads, max_spread)


def expansion_check_d2(f, delta, ladder=DEFAULT_LADDER, max_spread=8.0):
    """Check ``D2(f, f + eps Delta) = g2(eps Delta) / 2 + O(eps^3)``."""
    g = metric_g2(f, delta)
    divs = [d2(f, _perturbed(f, delta, e)).value for e in ladder]
    quads = [0.5 * g * e * e for e in ladder]
    return _ladder_table(ladder, divs, quads, max_spread)


def perturbation(f, values):
    """Convenience constructor for a :class:`PerturbationField` on ``f``'s grid."""
    return PerturbationField(f.grid, values)

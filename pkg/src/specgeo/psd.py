"""Matrix-valued power spectral densities sampled on a uniform frequency grid."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hermitian import (
    EIG_FLOOR_ABS,
    DomainError,
    as_hermitian,
    ctranspose,
    eig_floor,
    symmetrize,
)

__all__ = [
    "FrequencyGrid",
    "MatrixPsd",
    "PerturbationField",
    "ComplexPolynomial",
    "Inadmissible",
    "UnboundedSpectrumError",
    "GridMismatchError",
    "integrate_scalar",
    "integrate_matrix",
    "ar_psd",
    "polynomial_roots",
    "ar_coefficient_path",
    "ar_path_psd",
    "ar_stability",
    "linear_psd_path",
    "example_ar_polynomials",
    "matrix_example_pair",
    "scalar_example_pair",
    "ma_psd",
]


class UnboundedSpectrumError(ValueError):
    """An AR denominator vanishes (numerically) on the unit circle."""


class GridMismatchError(ValueError):
    """Two spectra live on different grids or have different dimensions."""


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform grid ``theta_k = -pi + 2 pi k / N`` covering one period."""

    n_points: int = 512

    def __post_init__(self):
        n = self.n_points
        if not isinstance(n, (int, np.integer)) or n < 2 or n & (n - 1):
            raise ValueError(f"n_points must be a power of two >= 2, got {n!r}")

    @property
    def theta(self):
        return -np.pi + 2.0 * np.pi * np.arange(self.n_points) / self.n_points

    @property
    def spacing(self):
        return 2.0 * np.pi / self.n_points

    @property
    def z(self):
        """Unit-circle points ``exp(j theta_k)``."""
        return np.exp(1j * self.theta)

    def refine(self, factor=2):
        return FrequencyGrid(self.n_points * factor)


def _freeze(arr):
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


def _as_stack(grid, values):
    values = np.asarray(values)
    if values.ndim == 1:
        values = values[:, None, None]
    if values.ndim != 3 or values.shape[1] != values.shape[2]:
        raise ValueError(f"values must have shape (N, m, m), got {values.shape}")
    if values.shape[0] != grid.n_points:
        raise GridMismatchError(
            f"{values.shape[0]} samples supplied for a grid of {grid.n_points} points"
        )
    return values


@dataclass(frozen=True)
class MatrixPsd:
    """An ``m x m`` PSD sampled on ``grid``; positive definite at every sample."""

    grid: FrequencyGrid
    values: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        values = as_hermitian(_as_stack(self.grid, self.values))
        lam = np.linalg.eigvalsh(values)
        floor = eig_floor(lam)
        bad = lam[:, 0] <= floor
        if np.any(bad):
            k = int(np.argmin(lam[:, 0] - floor))
            raise DomainError(
                f"spectrum is not positive definite at {int(bad.sum())} grid point(s); "
                f"worst theta={self.grid.theta[k]:.6g}, eigenvalue {lam[k, 0]:.6g}"
            )
        object.__setattr__(self, "values", _freeze(values))

    @property
    def m(self):
        return self.values.shape[-1]

    @property
    def n_points(self):
        return self.grid.n_points

    @classmethod
    def constant(cls, grid, M, provenance="constant"):
        M = np.atleast_2d(np.asarray(M, dtype=complex))
        return cls(grid, np.broadcast_to(M, (grid.n_points,) + M.shape), provenance)

    def inverse(self):
        return MatrixPsd(self.grid, np.linalg.inv(self.values), f"inverse({self.provenance})")

    def congruence(self, T):
        """``T f T^H`` for a constant matrix or a per-sample stack ``T``."""
        T = np.asarray(T, dtype=complex)
        return MatrixPsd(self.grid, T @ self.values @ ctranspose(T), f"congruence({self.provenance})")

    def scaled(self, c):
        return MatrixPsd(self.grid, c * self.values, self.provenance)

    def check_compatible(self, other):
        if self.grid != other.grid:
            raise GridMismatchError(
                f"grids differ: N={self.grid.n_points} vs N={other.grid.n_points}"
            )
        if self.m != other.m:
            raise GridMismatchError(f"dimensions differ: m={self.m} vs m={other.m}")


@dataclass(frozen=True)
class PerturbationField:
    """A Hermitian-valued tangent direction on a frequency grid."""

    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        values = as_hermitian(_as_stack(self.grid, self.values))
        object.__setattr__(self, "values", _freeze(values))

    @property
    def m(self):
        return self.values.shape[-1]

    @classmethod
    def between(cls, f0, f1):
        f0.check_compatible(f1)
        return cls(f0.grid, f1.values - f0.values)


@dataclass(frozen=True)
class ComplexPolynomial:
    """``c_0 + c_1 z + ... + c_d z^d``; trailing zero coefficients are trimmed."""

    coefficients: np.ndarray = field(default_factory=lambda: np.array([1.0 + 0j]))

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coefficients, dtype=complex))
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:1] * 0
        object.__setattr__(self, "coefficients", _freeze(c))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    @property
    def is_zero(self):
        return not np.any(self.coefficients)

    def __call__(self, z):
        # np.polyval wants descending order
        return np.polyval(self.coefficients[::-1], z)

    @classmethod
    def from_roots(cls, roots, lead=1.0):
        desc = np.poly(np.asarray(roots, dtype=complex)) * lead
        return cls(desc[::-1])

    def __mul__(self, other):
        return ComplexPolynomial(np.convolve(self.coefficients, other.coefficients))

    def roots(self):
        return polynomial_roots(self)


def integrate_scalar(grid, samples):
    """``int_{-pi}^{pi} s(theta) dtheta / 2pi`` by the uniform (periodic trapezoid) rule."""
    samples = np.asarray(samples)
    if samples.shape[0] != grid.n_points:
        raise GridMismatchError(
            f"{samples.shape[0]} samples supplied for a grid of {grid.n_points} points"
        )
    return samples.mean(axis=0)


def integrate_matrix(grid, samples, hermitian=True):
    """Entrywise :func:`integrate_scalar` of a stack ``(N, m, m)``."""
    out = integrate_scalar(grid, samples)
    return symmetrize(out) if hermitian else out


def polynomial_roots(a):
    """Roots of ``a`` from the eigenvalues of its companion matrix."""
    if a.is_zero:
        raise ValueError("the zero polynomial has no well-defined roots")
    c = a.coefficients
    d = a.degree
    if d < 1:
        raise ValueError("a constant polynomial has no roots")
    comp = np.zeros((d, d), dtype=complex)
    comp[1:, :-1] = np.eye(d - 1)
    comp[:, -1] = -c[:-1] / c[-1]
    return np.linalg.eigvals(comp)


def ar_coefficient_path(a0, a1, tau):
    """Coefficientwise ``(1 - tau) a0 + tau a1``."""
    n = max(len(a0.coefficients), len(a1.coefficients))
    c0 = np.pad(a0.coefficients, (0, n - len(a0.coefficients)))
    c1 = np.pad(a1.coefficients, (0, n - len(a1.coefficients)))
    return ComplexPolynomial((1.0 - tau) * c0 + tau * c1)


def ar_psd(a, grid, provenance="ar"):
    """Scalar AR spectrum ``1 / |a(e^{j theta})|^2``.

    Raises :class:`UnboundedSpectrumError` if ``|a|`` drops to ``1e-9`` or below
    anywhere on a 16x finer grid.
    """
    fine = FrequencyGrid(grid.n_points * 16)
    mod = np.abs(a(fine.z))
    if mod.min() <= 1e-9:
        k = int(np.argmin(mod))
        raise UnboundedSpectrumError(
            f"spectrum unbounded on grid: |a| = {mod[k]:.3g} near theta={fine.theta[k]:.6g}"
        )
    return MatrixPsd(grid, 1.0 / np.abs(a(grid.z)) ** 2, provenance)


@dataclass(frozen=True)
class Inadmissible:
    """A path sample that left the positive cone (or the stable AR models).

    ``theta`` lists the offending frequencies and ``min_eigenvalue`` the
    smallest eigenvalue found there; ``max_root_modulus`` is set for AR paths.
    """

    tau: float
    reason: str
    theta: np.ndarray = field(default_factory=lambda: np.empty(0))
    min_eigenvalue: np.ndarray = field(default_factory=lambda: np.empty(0))
    max_root_modulus: float | None = None

    def __bool__(self):
        return False


def linear_psd_path(f0, f1, tau):
    """``(1 - tau) f0 + tau f1``, or :class:`Inadmissible` where it is not positive definite."""
    f0.check_compatible(f1)
    vals = (1.0 - tau) * f0.values + tau * f1.values
    lam = np.linalg.eigvalsh(vals)
    floor = np.maximum(eig_floor(lam), EIG_FLOOR_ABS)
    bad = lam[:, 0] <= floor
    if np.any(bad):
        return Inadmissible(
            tau=float(tau),
            reason="not positive definite",
            theta=f0.grid.theta[bad],
            min_eigenvalue=lam[bad, 0],
        )
    return MatrixPsd(f0.grid, vals, f"linear(tau={tau:g})")


def ar_stability(a):
    """Largest root modulus of ``a``; the model is stable when it is below one."""
    if a.degree < 1:
        return 0.0
    return float(np.max(np.abs(polynomial_roots(a))))


def ar_path_psd(a0, a1, tau, grid):
    """``1 / |a_tau|^2`` on the coefficient path, or :class:`Inadmissible` if ``a_tau`` is unstable.

    Roots of the AR polynomials here sit inside the unit disc (``a`` is monic in
    the highest power of ``z``), so a root of modulus >= 1 is an unstable model.
    """
    a = ar_coefficient_path(a0, a1, tau)
    rho = ar_stability(a)
    if rho >= 1.0:
        return Inadmissible(tau=float(tau), reason="unstable AR model", max_root_modulus=rho)
    return ar_psd(a, grid, f"ar(tau={tau:g})")


def _pole_pair(r, w):
    # z^2 - 2 r cos(w) z + r^2, ascending order
    return ComplexPolynomial([r * r, -2.0 * r * np.cos(w), 1.0])


def example_ar_polynomials():
    """The two sixth-order AR denominators of the worked scalar example.

    Each is a product of conjugate pole pairs ``z^2 - 2 r cos(w) z + r^2`` with
    ``(r, w)`` = (0.98, pi/5), (0.85, pi/3), (0.9, 2pi/3) for ``a0`` and
    (0.98, 2pi/15), (0.75, 7pi/30), (0.9, 5pi/8) for ``a1``.
    """
    a0 = _pole_pair(0.98, np.pi / 5) * _pole_pair(0.85, np.pi / 3) * _pole_pair(0.9, 2 * np.pi / 3)
    a1 = (
        _pole_pair(0.98, 2 * np.pi / 15)
        * _pole_pair(0.75, 7 * np.pi / 30)
        * _pole_pair(0.9, 5 * np.pi / 8)
    )
    return a0, a1


def scalar_example_pair(grid=None):
    grid = grid or FrequencyGrid()
    a0, a1 = example_ar_polynomials()
    return ar_psd(a0, grid, "example:f0"), ar_psd(a1, grid, "example:f1")


def matrix_example_pair(grid=None):
    """The 2x2 pair ``f0 = L0 diag(1/|a0|^2, 1) L0^H`` and ``f1 = L1 diag(1, 1/|a1|^2) L1^H``.

    ``L0 = [[1, 0], [0.1 e^{j theta}, 1]]`` and ``L1 = [[1, 0.1 e^{j theta}], [0, 1]]``.
    """
    grid = grid or FrequencyGrid()
    a0, a1 = example_ar_polynomials()
    z = grid.z
    n = grid.n_points
    s0 = 1.0 / np.abs(a0(z)) ** 2
    s1 = 1.0 / np.abs(a1(z)) ** 2

    L0 = np.zeros((n, 2, 2), dtype=complex)
    L0[:, 0, 0] = L0[:, 1, 1] = 1.0
    L0[:, 1, 0] = 0.1 * z
    D0 = np.zeros((n, 2, 2), dtype=complex)
    D0[:, 0, 0] = s0
    D0[:, 1, 1] = 1.0

    L1 = np.zeros((n, 2, 2), dtype=complex)
    L1[:, 0, 0] = L1[:, 1, 1] = 1.0
    L1[:, 0, 1] = 0.1 * z
    D1 = np.zeros((n, 2, 2), dtype=complex)
    D1[:, 0, 0] = 1.0
    D1[:, 1, 1] = s1

    f0 = MatrixPsd(grid, L0 @ D0 @ ctranspose(L0), "example:matrix f0")
    f1 = MatrixPsd(grid, L1 @ D1 @ ctranspose(L1), "example:matrix f1")
    return f0, f1


def ma_psd(coeffs, grid, noise=None, provenance="ma"):
    """``g S g^H`` for the matrix polynomial ``g(z) = sum_t C_t z^t``.

    ``coeffs`` has shape ``(q + 1, m, m)``; ``noise`` (``S``) defaults to identity.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.ndim == 1:
        coeffs = coeffs[:, None, None]
    z = grid.z
    g = np.tensordot(z[:, None] ** np.arange(len(coeffs)), coeffs, axes=(1, 0))
    S = np.eye(coeffs.shape[-1]) if noise is None else np.asarray(noise, dtype=complex)
    return MatrixPsd(grid, g @ S @ ctranspose(g), provenance)

"""Hermitian matrix functions and the affine-invariant geometry of SPD matrices.

Every function accepts a single ``(m, m)`` matrix or a stack ``(..., m, m)``
and broadcasts over the leading axes. Matrix functions are evaluated through
the Hermitian eigendecomposition ``A = V diag(lam) V^H``.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "DomainError",
    "EigenSolverError",
    "AsymmetryError",
    "ctranspose",
    "symmetrize",
    "as_hermitian",
    "as_spd",
    "eig_floor",
    "herm_eig",
    "herm_fun",
    "sqrtm",
    "invsqrtm",
    "logm",
    "expm",
    "powm",
    "spd_geodesic",
    "spd_distance",
    "geometric_mean",
    "congruence_eigvals",
]

#: relative eigenvalue floor below which a matrix is treated as singular
EIG_FLOOR_REL = 1e-12
#: absolute floor, guards against an all-zero matrix
EIG_FLOOR_ABS = 1e-300
#: relative anti-Hermitian part tolerated (and removed) by :func:`as_hermitian`
ASYMMETRY_TOL = 1e-8


class DomainError(ValueError):
    """A matrix function was applied outside its domain (non-positive eigenvalue)."""


class EigenSolverError(RuntimeError):
    """The Hermitian eigensolver did not converge."""


class AsymmetryError(ValueError):
    """Input that should be Hermitian has a significant anti-Hermitian part."""


def ctranspose(A):
    return np.conj(np.swapaxes(A, -1, -2))


def _check_square(A):
    A = np.asarray(A)
    if A.ndim < 2 or A.shape[-1] != A.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {A.shape}")
    return A


def symmetrize(A):
    """Return the Hermitian part ``(A + A^H) / 2``."""
    A = _check_square(A)
    return 0.5 * (A + ctranspose(A))


def as_hermitian(A, tol=ASYMMETRY_TOL):
    """Validate that ``A`` is Hermitian up to ``tol`` (relative) and symmetrize it.

    Raises
    ------
    AsymmetryError
        If ``||A - A^H||_F > tol * ||A||_F`` for any matrix in the stack.
    """
    A = _check_square(A).astype(complex)
    skew = np.linalg.norm(A - ctranspose(A), axis=(-2, -1))
    scale = np.linalg.norm(A, axis=(-2, -1))
    bad = skew > tol * np.maximum(scale, EIG_FLOOR_ABS)
    if np.any(bad):
        worst = float(np.max(skew / np.maximum(scale, EIG_FLOOR_ABS)))
        raise AsymmetryError(f"matrix is not Hermitian (relative skew part {worst:.3g})")
    return symmetrize(A)


def eig_floor(eigvals, rel=EIG_FLOOR_REL):
    """Per-matrix eigenvalue floor ``max(rel * max|lam|, 1e-300)``."""
    lam = np.asarray(eigvals)
    return np.maximum(rel * np.max(np.abs(lam), axis=-1), EIG_FLOOR_ABS)


def herm_eig(A):
    """Eigendecomposition of a Hermitian matrix (stack).

    Returns ascending real eigenvalues ``lam`` and a unitary ``V`` with
    ``A = V diag(lam) V^H``.
    """
    A = _check_square(A)
    try:
        lam, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        # LAPACK does not expose the sweep count through numpy
        raise EigenSolverError(f"Hermitian eigensolver failed to converge: {exc}") from exc
    return lam, V


def _check_positive(lam, what):
    floor = eig_floor(lam)
    low = lam[..., 0]
    bad = low <= floor
    if np.any(bad):
        offending = float(np.min(low[bad]) if low.ndim else low)
        raise DomainError(
            f"{what} requires a positive definite argument; "
            f"found eigenvalue {offending:.6g} (floor {float(np.max(floor)):.3g})"
        )


def as_spd(A, tol=ASYMMETRY_TOL):
    """Validate that ``A`` is Hermitian positive definite; return the symmetrized copy."""
    H = as_hermitian(A, tol)
    lam = np.linalg.eigvalsh(H)
    _check_positive(lam, "positive definiteness")
    return H


def _reassemble(V, vals):
    return (V * vals[..., None, :]) @ ctranspose(V)


def herm_fun(A, fn, tau=None):
    """Apply a scalar function to a Hermitian matrix through its eigenvalues.

    Parameters
    ----------
    A : array_like, shape (..., m, m)
        Hermitian matrices.
    fn : {"sqrt", "invsqrt", "log", "exp", "pow"} or callable
        The scalar function. A callable is applied to the eigenvalue array
        and no domain check is made.
    tau : float, optional
        Exponent for ``fn="pow"``.

    Returns
    -------
    ndarray
        ``V diag(fn(lam)) V^H``, Hermitian.
    """
    lam, V = herm_eig(symmetrize(A))
    if callable(fn):
        vals = fn(lam)
    elif fn == "exp":
        vals = np.exp(lam)
    elif fn == "pow" and tau is not None and float(tau).is_integer():
        # integer powers only need invertibility
        if tau < 0:
            floor = eig_floor(lam)
            if np.any(np.min(np.abs(lam), axis=-1) <= floor):
                raise DomainError("negative integer power of a singular matrix")
        vals = lam ** tau
    else:
        if fn not in ("sqrt", "invsqrt", "log", "pow"):
            raise ValueError(f"unknown matrix function {fn!r}")
        if fn == "pow" and tau is None:
            raise ValueError("fn='pow' needs tau")
        _check_positive(lam, f"matrix {fn}")
        if fn == "sqrt":
            vals = np.sqrt(lam)
        elif fn == "invsqrt":
            vals = 1.0 / np.sqrt(lam)
        elif fn == "log":
            vals = np.log(lam)
        else:
            vals = lam ** tau
    return _reassemble(V, vals)


def sqrtm(A):
    return herm_fun(A, "sqrt")


def invsqrtm(A):
    return herm_fun(A, "invsqrt")


def logm(A):
    """Principal logarithm of an SPD matrix."""
    return herm_fun(A, "log")


def expm(A):
    return herm_fun(A, "exp")


def powm(A, tau):
    return herm_fun(A, "pow", tau)


def _whiten(M0, M1):
    """Return ``M0^{1/2}`` and ``M0^{-1/2} M1 M0^{-1/2}`` sharing one eigendecomposition."""
    lam, V = herm_eig(symmetrize(M0))
    _check_positive(lam, "matrix sqrt")
    s = np.sqrt(lam)
    half = _reassemble(V, s)
    ihalf = _reassemble(V, 1.0 / s)
    return half, symmetrize(ihalf @ M1 @ ihalf)


def spd_geodesic(M0, M1, tau):
    """Point at parameter ``tau`` on the affine-invariant geodesic from ``M0`` to ``M1``.

    ``M0^{1/2} (M0^{-1/2} M1 M0^{-1/2})^tau M0^{1/2}``. Any real ``tau`` is
    accepted; values outside ``[0, 1]`` extrapolate along the same geodesic
    and stay positive definite.
    """
    half, W = _whiten(M0, M1)
    # the endpoints are returned as given rather than rebuilt from square roots
    if tau == 0:
        return symmetrize(np.array(M0, dtype=complex if np.iscomplexobj(M0) else float))
    if tau == 1:
        return symmetrize(np.array(M1, dtype=complex if np.iscomplexobj(M1) else float))
    return symmetrize(half @ powm(W, tau) @ half)


def congruence_eigvals(M0, M1):
    """Eigenvalues of ``M0^{-1/2} M1 M0^{-1/2}`` (equivalently of ``M0^{-1} M1``)."""
    _, W = _whiten(M0, M1)
    lam = np.linalg.eigvalsh(W)
    _check_positive(lam, "generalized eigenvalue log")
    return lam


def spd_distance(M0, M1):
    """Affine-invariant distance ``||log(M0^{-1/2} M1 M0^{-1/2})||_F``."""
    lam = congruence_eigvals(M0, M1)
    return np.sqrt(np.sum(np.log(lam) ** 2, axis=-1))


def geometric_mean(M0, M1):
    """Geometric mean ``M0 # M1``, the midpoint of the geodesic."""
    return spd_geodesic(M0, M1, 0.5)

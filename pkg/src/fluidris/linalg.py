"""Dense Hermitian linear algebra: eigendecomposition, PSD square root,
quadratic forms.

Matrices here are small (active sets of at most a few dozen elements), so
plain LAPACK-backed dense routines are used throughout.  Eigenvalues are
reported in descending order to match the spectral-grouping convention.
"""

from dataclasses import dataclass

import numpy as np

from fluidris.errors import DomainError

__all__ = ["EigenSystem", "eig_hermitian", "psd_sqrt", "quadratic_form", "require_hermitian"]


def require_hermitian(a, tol=1e-12):
    """Validate (and return) a square Hermitian matrix as a complex ndarray."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)
    if float(np.max(np.abs(a - a.conj().T))) > tol * scale:
        raise DomainError("matrix is not Hermitian within tolerance")
    return a.astype(np.complex128, copy=False)


@dataclass(frozen=True)
class EigenSystem:
    """Spectrum of a Hermitian matrix: eigenvalues descending, unitary columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eig_hermitian(a) -> EigenSystem:
    """Full eigendecomposition of a Hermitian matrix.

    Residuals satisfy ||A v_i - lambda_i v_i|| <= 1e-10 ||A||_F and the
    eigenvector matrix is unitary to the same level.
    """
    a = require_hermitian(a)
    w, v = np.linalg.eigh(a)
    order = np.argsort(w)[::-1]
    return EigenSystem(eigenvalues=w[order], eigenvectors=v[:, order])


def psd_sqrt(a):
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in [-1e-10 * ||a||_F, 0) are clamped to zero; anything more
    negative is rejected as genuinely indefinite.
    """
    a = require_hermitian(a)
    es = eig_hermitian(a)
    w = es.eigenvalues
    floor = -1e-10 * float(np.linalg.norm(a))
    if np.any(w < floor):
        raise DomainError(f"matrix is not PSD: min eigenvalue {w.min():.3e} < {floor:.3e}")
    root = np.sqrt(np.clip(w, 0.0, None))
    b = (es.eigenvectors * root) @ es.eigenvectors.conj().T
    b = 0.5 * (b + b.conj().T)
    if np.max(np.abs(a.imag)) == 0.0:
        return b.real.astype(np.float64) if np.max(np.abs(b.imag)) < 1e-14 * max(1.0, np.max(np.abs(b))) else b
    return b


def quadratic_form(v, a) -> float:
    """Real value of v^H a v for Hermitian a."""
    a = require_hermitian(a)
    v = np.asarray(v).reshape(-1)
    if v.shape[0] != a.shape[0]:
        raise DomainError(f"dimension mismatch: vector {v.shape[0]} vs matrix {a.shape[0]}")
    return float(np.real(np.vdot(v, a @ v)))

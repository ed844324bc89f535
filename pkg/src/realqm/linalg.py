"""Dense real-matrix substrate.

Everything downstream works on square numpy float64 arrays.  This module
supplies the product, a cyclic-Jacobi symmetric eigensolver, a
Pade/scaling-squaring matrix exponential, and the tolerance-scaled
predicates (symmetric, antisymmetric, commutes, anticommutes) that replace
raw float comparisons everywhere else.

All functions are pure and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConstraintError",
    "Tolerance",
    "DEFAULT_TOL",
    "as_real_matrix",
    "frobenius",
    "identity",
    "matmul",
    "sym_eig",
    "expm",
    "is_symmetric",
    "is_antisymmetric",
    "commutes",
    "anticommutes",
]

_JACOBI_MAX_SWEEPS = 100


class ConstraintError(ValueError):
    """A domain constraint was violated by otherwise well-formed input."""


@dataclass(frozen=True)
class Tolerance:
    """Comparison tolerances.

    abs_tol scales all residual predicates; spectral_gap_tol is the absolute
    gap below which neighbouring eigenvalues are merged into one cluster.
    """

    abs_tol: float = 1e-10
    spectral_gap_tol: float = 1e-8

    def __post_init__(self) -> None:
        if self.abs_tol < 0.0 or self.spectral_gap_tol < 0.0:
            raise ValueError("tolerances must be nonnegative")
        if self.spectral_gap_tol < self.abs_tol:
            raise ValueError("spectral_gap_tol must be >= abs_tol")


DEFAULT_TOL = Tolerance()


def as_real_matrix(a) -> np.ndarray:
    """Validate and return `a` as a square float64 matrix with finite entries."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValueError("matrix dimension must be at least 1")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, "fro"))


def identity(dim: int) -> np.ndarray:
    return np.eye(dim)


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")


def matmul(a, b) -> np.ndarray:
    a = as_real_matrix(a)
    b = as_real_matrix(b)
    _check_same_dim(a, b)
    return a @ b


def is_symmetric(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = as_real_matrix(a)
    return frobenius(a - a.T) <= tol.abs_tol * max(1.0, frobenius(a))


def is_antisymmetric(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = as_real_matrix(a)
    return frobenius(a + a.T) <= tol.abs_tol * max(1.0, frobenius(a))


def commutes(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = as_real_matrix(a)
    b = as_real_matrix(b)
    _check_same_dim(a, b)
    scale = max(1.0, frobenius(a) * frobenius(b))
    return frobenius(a @ b - b @ a) <= tol.abs_tol * scale


def anticommutes(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = as_real_matrix(a)
    b = as_real_matrix(b)
    _check_same_dim(a, b)
    scale = max(1.0, frobenius(a) * frobenius(b))
    return frobenius(a @ b + b @ a) <= tol.abs_tol * scale


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return frobenius(off)


def sym_eig(a, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues, eigenvectors) with eigenvalues ascending and the
    eigenvectors as orthonormal columns, so that a = V diag(w) V^T.  Ties in
    the final sort keep the order in which the Jacobi sweep produced them.

    Jacobi is chosen over faster solvers because the accumulated plane
    rotations stay orthogonal to machine precision, which the projector
    algebra built on top of this relies on.
    """
    a = as_real_matrix(a)
    if not is_symmetric(a, tol):
        raise ValueError("sym_eig requires a symmetric matrix")
    n = a.shape[0]
    w = (a + a.T) / 2.0
    v = np.eye(n)
    fro0 = max(1.0, frobenius(w))
    conv_tol = 1e-14 * fro0
    skip_tol = conv_tol / (n * n)
    for _ in range(_JACOBI_MAX_SWEEPS):
        if _offdiag_norm(w) <= conv_tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p, q]
                if abs(apq) <= skip_tol:
                    continue
                theta = (w[q, q] - w[p, p]) / (2.0 * apq)
                t = np.sign(theta) if theta != 0.0 else 1.0
                t = t / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # w <- G^T w G and v <- v G for the plane rotation G(p, q)
                colp = w[:, p].copy()
                colq = w[:, q].copy()
                w[:, p] = c * colp - s * colq
                w[:, q] = s * colp + c * colq
                rowp = w[p, :].copy()
                rowq = w[q, :].copy()
                w[p, :] = c * rowp - s * rowq
                w[q, :] = s * rowp + c * rowq
                w[p, q] = 0.0
                w[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        if _offdiag_norm(w) > 1e-9 * fro0:
            raise RuntimeError("Jacobi eigensolver did not converge")
    diag = np.diag(w).copy()
    order = np.argsort(diag, kind="stable")
    return diag[order], v[:, order]


# Diagonal Pade approximant of order 6: c_k = (12-k)! 6! / (12! k! (6-k)!)
_PADE6 = (
    1.0,
    1.0 / 2.0,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15840.0,
    1.0 / 665280.0,
)


def expm(a) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a degree-6 Pade core.

    The input is halved until its Frobenius norm is at most 0.5; at that
    scale the [6/6] approximant is accurate to below double roundoff.
    """
    a = as_real_matrix(a)
    n = a.shape[0]
    nrm = frobenius(a)
    squarings = 0
    if nrm > 0.5:
        squarings = int(np.ceil(np.log2(nrm / 0.5)))
    scaled = a / (2.0**squarings)
    eye = np.eye(n)
    a2 = scaled @ scaled
    a4 = a2 @ a2
    a6 = a4 @ a2
    even = _PADE6[0] * eye + _PADE6[2] * a2 + _PADE6[4] * a4 + _PADE6[6] * a6
    odd = scaled @ (_PADE6[1] * eye + _PADE6[3] * a2 + _PADE6[5] * a4)
    result = np.linalg.solve(even - odd, even + odd)
    for _ in range(squarings):
        result = result @ result
    return result

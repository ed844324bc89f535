"""Observables, spectral measurement statistics, and density matrices.

Observables are arbitrary real symmetric matrices.  States are symmetric,
positive-semidefinite, unit-trace matrices; the *physical* ones are those
that additionally commute with the complex structure J.  Physical states
are the images of complex-theory density matrices under embedding followed
by division by two (the real trace doubles), so they never have an
eigenvalue above 1/2 and there are no pure states among them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    ConstraintError,
    Tolerance,
    as_real_matrix,
    commutes,
    frobenius,
    is_symmetric,
    sym_eig,
)
from .realify import ComplexMatrixRep, ComplexStructure, embed_matrix

__all__ = [
    "DensityMatrix",
    "SpectralDecomposition",
    "MeasurementStatistics",
    "density_matrix",
    "spectral_decompose",
    "expectation",
    "variance",
    "measurement_statistics",
    "physical_from_complex",
    "physical_density_4d",
    "are_orthogonal_states",
    "sharp_realizability",
]

# Type-level validation slacks, independent of the user tolerance.
_PSD_SLACK = 1e-10
_TRACE_TOL = 1e-10
_PARAM_SLACK = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Validated state: symmetric, PSD within 1e-10, unit trace within 1e-10.

    `physical` records whether the state commutes with the complex structure
    it was validated against; only physical states correspond to states of
    the complex theory.
    """

    matrix: np.ndarray
    physical: bool

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues with orthogonal projectors resolving the identity."""

    eigenvalues: np.ndarray
    projectors: tuple[np.ndarray, ...]

    @property
    def outcomes(self) -> int:
        return self.eigenvalues.size


@dataclass(frozen=True)
class MeasurementStatistics:
    outcomes: tuple[tuple[float, float], ...]  # (eigenvalue, probability)
    mean: float
    variance: float


def _check_observable(a, tol: Tolerance) -> np.ndarray:
    a = as_real_matrix(a)
    if not is_symmetric(a, tol):
        raise ValueError("observables must be symmetric matrices")
    return a


def density_matrix(matrix, j: ComplexStructure | None = None,
                   tol: Tolerance = DEFAULT_TOL) -> DensityMatrix:
    """Validate a candidate state and tag whether it is physical.

    Boundary states with an eigenvalue of exactly zero are accepted.  When
    no complex structure is supplied the physicality flag is False (the
    general, non-physical state set).
    """
    m = as_real_matrix(matrix)
    if not is_symmetric(m, tol):
        raise ConstraintError("density matrix must be symmetric")
    tr = float(np.trace(m))
    if abs(tr - 1.0) > _TRACE_TOL:
        raise ConstraintError(f"density matrix must have unit trace, got {tr!r}")
    vals, _ = sym_eig(m, tol)
    if vals[0] < -_PSD_SLACK:
        raise ConstraintError(
            f"density matrix must be positive semidefinite, minimum eigenvalue {vals[0]!r}")
    physical = False
    if j is not None:
        if m.shape[0] != j.dim:
            raise ValueError("matrix dimension does not match the complex structure")
        physical = commutes(m, j.matrix, tol)
    return DensityMatrix(matrix=m, physical=physical)


def spectral_decompose(a, tol: Tolerance = DEFAULT_TOL) -> SpectralDecomposition:
    """Spectral representation A = sum_n a_n P_n with clustered eigenvalues.

    Neighbouring eigenvalues closer than tol.spectral_gap_tol are merged
    into one cluster; each cluster contributes the mean eigenvalue and the
    orthogonal projector onto its whole eigenspace.
    """
    a = _check_observable(a, tol)
    vals, vecs = sym_eig(a, tol)
    clusters: list[list[int]] = [[0]]
    for k in range(1, vals.size):
        if vals[k] - vals[k - 1] > tol.spectral_gap_tol:
            clusters.append([k])
        else:
            clusters[-1].append(k)
    eigenvalues = np.array([vals[c].mean() for c in clusters])
    projectors = tuple(vecs[:, c] @ vecs[:, c].T for c in clusters)
    return SpectralDecomposition(eigenvalues=eigenvalues, projectors=projectors)


def expectation(rho: DensityMatrix, a, tol: Tolerance = DEFAULT_TOL) -> float:
    a = _check_observable(a, tol)
    if a.shape[0] != rho.dim:
        raise ValueError("observable and state dimensions differ")
    return float(np.trace(rho.matrix @ a))


def variance(rho: DensityMatrix, a, tol: Tolerance = DEFAULT_TOL) -> float:
    a = _check_observable(a, tol)
    if a.shape[0] != rho.dim:
        raise ValueError("observable and state dimensions differ")
    mean = float(np.trace(rho.matrix @ a))
    return float(np.trace(rho.matrix @ (a @ a))) - mean * mean


def measurement_statistics(rho: DensityMatrix, a,
                           tol: Tolerance = DEFAULT_TOL) -> MeasurementStatistics:
    """Outcome probabilities p_n = Tr(rho P_n) with mean and variance."""
    decomp = spectral_decompose(a, tol)
    if decomp.projectors[0].shape[0] != rho.dim:
        raise ValueError("observable and state dimensions differ")
    probs = np.array([float(np.trace(rho.matrix @ p)) for p in decomp.projectors])
    mean = float(probs @ decomp.eigenvalues)
    var = float(probs @ (decomp.eigenvalues - mean) ** 2)
    outcomes = tuple((float(a_n), float(p_n)) for a_n, p_n in zip(decomp.eigenvalues, probs))
    return MeasurementStatistics(outcomes=outcomes, mean=mean, variance=var)


def physical_from_complex(rho_c: ComplexMatrixRep,
                          tol: Tolerance = DEFAULT_TOL) -> DensityMatrix:
    """Embed a complex density matrix and halve it.

    The real trace of an embedded matrix is twice the complex one, so the
    complex state rho corresponds to the real state rho/2.  The result
    commutes with J by construction and has no eigenvalue above 1/2.
    """
    embedded = embed_matrix(rho_c)
    if not is_symmetric(embedded, tol):
        raise ConstraintError("complex density matrix must be Hermitean")
    tr = float(np.trace(embedded))
    if abs(tr - 2.0) > 2.0 * _TRACE_TOL:
        raise ConstraintError(f"complex density matrix must have unit trace, got {tr / 2.0!r}")
    vals, _ = sym_eig(embedded, tol)
    if vals[0] < -_PSD_SLACK:
        raise ConstraintError(
            f"complex density matrix must be positive semidefinite, "
            f"minimum eigenvalue {vals[0]!r}")
    return DensityMatrix(matrix=embedded / 2.0, physical=True)


def physical_density_4d(alpha: float, beta: float, gamma: float,
                        delta: float) -> DensityMatrix:
    """The general physical state in real dimension four.

    Parameters must satisfy 2(alpha + beta) = 1, alpha >= 0, beta >= 0 and
    alpha*beta - gamma^2 - delta^2 >= 0 (positivity); violations are
    reported with the inequality that failed.
    """
    if abs(2.0 * (alpha + beta) - 1.0) > _PARAM_SLACK:
        raise ConstraintError(
            f"trace constraint violated: 2*(alpha+beta) = {2.0 * (alpha + beta)!r} != 1")
    if alpha < -_PARAM_SLACK:
        raise ConstraintError(f"positivity constraint violated: alpha = {alpha!r} < 0")
    if beta < -_PARAM_SLACK:
        raise ConstraintError(f"positivity constraint violated: beta = {beta!r} < 0")
    det = alpha * beta - gamma * gamma - delta * delta
    if det < -_PARAM_SLACK:
        raise ConstraintError(
            f"positivity constraint violated: alpha*beta - gamma^2 - delta^2 = {det!r} < 0")
    m = np.array([
        [alpha, 0.0, gamma, delta],
        [0.0, alpha, -delta, gamma],
        [gamma, -delta, beta, 0.0],
        [delta, gamma, 0.0, beta],
    ])
    return DensityMatrix(matrix=m, physical=True)


def are_orthogonal_states(rho1: DensityMatrix, rho2: DensityMatrix,
                          tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when both products of the two states vanish."""
    if rho1.dim != rho2.dim:
        raise ValueError("state dimensions differ")
    scale = max(1.0, frobenius(rho1.matrix) * frobenius(rho2.matrix))
    return (frobenius(rho1.matrix @ rho2.matrix) <= tol.abs_tol * scale
            and frobenius(rho2.matrix @ rho1.matrix) <= tol.abs_tol * scale)


def sharp_realizability(a, j: ComplexStructure,
                        tol: Tolerance = DEFAULT_TOL) -> list[tuple[float, bool]]:
    """Flag each distinct eigenvalue as sharply realizable in a physical state.

    An eigenvalue can have variance zero in some physical state exactly when
    a physical state supported inside its eigenspace exists, and a J-invariant
    eigenspace supplies one explicitly: rho = (v v^T + (Jv)(Jv)^T)/2 for any
    unit eigenvector v.  We therefore flag eigenvalue a_n as realizable iff
    its projector commutes with J.  If the observable itself does not commute
    with J, at least one flag comes out False.
    """
    a = _check_observable(a, tol)
    if a.shape[0] != j.dim:
        raise ValueError("matrix dimension does not match the complex structure")
    decomp = spectral_decompose(a, tol)
    return [
        (float(val), commutes(proj, j.matrix, tol))
        for val, proj in zip(decomp.eigenvalues, decomp.projectors)
    ]

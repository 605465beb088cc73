"""Spectral data for Jacobi matrices.

Three independent routes are provided: the closed-form Krawtchouk eigenbasis,
the orthogonal-polynomial engine that works for any positive tridiagonal
matrix, and a cyclic Jacobi eigensolver used as a numerical oracle.
Eigenvalues are always reported in increasing order and every eigenvector is
signed so its first nonzero component is positive.
"""
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..common.exceptions import (
    ConvergenceError,
    DisconnectedChainError,
    InvalidParameterError,
    NonSymmetricMatrixError,
    SpectralInconsistencyError,
)
from ..common.logger import logger
from ..core.config import settings
from ..dto.report import InterlacingReport, ParityReport
from ..vo.band import BandMatrix
from ..vo.spectral import OrthoPolyTable, SpectralData
from .krawtchouk import binomial_weights, krawtchouk_eval_recurrence


def analytic_spectrum(N: int) -> List[float]:
    """x_s = s - N/2, s = 0..N."""
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    return [s - N / 2.0 for s in range(N + 1)]


def polynomial_spectrum(N: int, q_coeffs: Tuple[float, float]) -> np.ndarray:
    """Q_2(x_s) = alpha*x_s^2 + beta*x_s; the eigenvalues of alpha*J^2 + beta*J."""
    alpha, beta = q_coeffs
    x = np.asarray(analytic_spectrum(N))
    return alpha * x ** 2 + beta * x


def _reflection_parities(N: int) -> np.ndarray:
    return np.array([1 if (N + s) % 2 == 0 else -1 for s in range(N + 1)])


def analytic_eigenbasis(N: int) -> SpectralData:
    """W_sn = sqrt(w_s) K_n(s) with binomial w_s."""
    table = krawtchouk_eval_recurrence(N)
    weights = np.asarray(binomial_weights(N))
    eigenvectors = np.sqrt(weights)[:, None] * table.values.T
    return SpectralData(
        eigenvalues=analytic_spectrum(N),
        eigenvectors=eigenvectors,
        weights=weights,
        parities=_reflection_parities(N),
    )


def _off_diagonal_mass(A: np.ndarray) -> float:
    return float(np.sqrt(2.0 * np.sum(np.triu(A, 1) ** 2)))


def _rotate(A: np.ndarray, V: np.ndarray, p: int, q: int) -> None:
    apq = A[p, q]
    theta = (A[q, q] - A[p, p]) / (2.0 * apq)
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    col_p, col_q = A[:, p].copy(), A[:, q].copy()
    A[:, p] = c * col_p - s * col_q
    A[:, q] = s * col_p + c * col_q
    row_p, row_q = A[p, :].copy(), A[q, :].copy()
    A[p, :] = c * row_p - s * row_q
    A[q, :] = s * row_p + c * row_q
    A[p, q] = A[q, p] = 0.0

    vec_p, vec_q = V[:, p].copy(), V[:, q].copy()
    V[:, p] = c * vec_p - s * vec_q
    V[:, q] = s * vec_p + c * vec_q


def _sign_align(rows: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Flip each row so its first component above ``tol`` is positive."""
    aligned = rows.copy()
    for i, row in enumerate(aligned):
        nonzero = np.flatnonzero(np.abs(row) > tol)
        if nonzero.size and row[nonzero[0]] < 0:
            aligned[i] = -row
    return aligned


def _measured_parities(eigenvectors: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    """Reflection eigenvalue of each row vector, 0 when it is not an R eigenvector."""
    overlap = np.sum(eigenvectors * eigenvectors[:, ::-1], axis=1)
    parities = np.zeros(eigenvectors.shape[0], dtype=int)
    parities[overlap > 1 - tol] = 1
    parities[overlap < -1 + tol] = -1
    return parities


def jacobi_eigensolve(
    A: np.ndarray, tol: Optional[float] = None, max_sweeps: Optional[int] = None
) -> SpectralData:
    """Cyclic Jacobi rotations until the off-diagonal Frobenius mass drops
    below tol (relative to the Frobenius norm when that exceeds one)."""
    tol = settings.JACOBI_TOL if tol is None else tol
    max_sweeps = settings.JACOBI_MAX_SWEEPS if max_sweeps is None else max_sweeps
    A = np.array(A, dtype=float, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSymmetricMatrixError(f"expected a square matrix, got shape {A.shape}")
    if np.max(np.abs(A - A.T), initial=0.0) > 1e-12:
        raise NonSymmetricMatrixError("input matrix is not symmetric")
    A = 0.5 * (A + A.T)
    size = A.shape[0]
    V = np.eye(size)
    threshold = tol * max(1.0, float(np.linalg.norm(A)))

    sweeps = 0
    off = _off_diagonal_mass(A)
    while off >= threshold:
        if sweeps == max_sweeps:
            raise ConvergenceError(
                f"Jacobi eigensolver did not converge in {max_sweeps} sweeps (off-diagonal mass {off:.3e})"
            )
        for p in range(size - 1):
            for q in range(p + 1, size):
                if A[p, q] != 0.0:
                    _rotate(A, V, p, q)
        sweeps += 1
        off = _off_diagonal_mass(A)
    logger.debug(f"Jacobi eigensolver: size={size} sweeps={sweeps} off={off:.3e}")

    order = np.argsort(np.diag(A), kind="stable")
    eigenvalues = np.diag(A)[order]
    eigenvectors = _sign_align(V[:, order].T)
    return SpectralData(
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        weights=eigenvectors[:, 0] ** 2,
        parities=_measured_parities(eigenvectors),
    )


def chi_from_jacobi(J: BandMatrix, eigenvalues: Sequence[float]) -> OrthoPolyTable:
    """chi_n(x_s) by J_{n+1} chi_{n+1} = (x - B_n) chi_n - J_n chi_{n-1}."""
    if J.bandwidth != 1:
        raise InvalidParameterError(f"expected a tridiagonal matrix, got bandwidth {J.bandwidth}")
    off = J.band(1)
    if np.any(off <= 0):
        raise DisconnectedChainError("zero off-diagonal coupling disconnects the chain")
    x = np.asarray(eigenvalues, dtype=float)
    N = J.N
    if x.shape != (N + 1,):
        raise InvalidParameterError(f"expected {N + 1} eigenvalues, got {x.shape[0]}")

    chi = np.zeros((N + 1, N + 1))
    chi[0] = 1.0
    previous = np.zeros(N + 1)
    for n in range(N):
        coupling_in = off[n - 1] if n > 0 else 0.0
        chi[n + 1] = ((x - J.diag[n]) * chi[n] - coupling_in * previous) / off[n]
        previous = chi[n]

    gaps = np.abs(x[:, None] - x[None, :])
    np.fill_diagonal(gaps, 1.0)
    return OrthoPolyTable(
        eigenvalues=x,
        chi=chi,
        sqrt_hN=float(np.prod(off)),
        char_deriv=np.prod(gaps, axis=1),
    )


def weights_from_spectrum(table: OrthoPolyTable, mirror: bool = True) -> List[float]:
    """w_s = sqrt(h_N) / (chi_N(x_s) P'_{N+1}(x_s)); with mirror symmetry
    chi_N(x_s) P'(x_s) = |P'(x_s)|."""
    N = table.N
    if mirror:
        weights = table.sqrt_hN / table.char_deriv
    else:
        # increasing eigenvalues: sign P'_{N+1}(x_s) = (-1)^(N+s)
        signed_deriv = table.char_deriv * _reflection_parities(N)
        weights = table.sqrt_hN / (table.chi[N] * signed_deriv)
    if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
        raise SpectralInconsistencyError(
            "nonpositive weight reconstructed; the matrix is not mirror-symmetric or the spectrum is corrupted"
        )
    return weights.tolist()


def reflection_parity_check(data: SpectralData, tol: float = 1e-10) -> ParityReport:
    """W_{s,N-n} = (-1)^(N+s) W_{s,n} for all s, n."""
    eps = _reflection_parities(data.N)
    W = data.eigenvectors
    violation = float(np.max(np.abs(W[:, ::-1] - eps[:, None] * W)))
    return ParityReport(passed=violation <= tol, max_violation=violation)


def interlacing_check(J: BandMatrix, eigenvalues: Sequence[float]) -> InterlacingReport:
    """chi_N changes sign between every pair of consecutive eigenvalues."""
    table = chi_from_jacobi(J, eigenvalues)
    values = table.chi[table.N]
    changes = int(np.sum(values[:-1] * values[1:] < 0))
    return InterlacingReport(interlaced=changes == table.N, sign_changes=changes)


def spectral_projectors(
    eigenvalues: Sequence[float], eigenvectors: np.ndarray, cluster_tol: float = 1e-8
) -> List[Tuple[float, np.ndarray]]:
    """Projectors onto the eigenspaces, eigenvalues within cluster_tol merged.

    Eigenvectors are the rows of ``eigenvectors``. Returned in increasing
    order of eigenvalue, which makes them comparable across bases even when
    individual vectors are not unique.
    """
    values = np.asarray(eigenvalues, dtype=float)
    W = np.asarray(eigenvectors)
    order = np.argsort(values, kind="stable")
    clusters: List[List[int]] = []
    for index in order:
        if clusters and abs(values[index] - values[clusters[-1][-1]]) <= cluster_tol:
            clusters[-1].append(index)
        else:
            clusters.append([index])
    projectors = []
    for members in clusters:
        block = W[members]
        projectors.append((float(np.mean(values[members])), block.T @ block))
    return projectors

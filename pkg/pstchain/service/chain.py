"""Coupling sequences and one-excitation Hamiltonians of Krawtchouk chains."""
from typing import Sequence

import numpy as np

from ..common.exceptions import InvalidParameterError
from ..common.logger import logger
from ..dto.chain import ChainSpec
from ..dto.report import MirrorReport
from ..vo.band import BandMatrix
from .krawtchouk import recurrence_coefficient


def coupling_a(n: int, N: int) -> float:
    """Parabolic coupling a_n = sqrt(n(N-n+1))/2."""
    return recurrence_coefficient(n, N)


def _couplings(N: int) -> np.ndarray:
    """a_0..a_{N+1}, both ends zero."""
    return np.array([coupling_a(n, N) for n in range(N + 2)])


def build_base_jacobi(N: int) -> BandMatrix:
    """The Krawtchouk Jacobi matrix J: J_n = a_n, B_n = 0."""
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    a = _couplings(N)
    return BandMatrix(diag=np.zeros(N + 1), bands=(a[1:N + 1],))


def build_hamiltonian(spec: ChainSpec) -> BandMatrix:
    """One-excitation matrix of alpha*J^2 + beta*J, read off band by band.

    J^(1)_n = beta*a_n, J^(2)_n = alpha*a_{n-1}*a_n, B_n = alpha*(a_n^2 + a_{n+1}^2).
    """
    N = spec.N
    logger.debug(f"Building Hamiltonian N={N} alpha={spec.alpha} beta={spec.beta}")
    if spec.alpha == 0:
        return build_base_jacobi(N).scaled(spec.beta)
    a = _couplings(N)
    diag = spec.alpha * (a[:N + 1] ** 2 + a[1:N + 2] ** 2)
    band1 = spec.beta * a[1:N + 1]
    # couples n-2 and n for n = 2..N
    band2 = spec.alpha * a[1:N] * a[2:N + 1]
    return BandMatrix(diag=diag, bands=(band1, band2))


def dense_polynomial(J: BandMatrix, coeffs: Sequence[float]) -> np.ndarray:
    """sum_k coeffs[k] * J^k on the dense matrix (coeffs in ascending degree)."""
    base = J.to_dense()
    result = np.zeros_like(base)
    power = np.eye(J.size)
    for k, c in enumerate(coeffs):
        if k:
            power = power @ base
        if c:
            result += c * power
    return result


def build_polynomial_hamiltonian(N: int, coeffs: Sequence[float]) -> BandMatrix:
    """Q_M(J) for an arbitrary degree M = len(coeffs) - 1, via the dense path.

    Non-constant coefficients must be nonnegative so every coupling stays
    nonnegative.
    """
    if len(coeffs) < 2:
        raise InvalidParameterError("need at least a linear term")
    if any(c < 0 for c in coeffs[1:]):
        raise InvalidParameterError("polynomial coefficients of degree >= 1 must be nonnegative")
    degree = max((k for k, c in enumerate(coeffs) if c and k), default=0)
    if degree == 0:
        raise InvalidParameterError("polynomial has no non-constant term")
    dense = dense_polynomial(build_base_jacobi(N), coeffs)
    return BandMatrix.from_dense(dense, bandwidth=min(degree, N))


def reflection_matrix(N: int) -> np.ndarray:
    """Anti-diagonal permutation R|n> = |N-n>."""
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    return np.fliplr(np.eye(N + 1))


def mirror_symmetry_check(H: BandMatrix, tol: float = 1e-12) -> MirrorReport:
    """J^(k)_n = J^(k)_{N-n+k} and B_n = B_{N-n}: every stored band reads the
    same backwards."""
    violation = float(np.max(np.abs(H.diag - H.diag[::-1])))
    for band in H.bands:
        if band.size:
            violation = max(violation, float(np.max(np.abs(band - band[::-1]))))
    return MirrorReport(symmetric=violation <= tol, max_violation=violation)

"""Single-excitation time evolution by spectral synthesis.

U(t) = sum_s exp(-i t Q(x_s)) |x_s><x_s| with Q(x) = alpha*x^2 + beta*x and
x_s, |x_s> the spectral data of the Krawtchouk matrix J. No series or Pade
matrix exponential is ever formed.
"""
import cmath
import math
from typing import Optional, Tuple

import numpy as np

from ..common.exceptions import InvalidParameterError
from ..common.logger import logger
from ..core.config import settings
from ..dto.report import InversionReport
from ..vo.spectral import SpectralData
from ..vo.state import AmplitudeVector, EndpointState
from .chain import reflection_matrix

QCoeffs = Tuple[float, float]


def _phases(data: SpectralData, q_coeffs: QCoeffs, times: np.ndarray) -> np.ndarray:
    """exp(-i t Q(x_s)) for every time (rows) and eigenvalue (columns)."""
    alpha, beta = (float(c) for c in q_coeffs)
    x = data.eigenvalues
    energies = alpha * x ** 2 + beta * x
    return np.exp(-1j * np.outer(np.atleast_1d(times), energies))


def _check_time(t: float) -> None:
    if t < 0 or not math.isfinite(t):
        raise InvalidParameterError(f"time must be finite and nonnegative, got {t}")


def evolve(data: SpectralData, q_coeffs: QCoeffs, t: float, source: int = 0) -> AmplitudeVector:
    """amps[k] = sum_s exp(-i t Q(x_s)) W[s, source] W[s, k]."""
    _check_time(t)
    if not 0 <= source <= data.N:
        raise InvalidParameterError(f"source site {source} outside 0..{data.N}")
    W = data.eigenvectors
    phases = _phases(data, q_coeffs, np.array([t]))[0]
    amps = (phases * W[:, source]) @ W
    return AmplitudeVector(t=float(t), amps=amps, source=source)


def evolve_many(data: SpectralData, q_coeffs: QCoeffs, times: np.ndarray, source: int = 0) -> np.ndarray:
    """Amplitude rows for a batch of times, shape (len(times), N+1)."""
    W = data.eigenvectors
    phases = _phases(data, q_coeffs, np.asarray(times, dtype=float))
    return (phases * W[:, source]) @ W


def propagator(data: SpectralData, q_coeffs: QCoeffs, t: float) -> np.ndarray:
    """Full U(t) with U[k, l] = <k|exp(-iHt)|l>."""
    _check_time(t)
    W = data.eigenvectors
    phases = _phases(data, q_coeffs, np.array([t]))[0]
    return W.T @ (phases[:, None] * W)


def _endpoint_from_amplitudes(t: float, mu: complex, nu: complex) -> EndpointState:
    mu_abs, nu_abs = abs(mu), abs(nu)
    leakage = max(1.0 - mu_abs ** 2 - nu_abs ** 2, 0.0)
    theta = math.atan2(nu_abs, mu_abs)
    # ties (balanced revival) keep mu as the phase reference
    phi = cmath.phase(nu) if nu_abs > mu_abs + 1e-9 else cmath.phase(mu)
    rel_phase = None
    if mu_abs > 1e-12 and nu_abs > 1e-12:
        rel_phase = cmath.phase(nu / mu)
    return EndpointState(
        t=float(t), mu=complex(mu), nu=complex(nu), leakage=leakage,
        theta=theta, phi=phi, rel_phase=rel_phase,
    )


def endpoint_state(data: SpectralData, q_coeffs: QCoeffs, t: float) -> EndpointState:
    """mu = <0|U(t)|0>, nu = <N|U(t)|0>, plus leakage, theta, phi, rel_phase.

    phi is the phase of the dominant end (mu on ties); rel_phase = arg(nu/mu)
    in (-pi, pi] when both ends are populated.
    """
    amps = evolve(data, q_coeffs, t, source=0).amps
    return _endpoint_from_amplitudes(t, amps[0], amps[-1])


def nearest_neighbour_transfer_amplitude(N: int, beta: float, t: float) -> float:
    """|<N|exp(-i t beta J)|0>| = |sin(beta t / 2)|^N, a rotation matrix element."""
    return abs(math.sin(beta * t / 2.0)) ** N


def verify_mirror_inversion(
    data: SpectralData, q_coeffs: QCoeffs, T: float, tol: Optional[float] = None
) -> InversionReport:
    """exp(-iTQ(J)) = exp(i phi) R within tol, phi read from U[N, 0]."""
    tol = settings.PSTCHAIN_TOL if tol is None else tol
    U = propagator(data, q_coeffs, T)
    phi = cmath.phase(U[data.N, 0])
    R = reflection_matrix(data.N)
    deviation = float(np.max(np.abs(U - cmath.exp(1j * phi) * R)))
    logger.debug(f"Mirror inversion at T={T}: phi={phi:.6f} deviation={deviation:.3e}")
    return InversionReport(passed=deviation < tol, T=float(T), phi=phi, max_deviation=deviation)

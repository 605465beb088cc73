"""Exact PST / fractional-revival predicates and their numerical verification.

Every predicate works on the exact ratio alpha/beta = p/q (or the
pure-quadratic flag when beta = 0) and the chain length N, in integer and
Fraction arithmetic. Floating point only enters through the dynamics checks.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable, Optional, Set, Tuple, Union

import numpy as np

from ..common.enums import Obstruction, Regime, ThetaClass
from ..common.exceptions import InvalidParameterError
from ..common.logger import logger
from ..core.config import settings
from ..dto.certificate import FRCertificate, PSTCertificate
from ..dto.chain import ChainSpec, Rational
from ..dto.report import CyclePhase, CycleReport
from ..dto.series import FidelitySeries
from ..vo.state import EndpointState
from .dynamics import endpoint_state, evolve_many
from .spectral import analytic_eigenbasis

Number = Union[Fraction, float, int]
# Fraction p/q (0 for alpha = 0), Regime.PURE_QUADRATIC for beta = 0,
# None when alpha/beta has no rational certificate
RatioLike = Union[Fraction, Rational, Tuple[int, int], Regime, None]


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest-denominator rational in the open interval (lo, hi), lo >= 0."""
    n = math.floor(lo)
    if n + 1 < hi:
        return Fraction(n + 1)
    # (lo, hi) lies inside [n, n+1]; recurse on the reciprocal of the fractional part
    upper_reciprocal = None if lo == n else 1 / (lo - n)
    lower_reciprocal = 1 / (hi - n)
    if upper_reciprocal is None:
        return n + 1 / Fraction(math.floor(lower_reciprocal) + 1)
    return n + 1 / _simplest_between(lower_reciprocal, upper_reciprocal)


def rationalize(
    alpha: Number, beta: Number, tol: Optional[float] = None, max_den: Optional[int] = None
) -> Optional[Fraction]:
    """Smallest-denominator p/q with |alpha/beta - p/q| < tol and q <= max_den.

    Returns None when no such fraction exists; alpha/beta is then treated as
    irrational for prediction purposes.
    """
    tol = settings.RATIONALIZE_TOL if tol is None else tol
    max_den = settings.RATIONALIZE_MAX_DEN if max_den is None else max_den
    if not tol > 0 or not math.isfinite(tol):
        raise InvalidParameterError(f"rationalize tolerance must be finite and positive, got {tol}")
    if max_den < 1:
        raise InvalidParameterError(f"max_den must be >= 1, got {max_den}")
    if beta <= 0:
        raise InvalidParameterError("rationalize needs beta > 0")
    if alpha < 0:
        raise InvalidParameterError("alpha must be nonnegative")
    value = Fraction(alpha) / Fraction(beta)
    width = Fraction(tol)
    if value - width < 0:
        candidate = Fraction(0)
    else:
        candidate = _simplest_between(value - width, value + width)
    if candidate.denominator > max_den:
        logger.info(f"No rational certificate for alpha/beta={float(value)!r} (tol={tol}, max_den={max_den})")
        return None
    return candidate


def resolve_ratio(spec: ChainSpec, tol: Optional[float] = None, max_den: Optional[int] = None) -> RatioLike:
    if spec.regime == Regime.PURE_QUADRATIC:
        return Regime.PURE_QUADRATIC
    if spec.ratio is not None:
        return spec.ratio.as_fraction()
    if spec.alpha == 0:
        return Fraction(0)
    return rationalize(spec.alpha, spec.beta, tol, max_den)


def _normalize_ratio(ratio: RatioLike) -> Union[Fraction, Regime, None]:
    if ratio is None or isinstance(ratio, Fraction):
        value = ratio
    elif isinstance(ratio, Regime):
        if ratio != Regime.PURE_QUADRATIC:
            raise InvalidParameterError(f"only the pure-quadratic flag is accepted, got {ratio.value}")
        return ratio
    elif isinstance(ratio, Rational):
        value = ratio.as_fraction()
    else:
        p, q = ratio
        if q < 1 or math.gcd(p, q) != 1:
            raise InvalidParameterError(f"{p}/{q} must be coprime with q >= 1")
        value = Fraction(p, q)
    if value is not None and value < 0:
        raise InvalidParameterError("alpha/beta must be nonnegative")
    return value


def _regime_of(ratio: Union[Fraction, Regime]) -> Regime:
    if isinstance(ratio, Regime):
        return ratio
    return Regime.NEAREST_NEIGHBOUR if ratio == 0 else Regime.MIXED


def _ratio_dto(ratio: Union[Fraction, Regime]) -> Optional[Rational]:
    return Rational.from_fraction(ratio) if isinstance(ratio, Fraction) else None


def _time_over_pi(units: Fraction, scale: Number) -> Tuple[float, Optional[Rational]]:
    """(units * pi / scale, exact units/scale when scale is exact)."""
    if scale <= 0:
        raise InvalidParameterError("energy scale must be positive")
    exact = None
    if isinstance(scale, (Fraction, int)):
        exact = Rational.from_fraction(Fraction(units) / Fraction(scale))
    return math.pi * float(units) / float(scale), exact


def _check_N(N: int) -> None:
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")


def explain_pst(ratio: RatioLike, N: int) -> Optional[Obstruction]:
    """The violated PST condition, or None when PST is predicted."""
    _check_N(N)
    value = _normalize_ratio(ratio)
    if value is None:
        return Obstruction.IRRATIONAL_RATIO
    if isinstance(value, Regime):
        return Obstruction.ODD_CHAIN_PURE_QUADRATIC if N % 2 else None
    if N == 1:
        return None
    p, q = value.numerator, value.denominator
    if p % 2 == 1 and q % 2 != N % 2:
        return Obstruction.PARITY_MISMATCH
    return None


def pst_predict(
    ratio: RatioLike,
    N: int,
    *,
    beta: Number = 1,
    alpha: Number = 1,
    multiplier: int = 1,
) -> Optional[PSTCertificate]:
    """Certificate (xi, eta, T) for PST in the chain alpha*J^2 + beta*J.

    beta > 0: xi = kp/2, eta = (k(q - Np) - 1)/2, T = k*pi*q/beta.
    beta = 0: xi = k/2, eta = -(kN + 1)/2, T = k*pi/alpha, N even only.
    Two sites (N = 1, beta > 0): J^2 = I/4, so alpha only adds a global
    phase and xi = 0, eta = (k - 1)/2, T = k*pi/beta for every ratio.
    The multiplier k must be odd; even multiples of T are perfect returns.
    """
    if multiplier < 1 or multiplier % 2 == 0:
        raise InvalidParameterError(f"PST multiplier must be a positive odd integer, got {multiplier}")
    if explain_pst(ratio, N) is not None:
        return None
    value = _normalize_ratio(ratio)
    k = multiplier
    if isinstance(value, Regime):
        xi = Fraction(k, 2)
        eta = Fraction(-(k * N + 1), 2)
        T, T_over_pi = _time_over_pi(Fraction(k), alpha)
        note = "beta = 0 with N even: xi and eta half-integers"
    elif N == 1:
        xi = Fraction(0)
        eta = Fraction(k - 1, 2)
        T, T_over_pi = _time_over_pi(Fraction(k), beta)
        note = "two sites: alpha*J^2 is the constant alpha/4, xi = 0"
    else:
        p, q = value.numerator, value.denominator
        xi = Fraction(k * p, 2)
        eta = Fraction(k * (q - N * p) - 1, 2)
        T, T_over_pi = _time_over_pi(Fraction(k * q), beta)
        if p == 0:
            note = "alpha = 0: nearest-neighbour chain, xi = eta = 0"
        elif p % 2 == 0:
            note = "p even, q odd: xi and eta integers"
        else:
            note = f"p odd, q and N both {'odd' if N % 2 else 'even'}: xi and eta half-integers"
    logger.info(f"PST predicted for N={N}, ratio={value}: T={T!r}")
    return PSTCertificate(
        regime=_regime_of(value),
        N=N,
        ratio=_ratio_dto(value),
        xi=Rational.from_fraction(xi),
        eta=Rational.from_fraction(eta),
        multiplier=k,
        T=T,
        T_over_pi=T_over_pi,
        parity_note=note,
    )


def explain_fr(ratio: RatioLike, N: int) -> Optional[Obstruction]:
    """The violated balanced-revival condition, or None when FR is predicted."""
    _check_N(N)
    value = _normalize_ratio(ratio)
    if value is None:
        return Obstruction.IRRATIONAL_RATIO
    if isinstance(value, Regime):
        return Obstruction.ODD_CHAIN_PURE_QUADRATIC if N % 2 else None
    if N == 1:
        # two adjacent sites revive for any ratio; the integer-linear argument needs N >= 2
        return None
    p, q = value.numerator, value.denominator
    if p == 0:
        return Obstruction.NEAREST_NEIGHBOUR
    if p % 2 == 0:
        return Obstruction.EVEN_NUMERATOR
    if q % 2 != N % 2:
        return Obstruction.PARITY_MISMATCH
    return None


def revival_angle(xi0: int, eta0: int, N: int) -> Tuple[Fraction, int]:
    """Signed theta/pi in (-1/2, 1/2] and the delta_zeta = zeta0 - zeta1 that
    realizes it, from theta = (-1)^N pi (xi0/4 + eta0/2 + delta_zeta)."""
    base = Fraction(xi0, 4) + Fraction(eta0, 2)
    delta_zeta = -math.floor(base + Fraction(1, 2))
    reduced = base + delta_zeta
    if reduced == Fraction(-1, 2):
        reduced, delta_zeta = Fraction(1, 2), delta_zeta + 1
    sign = -1 if N % 2 else 1
    return sign * reduced, delta_zeta


def classify_theta(theta_over_pi: Fraction) -> ThetaClass:
    """Fold theta modulo pi and sign onto {0, pi/4, pi/2}."""
    folded = theta_over_pi % 1
    folded = min(folded, 1 - folded)
    if folded == 0:
        return ThetaClass.RETURN
    if folded == Fraction(1, 4):
        return ThetaClass.BALANCED
    if folded == Fraction(1, 2):
        return ThetaClass.PST
    raise InvalidParameterError(f"theta/pi = {theta_over_pi} is not a multiple of 1/4")


def theta_classes(xi0: int, eta0: int, N: int = 0, delta_zetas: Iterable[int] = range(-2, 3)) -> Set[ThetaClass]:
    """Classes reached by theta = (-1)^N pi (xi0/4 + eta0/2 + dz) over integer dz."""
    sign = -1 if N % 2 else 1
    base = Fraction(xi0, 4) + Fraction(eta0, 2)
    return {classify_theta(sign * (base + dz)) for dz in delta_zetas}


def fr_predict(
    ratio: RatioLike,
    N: int,
    *,
    beta: Number = 1,
    alpha: Number = 1,
    multiplier: int = 1,
) -> Optional[FRCertificate]:
    """Certificate (xi0, eta0, tau) for balanced revival at sites 0 and N.

    beta > 0: xi0 = kp, eta0 = k(q - Np)/2, tau = k*pi*q/(2*beta), p odd and
    q = N (mod 2). beta = 0: xi0 = k, eta0 = -kN/2, tau = k*pi/(2*alpha), N even.
    Two sites (N = 1, beta > 0): xi0 = k, eta0 = 0, tau = k*pi/(2*beta).
    With k > 1 the certificate describes the state at k*tau, whose theta class
    cycles balanced, pst, balanced, return.
    """
    if multiplier < 1:
        raise InvalidParameterError(f"FR multiplier must be a positive integer, got {multiplier}")
    if explain_fr(ratio, N) is not None:
        return None
    value = _normalize_ratio(ratio)
    k = multiplier
    note = None
    if isinstance(value, Regime):
        xi0, eta0 = k, -(k * N) // 2
        tau, tau_over_pi = _time_over_pi(Fraction(k, 2), alpha)
    elif N == 1:
        xi0, eta0 = k, 0
        tau, tau_over_pi = _time_over_pi(Fraction(k, 2), beta)
        note = "two sites: alpha*J^2 is the constant alpha/4, revival from beta*J alone"
    else:
        p, q = value.numerator, value.denominator
        xi0, eta0 = k * p, k * (q - N * p) // 2
        tau, tau_over_pi = _time_over_pi(Fraction(k * q, 2), beta)
    theta_over_pi, delta_zeta = revival_angle(xi0, eta0, N)
    theta_class = classify_theta(theta_over_pi)
    rel_phase = None
    if theta_class == ThetaClass.BALANCED:
        rel_phase = math.copysign(math.pi / 2, float(theta_over_pi))
    logger.info(f"FR predicted for N={N}, ratio={value}: tau={tau!r}, class={theta_class.value}")
    return FRCertificate(
        regime=_regime_of(value),
        N=N,
        ratio=_ratio_dto(value),
        xi0=xi0,
        eta0=eta0,
        delta_zeta=delta_zeta,
        multiplier=k,
        tau=tau,
        tau_over_pi=tau_over_pi,
        theta_class=theta_class,
        theta_over_pi=Rational.from_fraction(theta_over_pi),
        predicted_rel_phase=rel_phase,
        note=note,
    )


def fidelity_scan(
    spec: ChainSpec, t_max: float, steps: int, workers: int = 1, chunk: Optional[int] = None
) -> FidelitySeries:
    """Fidelity |<N|U(t)|0>|^2 and |mu|^2 + |nu|^2 on linspace(0, t_max, steps).

    The grid is split into chunks that may be evaluated on a thread pool; the
    output order is the grid order regardless of ``workers``.
    """
    if steps < 2:
        raise InvalidParameterError(f"steps must be >= 2, got {steps}")
    if t_max <= 0 or not math.isfinite(t_max):
        raise InvalidParameterError(f"t_max must be finite and positive, got {t_max}")
    chunk = settings.SCAN_CHUNK if chunk is None else chunk
    logger.info(f"Scanning N={spec.N} alpha={spec.alpha} beta={spec.beta} over [0, {t_max}] with {steps} points")
    data = analytic_eigenbasis(spec.N)
    times = np.linspace(0.0, t_max, steps)
    blocks = [times[i:i + chunk] for i in range(0, steps, chunk)]

    def run(block: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        amps = evolve_many(data, spec.q_coeffs, block, source=0)
        transfer = np.abs(amps[:, -1]) ** 2
        return transfer, np.abs(amps[:, 0]) ** 2 + transfer

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, blocks))
    else:
        results = [run(block) for block in blocks]
    return FidelitySeries(
        times=times.tolist(),
        fidelity=np.concatenate([r[0] for r in results]).tolist(),
        endpoint_prob=np.concatenate([r[1] for r in results]).tolist(),
    )


def _phase_entry(label: str, state: EndpointState, passed: bool) -> CyclePhase:
    return CyclePhase(
        label=label,
        t=state.t,
        mu_abs=abs(state.mu),
        nu_abs=abs(state.nu),
        leakage=state.leakage,
        rel_phase=state.rel_phase,
        passed=passed,
    )


def is_balanced(state: EndpointState, tol: float, phase_tol: float = 1e-6) -> bool:
    half = 1.0 / math.sqrt(2.0)
    return (
        abs(abs(state.mu) - half) < tol
        and abs(abs(state.nu) - half) < tol
        and state.is_localized(tol)
        and state.rel_phase is not None
        and abs(abs(state.rel_phase) - math.pi / 2) < phase_tol
    )


def cycle_verify(spec: ChainSpec, cert: FRCertificate, tol: Optional[float] = None) -> CycleReport:
    """FR at tau, PST at 2tau, FR at 3tau, perfect return at 4tau."""
    if cert.multiplier != 1:
        raise InvalidParameterError(f"cycle needs the minimal revival certificate, got multiplier {cert.multiplier}")
    tol = settings.PSTCHAIN_TOL if tol is None else tol
    data = analytic_eigenbasis(spec.N)
    tau = cert.tau
    phases = []
    for k, label in ((1, "fr"), (2, "pst"), (3, "fr"), (4, "return")):
        state = endpoint_state(data, spec.q_coeffs, k * tau)
        if label == "fr":
            passed = is_balanced(state, tol, phase_tol=max(tol, 1e-6))
        elif label == "pst":
            passed = abs(abs(state.nu) - 1.0) < tol
        else:
            passed = abs(abs(state.mu) - 1.0) < tol
        phases.append(_phase_entry(label, state, passed))
    passed = all(phase.passed for phase in phases)
    logger.info(f"Cycle check N={spec.N} tau={tau!r}: {'pass' if passed else 'fail'}")
    return CycleReport(
        passed=passed,
        tau=tau,
        tol=tol,
        predicted_rel_phase=cert.predicted_rel_phase,
        phases=phases,
    )


def revival_check(spec: ChainSpec, cert: FRCertificate, tol: Optional[float] = None) -> CyclePhase:
    """Endpoint state at the certificate's tau, checked against its theta class."""
    tol = settings.PSTCHAIN_TOL if tol is None else tol
    state = endpoint_state(analytic_eigenbasis(spec.N), spec.q_coeffs, cert.tau)
    if cert.theta_class == ThetaClass.BALANCED:
        passed = is_balanced(state, tol, phase_tol=max(tol, 1e-6))
    elif cert.theta_class == ThetaClass.PST:
        passed = abs(abs(state.nu) - 1.0) < tol
    else:
        passed = abs(abs(state.mu) - 1.0) < tol
    return _phase_entry(cert.theta_class.value, state, passed)

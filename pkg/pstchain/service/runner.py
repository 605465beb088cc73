from fractions import Fraction
from typing import Any, Optional, Tuple

from pydantic import ValidationError

from ..common.enums import Command, ExitStatus, HTTPStatus, Obstruction
from ..common.exceptions import ConvergenceError, PSTChainError, UsageError
from ..common.logger import logger
from ..common.parsing import Coefficient, TimeValue, parse_coefficient, parse_time
from ..common.response import AppResponse
from ..core.config import Settings, settings as default_settings
from ..dto.certificate import Refusal
from ..dto.chain import BandMatrixOut, ChainSpec, Rational
from ..dto.report import FRCheck, PSTCheck, SpectrumOut
from ..dto.run import ChainRequest
from ..dto.series import AmplitudeOut
from . import analysis, chain, dynamics, spectral

_REFUSAL_MESSAGES = {
    Obstruction.PARITY_MISMATCH: "p is odd but q and N have different parity",
    Obstruction.EVEN_NUMERATOR: "p is even: PST is possible but there is no fractional revival",
    Obstruction.ODD_CHAIN_PURE_QUADRATIC: "beta = 0 requires an even N",
    Obstruction.NEAREST_NEIGHBOUR: "the nearest-neighbour chain (alpha = 0) only shows PST and perfect return",
    Obstruction.IRRATIONAL_RATIO: "alpha/beta has no rational certificate within tolerance",
}


class RunService:
    """Runs one command of the toolkit and wraps the outcome in an AppResponse."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or default_settings

    def run(self, command: Command, request: ChainRequest) -> AppResponse[Any]:
        logger.info(f"Running {command.value}: N={request.N} alpha={request.alpha} beta={request.beta}")
        handlers = {
            Command.COUPLINGS: self.couplings,
            Command.SPECTRUM: self.spectrum,
            Command.EVOLVE: self.evolve,
            Command.SCAN: self.scan,
            Command.CHECK_PST: self.check_pst,
            Command.CHECK_FR: self.check_fr,
            Command.CYCLE: self.cycle,
        }
        try:
            return handlers[command](request)
        except ConvergenceError as e:
            logger.error(f"{command.value} failed: {e}")
            return AppResponse.error_response(
                status_code=HTTPStatus.INTERNAL_SERVER_ERROR, message=str(e)
            )
        except (PSTChainError, ValidationError) as e:
            logger.error(f"{command.value} rejected: {e}")
            return AppResponse.error_response(
                status_code=HTTPStatus.BAD_REQUEST, message=str(e)
            )

    def _tol(self, request: ChainRequest) -> float:
        return request.tol if request.tol is not None else self.settings.PSTCHAIN_TOL

    def _chain(self, request: ChainRequest) -> Tuple[ChainSpec, Coefficient, Coefficient]:
        alpha = parse_coefficient(request.alpha)
        beta = parse_coefficient(request.beta)
        ratio = None
        if isinstance(alpha, Fraction) and isinstance(beta, Fraction) and beta > 0:
            # exact inputs bypass rationalize
            ratio = Rational.from_fraction(alpha / beta)
        spec = ChainSpec(N=request.N, alpha=float(alpha), beta=float(beta), ratio=ratio)
        return spec, alpha, beta

    def _ratio(self, spec: ChainSpec) -> analysis.RatioLike:
        return analysis.resolve_ratio(
            spec, self.settings.RATIONALIZE_TOL, self.settings.RATIONALIZE_MAX_DEN
        )

    def _time(self, value, name: str) -> TimeValue:
        if value is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for this command")
        return parse_time(value)

    def _refusal(self, kind: str, spec: ChainSpec, ratio, reason: Obstruction) -> AppResponse[Refusal]:
        refusal = Refusal(
            kind=kind,
            N=spec.N,
            ratio=Rational.from_fraction(ratio) if isinstance(ratio, Fraction) else None,
            regime=spec.regime,
            reason=reason,
            message=_REFUSAL_MESSAGES[reason],
        )
        logger.info(f"No {kind} certificate: {reason.value}")
        return AppResponse.success_response(
            status_code=HTTPStatus.OK, message=f"No {kind} certificate: {refusal.message}", data=refusal
        )

    def couplings(self, request: ChainRequest) -> AppResponse[BandMatrixOut]:
        spec, _, _ = self._chain(request)
        band = chain.build_hamiltonian(spec)
        return AppResponse.success_response(
            status_code=HTTPStatus.OK, message="Couplings built", data=BandMatrixOut.from_band(band)
        )

    def spectrum(self, request: ChainRequest) -> AppResponse[SpectrumOut]:
        spec, _, _ = self._chain(request)
        data = spectral.analytic_eigenbasis(spec.N)
        out = SpectrumOut(
            N=spec.N,
            x=data.eigenvalues.tolist(),
            eigenvalues=spectral.polynomial_spectrum(spec.N, spec.q_coeffs).tolist(),
            weights=data.weights.tolist(),
            parities=data.parities.tolist(),
        )
        return AppResponse.success_response(status_code=HTTPStatus.OK, message="Spectrum computed", data=out)

    def evolve(self, request: ChainRequest) -> AppResponse[AmplitudeOut]:
        spec, _, _ = self._chain(request)
        t = self._time(request.t, "t")
        vector = dynamics.evolve(
            spectral.analytic_eigenbasis(spec.N), spec.q_coeffs, t.value, source=request.source
        )
        return AppResponse.success_response(
            status_code=HTTPStatus.OK, message=f"Evolved to t={t}", data=AmplitudeOut.from_vector(vector)
        )

    def scan(self, request: ChainRequest):
        spec, _, _ = self._chain(request)
        t_max = self._time(request.t_max, "t_max")
        series = analysis.fidelity_scan(spec, t_max.value, request.steps)
        return AppResponse.success_response(
            status_code=HTTPStatus.OK,
            message=f"Scanned {request.steps} points up to t={t_max}, max fidelity {series.max_fidelity():.12f}",
            data=series,
        )

    def check_pst(self, request: ChainRequest):
        spec, alpha, beta = self._chain(request)
        ratio = self._ratio(spec)
        reason = analysis.explain_pst(ratio, spec.N)
        if reason is not None:
            return self._refusal("pst", spec, ratio, reason)
        certificate = analysis.pst_predict(
            ratio, spec.N, beta=beta, alpha=alpha, multiplier=request.multiplier
        )
        report = dynamics.verify_mirror_inversion(
            spectral.analytic_eigenbasis(spec.N), spec.q_coeffs, certificate.T, self._tol(request)
        )
        return self._checked(PSTCheck(certificate=certificate, verification=report), report.passed, "PST")

    def check_fr(self, request: ChainRequest):
        spec, alpha, beta = self._chain(request)
        ratio = self._ratio(spec)
        reason = analysis.explain_fr(ratio, spec.N)
        if reason is not None:
            return self._refusal("fr", spec, ratio, reason)
        certificate = analysis.fr_predict(
            ratio, spec.N, beta=beta, alpha=alpha, multiplier=request.multiplier
        )
        phase = analysis.revival_check(spec, certificate, self._tol(request))
        return self._checked(FRCheck(certificate=certificate, verification=phase), phase.passed, "FR")

    def cycle(self, request: ChainRequest):
        spec, alpha, beta = self._chain(request)
        ratio = self._ratio(spec)
        reason = analysis.explain_fr(ratio, spec.N)
        if reason is not None:
            return self._refusal("fr", spec, ratio, reason)
        certificate = analysis.fr_predict(ratio, spec.N, beta=beta, alpha=alpha)
        report = analysis.cycle_verify(spec, certificate, self._tol(request))
        return self._checked(report, report.passed, "Revival cycle")

    def _checked(self, data, passed: bool, label: str):
        if passed:
            return AppResponse.success_response(
                status_code=HTTPStatus.OK, message=f"{label} verified", data=data
            )
        logger.warning(f"{label} verification failed")
        return AppResponse.success_response(
            status_code=HTTPStatus.OK,
            message=f"{label} verification failed",
            data=data,
            exit_status=ExitStatus.VERIFICATION_FAILED,
        )

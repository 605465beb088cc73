import math
from fractions import Fraction
from math import gcd

import numpy as np
import pytest

from pstchain.common.enums import Obstruction, Regime, ThetaClass
from pstchain.common.exceptions import InvalidParameterError
from pstchain.dto.chain import ChainSpec, Rational
from pstchain.service.analysis import (
    classify_theta,
    cycle_verify,
    explain_fr,
    explain_pst,
    fidelity_scan,
    fr_predict,
    pst_predict,
    rationalize,
    resolve_ratio,
    revival_angle,
    revival_check,
    theta_classes,
)
from pstchain.service.dynamics import endpoint_state, verify_mirror_inversion

COPRIME_RATIOS = [(p, q) for p in range(0, 6) for q in range(1, 6) if gcd(p, q) == 1]


class TestRationalize:
    def test_examples(self):
        assert rationalize(1.0, 3.0) == Fraction(1, 3)
        assert rationalize(0.0, 1.0) == Fraction(0)
        assert rationalize(2.0, 1.0) == Fraction(2)
        assert rationalize(0.75, 1.0) == Fraction(3, 4)

    def test_exact_inputs(self):
        assert rationalize(Fraction(6), Fraction(4)) == Fraction(3, 2)

    def test_golden_ratio_flagged(self, golden_ratio):
        assert rationalize(golden_ratio, 1.0, tol=1e-9, max_den=10_000) is None
        assert rationalize(golden_ratio, 1.0, tol=1e-12, max_den=500_000) is None

    def test_golden_ratio_fine_tolerance(self, golden_ratio):
        # a large enough max_den always finds a Fibonacci quotient
        ratio = rationalize(golden_ratio, 1.0, tol=1e-12, max_den=1_000_000)
        assert ratio is not None
        assert abs(golden_ratio - ratio) < 1e-12
        assert ratio.denominator > 500_000

    def test_smallest_denominator(self):
        ratio = rationalize(math.pi, 1.0, tol=2e-3, max_den=1000)
        assert ratio == Fraction(22, 7)

    def test_invalid(self):
        with pytest.raises(InvalidParameterError):
            rationalize(1.0, 0.0)
        with pytest.raises(InvalidParameterError):
            rationalize(-1.0, 1.0)

    @pytest.mark.parametrize("tol, max_den", [(0.0, 100), (-1e-9, 100), (float("nan"), 100), (1e-9, 0)])
    def test_invalid_bounds(self, tol, max_den):
        with pytest.raises(InvalidParameterError):
            rationalize(2.0, 1.0, tol=tol, max_den=max_den)

    def test_resolve_ratio(self, mixed_chain, quadratic_chain, nn_chain):
        assert resolve_ratio(mixed_chain) == Fraction(1)
        assert resolve_ratio(quadratic_chain) == Regime.PURE_QUADRATIC
        assert resolve_ratio(nn_chain) == Fraction(0)
        assert resolve_ratio(ChainSpec(N=3, alpha=1.0, beta=3.0)) == Fraction(1, 3)


class TestPSTPredict:
    def test_examples(self):
        cert = pst_predict(Fraction(1), 5)
        assert cert.xi == Rational(num=1, den=2)
        assert cert.eta == Rational(num=-5, den=2)
        assert cert.T == pytest.approx(math.pi)
        assert cert.T_over_pi == Rational(num=1)
        assert cert.regime == Regime.MIXED

        cert = pst_predict((2, 1), 4)
        assert (cert.xi.as_fraction(), cert.eta.as_fraction()) == (1, -4)
        assert cert.T == pytest.approx(math.pi)

        cert = pst_predict(Fraction(1, 2), 4, beta=2)
        assert (cert.xi.as_fraction(), cert.eta.as_fraction()) == (Fraction(1, 2), Fraction(-3, 2))
        assert cert.T == pytest.approx(math.pi)

    def test_refusals(self):
        assert pst_predict(Fraction(1), 4) is None
        assert explain_pst(Fraction(1), 4) == Obstruction.PARITY_MISMATCH
        assert pst_predict(Regime.PURE_QUADRATIC, 5) is None
        assert explain_pst(Regime.PURE_QUADRATIC, 5) == Obstruction.ODD_CHAIN_PURE_QUADRATIC
        assert explain_pst(None, 5) == Obstruction.IRRATIONAL_RATIO

    def test_pure_quadratic(self):
        cert = pst_predict(Regime.PURE_QUADRATIC, 4, alpha=1)
        assert cert.T == pytest.approx(math.pi)
        assert cert.xi.as_fraction() == Fraction(1, 2)
        assert cert.eta.as_fraction() == Fraction(-5, 2)
        assert cert.ratio is None
        assert pst_predict(Regime.PURE_QUADRATIC, 4, alpha=2).T == pytest.approx(math.pi / 2)

    @pytest.mark.parametrize("N", range(1, 11))
    def test_nearest_neighbour_always(self, N):
        cert = pst_predict(Fraction(0), N, beta=1)
        assert cert.T == pytest.approx(math.pi)
        assert cert.regime == Regime.NEAREST_NEIGHBOUR

    @pytest.mark.parametrize("ratio", [Fraction(1, 2), Fraction(3, 2), Fraction(1, 4), Fraction(2), Fraction(1, 3)])
    def test_two_sites_transfer_at_pi_over_beta(self, ratio):
        assert explain_pst(ratio, 1) is None
        cert = pst_predict(ratio, 1, beta=2)
        assert cert.T == pytest.approx(math.pi / 2)
        assert cert.T_over_pi == Rational(num=1, den=2)
        assert cert.xi.as_fraction() == 0
        assert pst_predict(ratio, 1, multiplier=3).T == pytest.approx(3 * math.pi)

    def test_two_sites_pure_quadratic(self):
        assert explain_pst(Regime.PURE_QUADRATIC, 1) == Obstruction.ODD_CHAIN_PURE_QUADRATIC

    def test_multiplier(self):
        assert pst_predict(Fraction(1), 5, multiplier=3).T == pytest.approx(3 * math.pi)
        with pytest.raises(InvalidParameterError):
            pst_predict(Fraction(1), 5, multiplier=2)

    def test_non_coprime_tuple(self):
        with pytest.raises(InvalidParameterError):
            pst_predict((2, 2), 5)

    @pytest.mark.parametrize("p, q", COPRIME_RATIOS)
    @pytest.mark.parametrize("N", range(1, 11))
    def test_certificate_identities(self, p, q, N):
        cert = pst_predict((p, q), N)
        if cert is None:
            assert p % 2 == 1 and q % 2 != N % 2
            return
        xi, eta = cert.xi.as_fraction(), cert.eta.as_fraction()
        # xi and eta are both integers or both half-integers
        assert (2 * xi).denominator == 1 and (2 * eta).denominator == 1
        assert (2 * xi) % 2 == (2 * eta) % 2
        if N == 1:
            assert (xi, eta) == (0, 0)
            assert cert.T_over_pi == Rational(num=1)
            return
        assert N * xi + eta + Fraction(1, 2) == Fraction(q, 2)
        if p > 0:
            assert Fraction(p, q) == xi / (N * xi + eta + Fraction(1, 2))
        assert cert.T_over_pi == Rational(num=q)


class TestFRPredict:
    def test_examples(self):
        cert = fr_predict(Fraction(1), 5)
        assert (cert.xi0, cert.eta0) == (1, -2)
        assert cert.tau == pytest.approx(math.pi / 2)
        assert cert.theta_class == ThetaClass.BALANCED
        assert cert.theta_over_pi == Rational(num=-1, den=4)
        assert cert.predicted_rel_phase == pytest.approx(-math.pi / 2)

        cert = fr_predict(Regime.PURE_QUADRATIC, 4, alpha=1)
        assert (cert.xi0, cert.eta0) == (1, -2)
        assert cert.tau == pytest.approx(math.pi / 2)
        assert cert.predicted_rel_phase == pytest.approx(math.pi / 2)

    def test_refusals(self):
        assert explain_fr(Fraction(1), 4) == Obstruction.PARITY_MISMATCH
        assert explain_fr(Fraction(2), 5) == Obstruction.EVEN_NUMERATOR
        assert explain_fr(Fraction(0), 6) == Obstruction.NEAREST_NEIGHBOUR
        assert explain_fr(Regime.PURE_QUADRATIC, 3) == Obstruction.ODD_CHAIN_PURE_QUADRATIC
        assert explain_fr(None, 3) == Obstruction.IRRATIONAL_RATIO
        assert fr_predict(Fraction(2), 5) is None

    @pytest.mark.parametrize("ratio", [Fraction(0), Fraction(1, 2), Fraction(3, 2), Fraction(2)])
    def test_two_sites_revive_at_half_pi_over_beta(self, ratio):
        assert explain_fr(ratio, 1) is None
        cert = fr_predict(ratio, 1)
        assert cert.tau == pytest.approx(math.pi / 2)
        assert cert.theta_class == ThetaClass.BALANCED
        assert cert.predicted_rel_phase == pytest.approx(-math.pi / 2)
        assert cert.note is not None
        third = fr_predict(ratio, 1, multiplier=3)
        assert third.predicted_rel_phase == pytest.approx(math.pi / 2)

    @pytest.mark.parametrize("p, q", COPRIME_RATIOS)
    @pytest.mark.parametrize("N", range(1, 11))
    def test_certificate_identities(self, p, q, N):
        cert = fr_predict((p, q), N)
        if cert is None:
            return
        if N == 1:
            assert (cert.xi0, cert.eta0) == (1, 0)
            assert cert.tau_over_pi == Rational(num=1, den=2)
            assert cert.theta_class == ThetaClass.BALANCED
            assert pst_predict((p, q), N).T == pytest.approx(2 * cert.tau)
            return
        assert p % 2 == 1 and q % 2 == N % 2
        assert cert.xi1 == cert.xi0
        assert cert.eta1 - cert.eta0 == cert.xi0
        assert Fraction(p, q) == Fraction(2 * cert.xi0, 2 * N * cert.xi0 + 4 * cert.eta0)
        assert cert.tau_over_pi == Rational.from_fraction(Fraction(q, 2))
        assert cert.theta_class == ThetaClass.BALANCED
        assert pst_predict((p, q), N).T == pytest.approx(2 * cert.tau)

    @pytest.mark.parametrize("N", [2, 4, 8])
    def test_pure_quadratic_identities(self, N):
        cert = fr_predict(Regime.PURE_QUADRATIC, N)
        assert cert.xi0 == 1
        assert cert.eta0 == -N // 2
        assert cert.theta_class == ThetaClass.BALANCED

    def test_multiplier_cycles_classes(self):
        classes = [fr_predict(Fraction(1), 5, multiplier=k).theta_class for k in range(1, 5)]
        assert classes == [ThetaClass.BALANCED, ThetaClass.PST, ThetaClass.BALANCED, ThetaClass.RETURN]


class TestTheta:
    def test_revival_angle(self):
        assert revival_angle(1, -2, 5) == (Fraction(-1, 4), 1)
        assert revival_angle(1, -2, 4) == (Fraction(1, 4), 1)

    def test_classify(self):
        assert classify_theta(Fraction(0)) == ThetaClass.RETURN
        assert classify_theta(Fraction(-1, 4)) == ThetaClass.BALANCED
        assert classify_theta(Fraction(3, 4)) == ThetaClass.BALANCED
        assert classify_theta(Fraction(1, 2)) == ThetaClass.PST
        assert classify_theta(Fraction(1)) == ThetaClass.RETURN
        with pytest.raises(InvalidParameterError):
            classify_theta(Fraction(1, 8))

    @pytest.mark.parametrize("xi0", range(-4, 5))
    @pytest.mark.parametrize("eta0", range(-3, 4))
    def test_classes_by_parity(self, xi0, eta0):
        classes = theta_classes(xi0, eta0)
        if xi0 % 2:
            assert classes == {ThetaClass.BALANCED}
        else:
            assert classes <= {ThetaClass.RETURN, ThetaClass.PST}

    def test_all_classes_reachable(self):
        reached = set()
        for xi0 in range(0, 4):
            reached |= theta_classes(xi0, 0)
        assert reached == set(ThetaClass)


class TestFidelityScan:
    def test_reaches_pst(self, mixed_chain):
        series = fidelity_scan(mixed_chain, math.pi, 1001)
        assert len(series.times) == 1001
        assert series.times[0] == 0.0 and series.times[-1] == math.pi
        assert series.fidelity[0] == pytest.approx(0.0, abs=1e-14)
        assert series.fidelity[-1] == pytest.approx(1.0, abs=1e-9)
        assert series.argmax_time() == pytest.approx(math.pi)

    def test_nearest_neighbour_closed_form(self):
        spec = ChainSpec(N=4, alpha=0.0, beta=1.0)
        series = fidelity_scan(spec, 2 * math.pi, 501)
        expected = np.sin(np.asarray(series.times) / 2) ** 8
        assert np.max(np.abs(np.asarray(series.fidelity) - expected)) < 1e-12

    def test_threads_do_not_change_output(self, mixed_chain):
        serial = fidelity_scan(mixed_chain, 10.0, 3001, chunk=256)
        threaded = fidelity_scan(mixed_chain, 10.0, 3001, workers=4, chunk=256)
        assert serial == threaded

    def test_chunking_does_not_change_output(self, mixed_chain):
        whole = fidelity_scan(mixed_chain, 10.0, 3001)
        chunked = fidelity_scan(mixed_chain, 10.0, 3001, chunk=100)
        assert np.allclose(whole.fidelity, chunked.fidelity, atol=1e-15, rtol=0)

    @pytest.mark.parametrize("t_max, steps", [(0.0, 10), (-1.0, 10), (1.0, 1), (float("inf"), 10)])
    def test_invalid(self, mixed_chain, t_max, steps):
        with pytest.raises(InvalidParameterError):
            fidelity_scan(mixed_chain, t_max, steps)


class TestCycle:
    def test_mixed_chain(self, mixed_chain):
        report = cycle_verify(mixed_chain, fr_predict(Fraction(1), 5), tol=1e-9)
        assert report.passed
        assert [phase.label for phase in report.phases] == ["fr", "pst", "fr", "return"]
        assert report.phases[0].rel_phase == pytest.approx(report.predicted_rel_phase, abs=1e-6)

    def test_pure_quadratic(self, quadratic_chain):
        cert = fr_predict(Regime.PURE_QUADRATIC, 4, alpha=1)
        report = cycle_verify(quadratic_chain, cert, tol=1e-9)
        assert report.passed
        assert report.phases[0].rel_phase == pytest.approx(math.pi / 2, abs=1e-6)

    def test_rejects_scaled_certificate(self, mixed_chain):
        with pytest.raises(InvalidParameterError):
            cycle_verify(mixed_chain, fr_predict(Fraction(1), 5, multiplier=2))

    def test_two_sites(self):
        spec = ChainSpec(N=1, alpha=0.5, beta=1.0)
        report = cycle_verify(spec, fr_predict(Fraction(1, 2), 1), tol=1e-9)
        assert report.passed
        assert report.phases[0].rel_phase == pytest.approx(-math.pi / 2, abs=1e-6)

    def test_wrong_time_fails(self, mixed_chain):
        cert = fr_predict(Fraction(1), 5).model_copy(update={"tau": 1.4})
        report = cycle_verify(mixed_chain, cert, tol=1e-9)
        assert not report.passed


class TestSoundness:
    """Every predicted certificate is confirmed by the dynamics."""

    @pytest.mark.slow
    @pytest.mark.parametrize("p, q", COPRIME_RATIOS)
    def test_pst_certificates_verified(self, p, q, eigenbasis):
        for N in range(1, 11):
            cert = pst_predict((p, q), N)
            if cert is None:
                continue
            report = verify_mirror_inversion(eigenbasis(N), (p / q, 1.0), cert.T, tol=1e-8)
            assert report.passed, f"N={N} ratio={p}/{q}: deviation {report.max_deviation}"

    @pytest.mark.slow
    @pytest.mark.parametrize("p, q", COPRIME_RATIOS)
    def test_fr_certificates_verified(self, p, q, eigenbasis):
        half = 1 / math.sqrt(2)
        for N in range(1, 11):
            cert = fr_predict((p, q), N)
            if cert is None:
                continue
            state = endpoint_state(eigenbasis(N), (p / q, 1.0), cert.tau)
            assert abs(abs(state.mu) - half) < 1e-9
            assert abs(abs(state.nu) - half) < 1e-9
            assert state.rel_phase == pytest.approx(cert.predicted_rel_phase, abs=1e-6)

    @pytest.mark.slow
    @pytest.mark.parametrize("p, q", [(1, 1), (1, 2), (1, 3), (3, 1), (3, 2)])
    def test_no_pst_without_certificate(self, p, q):
        for N in range(1, 9):
            if pst_predict((p, q), N) is not None:
                continue
            spec = ChainSpec(N=N, alpha=p / q, beta=1.0)
            t_max = 4 * math.pi * q
            series = fidelity_scan(spec, t_max, int(4000 * 4 * q) + 1)
            assert series.max_fidelity() < 1 - 1e-4, f"N={N} ratio={p}/{q}"

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "spec, ratio",
        [
            (ChainSpec(N=5, alpha=1.0, beta=1.0), Fraction(1)),
            (ChainSpec(N=3, alpha=1.0, beta=3.0), Fraction(1, 3)),
            (ChainSpec(N=4, alpha=1.0, beta=0.0), Regime.PURE_QUADRATIC),
            (ChainSpec(N=1, alpha=0.5, beta=1.0), Fraction(1, 2)),
        ],
    )
    @pytest.mark.parametrize("k", range(1, 6))
    def test_scaled_revival_matches_class(self, spec, ratio, k):
        cert = fr_predict(ratio, spec.N, beta=spec.beta, alpha=spec.alpha, multiplier=k)
        phase = revival_check(spec, cert, tol=1e-9)
        assert phase.passed, f"N={spec.N} k={k}: |mu|={phase.mu_abs} |nu|={phase.nu_abs}"
        assert phase.label == cert.theta_class.value
        expected = {
            ThetaClass.BALANCED: (1 / math.sqrt(2), 1 / math.sqrt(2)),
            ThetaClass.PST: (0.0, 1.0),
            ThetaClass.RETURN: (1.0, 0.0),
        }[cert.theta_class]
        assert (phase.mu_abs, phase.nu_abs) == pytest.approx(expected, abs=1e-9)
        if k == 2:
            assert cert.tau == pytest.approx(pst_predict(ratio, spec.N, beta=spec.beta, alpha=spec.alpha).T)

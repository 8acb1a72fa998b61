"""Characteristic equation: closed form vs 4x4 determinant, scaled form,
decomposition into dominant and correction parts, and the hinged-hinged
reference determinant."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shakerbeam import (
    BeamParameters,
    FreqForm,
    RangeError,
    det_M3,
    det_M3_scale,
    det_M_closed,
    det_M_oracle,
    det_M_scale,
    evaluate,
    interface_matrix,
    krylov,
    mu_hat,
    phi,
    phi0,
    phi0_prime,
    phi1,
)
from conftest import EXACT_ROOTS_REF


def growth_factor(mu: float, p: BeamParameters) -> float:
    return p.shaker_mass * math.exp(mu * p.length) / (8.0 * p.linear_density * mu)


class TestInterfaceMatrix:
    def test_row_structure(self, params):
        mu = 1.3
        m = interface_matrix(mu, params)
        a = krylov(mu, params.attachment_point)
        b = krylov(mu, params.attachment_point - params.length)
        mh = mu_hat(mu, params)
        expected = np.array(
            [
                [a.z2, a.z4, -b.z2, -b.z4],
                [a.z1, a.z3, -b.z1, -b.z3],
                [mu**4 * a.z4, a.z2, -(mu**4) * b.z4, -b.z2],
                [mu**4 * a.z3 - mh * a.z2, a.z1 - mh * a.z4, -(mu**4) * b.z3, -b.z1],
            ]
        )
        np.testing.assert_allclose(m, expected, rtol=1e-14)

    def test_mu_hat_definition(self, params):
        mu = 2.4
        expected = params.spring_stiffness / params.flexural_rigidity - (
            params.shaker_mass / params.linear_density
        ) * mu**4
        assert mu_hat(mu, params) == pytest.approx(expected, rel=1e-15)


class TestClosedVsOracle:
    def test_agreement_moderate_mu(self, params):
        for mu in (0.5, 1.7, 4.3, 9.1):
            closed = det_M_closed(mu, params)
            oracle = det_M_oracle(mu, params)
            assert abs(closed - oracle) <= 1e-8 * det_M_scale(mu, params)

    def test_oracle_sign_change_brackets_first_root(self, params):
        assert det_M_oracle(2.5, params) * det_M_oracle(2.6, params) < 0

    def test_attachment_reflection_symmetry(self):
        # The determinant only sees l0 through min(l0, l - l0)
        a = BeamParameters(6.9e10, 1.6875e-10, 0.6075, 1.905, 1.4, 0.1, 7000.0)
        b = BeamParameters(6.9e10, 1.6875e-10, 0.6075, 1.905, 0.505, 0.1, 7000.0)
        mu = 3.3
        assert det_M_closed(mu, a) == pytest.approx(det_M_closed(mu, b), rel=1e-12)

    def test_vanishing_attachment_reduces_to_hinged(self, params):
        # m, kappa -> 0 leaves det = -sin(mu l) sinh(mu l) / mu^2
        tiny = BeamParameters(6.9e10, 1.6875e-10, 0.6075, 1.905, 1.4, 1e-12, 1e-12)
        mu = 2.0
        expected = -math.sin(mu * 1.905) * math.sinh(mu * 1.905) / mu**2
        assert det_M_closed(mu, tiny) == pytest.approx(expected, rel=1e-9)

    def test_closed_form_raises_past_exp_range(self, params):
        with pytest.raises(RangeError, match="phi"):
            det_M_closed(400.0, params)

    def test_oracle_raises_past_conditioning_range(self, params):
        with pytest.raises(RangeError):
            det_M_oracle(120.0, params)

    def test_small_at_refined_root(self, params, exact_roots):
        mu = exact_roots[0].mu
        assert abs(det_M_closed(mu, params)) <= 1e-6 * det_M_scale(mu, params)

    def test_value_regression_near_first_root(self, params):
        assert phi(2.552, params) == pytest.approx(0.03746759209522865, rel=1e-12)


class TestPhi:
    def test_prefactor_identity_spot(self, params):
        for mu in (1.0, 3.0, 7.0):
            lhs = det_M_closed(mu, params)
            rhs = growth_factor(mu, params) * (phi0(mu, params.length, params.attachment_point) + phi1(mu, params))
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_prefactor_identity_sweep(self, params):
        mus = np.linspace(0.5, 300.0, 1200)
        worst = 0.0
        for mu in mus:
            lhs = det_M_closed(mu, params)
            rhs = growth_factor(mu, params) * phi(mu, params)
            envelope = growth_factor(mu, params) * (
                abs(phi0(mu, params.length, params.attachment_point)) + abs(phi1(mu, params))
            )
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), envelope))
        assert worst <= 1e-8

    def test_same_sign_as_determinant(self, params):
        rng = np.random.default_rng(7)
        for mu in rng.uniform(0.3, 60.0, 100):
            s1 = math.copysign(1.0, phi(mu, params))
            s2 = math.copysign(1.0, det_M_closed(mu, params))
            assert s1 == s2

    def test_finite_far_past_overflow(self, params):
        for mu in (500.0, 1e4, 1e6):
            assert math.isfinite(phi(mu, params))

    def test_correction_regression_and_decay(self, params):
        assert phi1(50.0, params) == pytest.approx(-0.40915033542367607, rel=1e-12)
        assert phi1(0.5, params) == pytest.approx(-1819.135612118441, rel=1e-12)
        # dominant correction term is -(8 rho / (m mu)) sh sin: O(1/mu) envelope
        for mu in (50.0, 200.0, 800.0):
            bound = 8.0 * params.linear_density / (params.shaker_mass * mu) + 6.0 + 2.0 * (
                params.spring_stiffness
                * params.linear_density
                / (params.flexural_rigidity * params.shaker_mass * mu**4)
            )
            assert abs(phi1(mu, params)) <= bound
        assert abs(phi1(4000.0, params)) < abs(phi1(50.0, params))

    def test_phi0_prime_finite_difference(self, params):
        l, l0, h = params.length, params.attachment_point, 1e-6
        for mu in (0.7, 3.1, 12.4):
            fd = (phi0(mu + h, l, l0) - phi0(mu - h, l, l0)) / (2 * h)
            assert phi0_prime(mu, l, l0) == pytest.approx(fd, rel=1e-5, abs=1e-5)

    def test_phi0_periodicity_default_geometry(self, params):
        # l0/l = 280/381, so phi0 repeats with period 2 pi * 381 / l = 400 pi
        l, l0 = params.length, params.attachment_point
        period = 2.0 * math.pi * 381.0 / l
        for mu in (0.9, 2.3, 5.8):
            assert phi0(mu + period, l, l0) == pytest.approx(phi0(mu, l, l0), abs=5e-12)

    @given(
        p=st.integers(min_value=1, max_value=11),
        q=st.integers(min_value=2, max_value=12),
        l=st.floats(min_value=0.5, max_value=3.0),
        mu=st.floats(min_value=0.1, max_value=10.0),
    )
    @settings(max_examples=120, deadline=None)
    def test_phi0_periodicity_rational_attachment(self, p, q, l, mu):
        frac = Fraction(p, q)
        if not (0 < frac < 1):
            return
        l0 = float(frac) * l
        period = 2.0 * math.pi * frac.denominator / l
        assert phi0(mu + period, l, l0) == pytest.approx(phi0(mu, l, l0), abs=1e-10)

    def test_phi0_array_broadcast(self, params):
        mus = np.array([0.5, 1.0, 2.0])
        vals = phi0(mus, params.length, params.attachment_point)
        assert vals.shape == mus.shape
        assert vals[1] == phi0(1.0, params.length, params.attachment_point)


class TestDetM3:
    def test_nonzero_at_exact_roots(self, params):
        for mu in EXACT_ROOTS_REF:
            assert abs(det_M3(mu, params.length, params.attachment_point)) > 1.0

    def test_midspan_closed_value(self):
        l = 2.0
        mu = math.pi / l
        expected = math.sinh(math.pi) / (2.0 * mu**2)
        assert det_M3(mu, l, l / 2) == pytest.approx(expected, rel=1e-12)

    def test_small_mu_limit(self, params):
        l, l0 = params.length, params.attachment_point
        assert det_M3(1e-4, l, l0) == pytest.approx(l0 * l, rel=1e-6)
        assert det_M3(1e-5, l, l0) == pytest.approx(det_M3(1e-4, l, l0), rel=1e-6)

    def test_scale_positive_and_dominates(self, params):
        l, l0 = params.length, params.attachment_point
        for mu in (0.5, 3.0, 20.0):
            scale = det_M3_scale(mu, l, l0)
            assert scale > 0
            assert abs(det_M3(mu, l, l0)) <= 4.0 * scale


class TestEvaluate:
    def test_forms_share_zeros(self, params, exact_roots):
        mu = exact_roots[3].mu
        scaled = evaluate(mu, params, FreqForm.PhiSum)
        closed = evaluate(mu, params, FreqForm.ExactClosedForm)
        oracle = evaluate(mu, params, FreqForm.ExactOracle4x4)
        assert abs(scaled.value_scaled) < 1e-8
        assert abs(closed.value_scaled) < 1e-8
        assert abs(oracle.value_scaled) < 1e-6

    def test_forms_agree_off_root(self, params):
        mu = 3.7
        scaled = evaluate(mu, params, FreqForm.PhiSum).value_scaled
        closed = evaluate(mu, params, FreqForm.ExactClosedForm).value_scaled
        assert closed == pytest.approx(scaled, rel=1e-9)

    def test_truncated_form_is_phi0(self, params):
        mu = 2.9
        ev = evaluate(mu, params, FreqForm.TruncatedPhi0)
        assert ev.value_scaled == phi0(mu, params.length, params.attachment_point)

    def test_records_mu_and_form(self, params):
        ev = evaluate(1.1, params, FreqForm.PhiSum)
        assert ev.mu == 1.1
        assert ev.form is FreqForm.PhiSum

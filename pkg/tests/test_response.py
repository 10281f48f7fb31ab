"""Classical transfer function, step response and settling time."""
import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from cryosqueeze.config import CircuitConfig
from cryosqueeze.errors import NoSettlingError
from cryosqueeze.response import (
    build_transfer_function,
    emit_series_csv,
    settling_from_tf,
    settling_time,
    step_response,
    step_response_ode,
)


def default_tf(r_damp=3.5, **config_overrides):
    cfg = replace(CircuitConfig(), **config_overrides).validate() if config_overrides else CircuitConfig()
    dc = cfg.derive()
    return build_transfer_function(
        dc, cfg.transistor(), cfg.oscillators(), cfg.source(), r_0=cfg.r_0, r_damp=r_damp
    )


class TestBuild:
    def test_zero_transconductance_zero_numerator(self):
        tf = default_tf(g_m=0.0)
        assert tf.num == (0.0, 0.0, 0.0)

    def test_structural_zero_at_dc(self):
        tf = default_tf()
        assert tf.num[0] == 0.0 and tf.num[1] == 0.0
        assert tf.den[0] == 1.0
        assert len(tf.den) == 5 and len(tf.num) == 3

    def test_composite_elements(self):
        cfg = CircuitConfig()
        dc = cfg.derive()
        tf = default_tf()
        assert tf.Av0 == pytest.approx(cfg.g_m * cfg.r_0, rel=1e-15)
        assert tf.Cp1 == pytest.approx(cfg.C_gs + cfg.C1 + (cfg.C_gd + cfg.C_f) * tf.Av0, rel=1e-15)
        assert tf.Cp2 == pytest.approx(dc.C_N + cfg.C2, rel=1e-15)
        # pump-induced inductance in parallel with the bare one
        assert 1.0 / tf.Lp2 == pytest.approx(dc.inv_L2N + 1.0 / cfg.L2, rel=1e-13)

    def test_coefficients_match_exact_rational_reference(self):
        cfg = CircuitConfig()
        dc = cfg.derive()
        r_damp = 3.5
        tf = default_tf(r_damp=r_damp)
        l1, lp2 = Fraction(cfg.L1), Fraction(tf.Lp2)
        cp1, cp2 = Fraction(tf.Cp1), Fraction(tf.Cp2)
        rd = Fraction(r_damp)
        exact = (
            Fraction(1),
            (l1 + lp2) / rd,
            l1 * cp1 + lp2 * cp2 + l1 * lp2 / rd**2,
            (lp2 * l1 * cp2 + l1 * cp1 * lp2) / rd,
            lp2 * l1 * cp1 * cp2,
        )
        for got, want in zip(tf.den, exact):
            assert got == pytest.approx(float(want), rel=1e-14)
        assert tf.num[2] == pytest.approx(float(Fraction(cfg.g_m) * lp2 * l1), rel=1e-14)

    def test_verbatim_form_factors_into_undamped_tank(self):
        tf = default_tf(r_damp=None)
        # printed denominator == (L1 Cp1 s^2 + L1 s + 1)(Lp2 Cp2 s^2 + 1)
        l1 = tf.den[1]
        prod = np.polymul([tf.Lp2 * tf.Cp2, 0.0, 1.0], [l1 * tf.Cp1, l1, 1.0])
        assert np.allclose(prod[::-1], tf.den, rtol=1e-12)


class TestSettlingTime:
    def test_first_order_reference(self):
        tau = 3.7e-8
        t = np.linspace(0.0, 15 * tau, 20001)
        y = 1.0 - np.exp(-t / tau)
        got = settling_time(t, y, band=0.02)
        assert got == pytest.approx(tau * math.log(50.0), rel=1e-3)

    def test_flat_response_settles_immediately(self):
        t = np.linspace(0.0, 1.0, 100)
        assert settling_time(t, np.zeros_like(t)) == 0.0

    def test_band_referenced_to_peak_for_bandpass(self):
        # decaying oscillation around zero: settle when envelope < 2% of peak
        t = np.linspace(0.0, 60.0, 60001)
        y = np.exp(-t / 4.0) * np.sin(7.0 * t)
        got = settling_time(t, y, band=0.02)
        assert got == pytest.approx(4.0 * math.log(50.0), rel=0.05)


class TestStepResponse:
    def test_analytic_and_ode_agree_to_peak_fraction(self):
        tf = default_tf()
        # reference peak of the full response
        t_full, y_full = step_response(tf, 4e-7, 1e-10)
        peak = np.max(np.abs(y_full))
        # fine-grid pointwise comparison over several oscillation periods
        duration, dt = 4e-9, 4e-14
        t_a, y_a = step_response(tf, duration, dt)
        t_o, y_o = step_response_ode(tf, duration, dt)
        assert np.array_equal(t_a, t_o)
        assert np.max(np.abs(y_a - y_o)) < 1e-6 * peak

    def test_response_starts_and_ends_at_zero(self):
        tf = default_tf()
        t, y = step_response(tf, 1.2e-6, 1e-10)
        peak = np.max(np.abs(y))
        assert abs(y[0]) < 1e-9 * peak
        assert abs(y[-1]) < 1e-3 * peak  # DC zero: response decays back to 0

    def test_zero_numerator_settles_immediately(self):
        tf = default_tf(g_m=0.0)
        assert settling_from_tf(tf) == 0.0

    def test_verbatim_denominator_never_settles(self):
        tf = default_tf(r_damp=None)
        with pytest.raises(NoSettlingError) as err:
            step_response(tf, 1e-6, 1e-10)
        assert len(err.value.unstable_roots) >= 2

    def test_settling_in_documented_band(self):
        ts = settling_from_tf(default_tf())
        assert 40e-9 <= ts <= 160e-9

    def test_time_scaling_of_reactive_elements(self):
        # L -> k^2 L with C unchanged and R -> k R scales every pole by 1/k,
        # hence the settling time by k
        cfg = CircuitConfig()
        base = settling_from_tf(default_tf(r_damp=3.5))
        k = 3.0
        scaled_tf = default_tf(r_damp=3.5 * k, L1=cfg.L1 * k * k, L2=cfg.L2 * k * k)
        scaled = settling_from_tf(scaled_tf)
        assert scaled == pytest.approx(k * base, rel=2e-2)


def test_series_csv(tmp_path):
    tf = default_tf()
    t, y = step_response(tf, 2e-8, 1e-9)
    out = tmp_path / "step.csv"
    emit_series_csv(t, y, out)
    lines = out.read_text().splitlines()
    assert lines[0] == "t,v_out"
    assert len(lines) == len(t) + 1
    cols = lines[1].split(",")
    assert len(cols) == 2 and float(cols[0]) == 0.0

"""Quadrature variances, photon statistics, second-order correlation and the
EPR witness, checked against analytic Gaussian-state values."""
import math

import numpy as np
import pytest

from cryosqueeze import fock
from cryosqueeze.circuit import SqueezeParams
from cryosqueeze.dynamics import (
    apply_single_mode_squeeze,
    apply_two_mode_squeeze,
    coherent_state,
    displace_modes,
)
from cryosqueeze.errors import DomainError, UndefinedCorrelationError
from cryosqueeze.fock import apply
from cryosqueeze.observables import (
    epr_variance,
    g2_zero,
    minimized_variance,
    photon_stats,
    quadrature_variance,
    report,
)


def squeezed_vacuum(r: float, cutoff: int = 40, phase: float = 0.0):
    sp = SqueezeParams(zeta1=0j, zeta2=r * math.e ** 0 * (math.cos(phase) + 1j * math.sin(phase)), zeta_t1=0j, zeta_t2=0j)
    out = apply_single_mode_squeeze(sp, 1.0, fock.vacuum(cutoff))
    return out.state


class TestQuadratureVariance:
    def test_vacuum_any_angle(self):
        state = fock.vacuum(10)
        for theta in (0.0, 0.7, math.pi / 2):
            assert quadrature_variance(state, 1, theta) == pytest.approx(0.25, abs=1e-14)

    def test_coherent_state_any_angle(self):
        state = coherent_state(0.9 + 0.4j, 30)
        for theta in (0.0, 1.1, math.pi / 2):
            assert quadrature_variance(state, 1, theta) == pytest.approx(0.25, abs=1e-10)

    def test_squeezed_vacuum_aligned_and_anti(self):
        state = squeezed_vacuum(0.5)
        assert quadrature_variance(state, 1, 0.0) == pytest.approx(0.09196986, rel=1e-6)
        assert quadrature_variance(state, 1, math.pi / 2) == pytest.approx(0.67957046, rel=1e-6)

    def test_angle_sweep_single_extremum_pair(self):
        state = squeezed_vacuum(0.4, phase=0.6)
        thetas = np.linspace(0.0, math.pi, 720, endpoint=False)
        var = np.array([quadrature_variance(state, 1, t) for t in thetas])
        # one minimum and one maximum over a period (sign changes of the
        # derivative of a pure sinusoid)
        dv = np.diff(var)
        sign_flips = np.sum(np.abs(np.diff(np.sign(dv))) > 1)
        assert sign_flips == 2
        products = var * np.roll(var, 360)  # var(theta) * var(theta + pi/2)
        assert np.all(products >= 1.0 / 16.0 - 1e-12)

    def test_min_variance_and_angle(self):
        r, phase = 0.35, 0.8
        state = squeezed_vacuum(r, phase=phase)
        var_min, theta_min = minimized_variance(state, 1)
        assert var_min == pytest.approx(math.exp(-2 * r) / 4.0, rel=1e-8)
        assert quadrature_variance(state, 1, theta_min) == pytest.approx(var_min, rel=1e-10)

    def test_rotation_covariance(self):
        # rotating the state by phi shifts the minimizing angle by phi (mod pi)
        state = squeezed_vacuum(0.3, phase=0.2)
        _, theta0 = minimized_variance(state, 1)
        phi = 0.9
        rot = fock.FockOperator(
            state.cutoff1, 0, np.diag(np.exp(1j * phi * np.arange(state.cutoff1)))
        )
        rotated = apply(rot, state)
        _, theta1 = minimized_variance(rotated, 1)
        assert (theta1 - theta0) % math.pi == pytest.approx(phi % math.pi, abs=1e-9)


class TestPhotonStats:
    def test_number_state(self):
        for k in (0, 2, 5):
            n_mean, n_var = photon_stats(fock.number_state(k, 9), 1)
            assert n_mean == pytest.approx(k, abs=1e-12)
            assert n_var == pytest.approx(0.0, abs=1e-12)

    def test_coherent_poisson(self):
        state = coherent_state(math.sqrt(2.0), 40)
        n_mean, n_var = photon_stats(state, 1)
        assert n_mean == pytest.approx(2.0, rel=1e-9)
        assert n_var == pytest.approx(2.0, rel=1e-8)

    def test_squeezed_vacuum_moments(self):
        r = 0.5
        n_mean, n_var = photon_stats(squeezed_vacuum(r), 1)
        sh2 = math.sinh(r) ** 2
        assert n_mean == pytest.approx(sh2, rel=1e-8)
        assert n_mean == pytest.approx(0.2715, rel=1e-3)
        assert n_var == pytest.approx(2 * sh2 * (sh2 + 1), rel=1e-8)
        assert n_var == pytest.approx(0.6904, rel=1e-3)


class TestG2:
    def test_coherent_both_conventions_unity(self):
        state = coherent_state(1.2, 40)
        g2_paper, g2_std = g2_zero(state, 1)
        assert g2_paper == pytest.approx(1.0, abs=1e-9)
        assert g2_std == pytest.approx(1.0, abs=1e-9)

    def test_single_photon_antibunched(self):
        g2_paper, g2_std = g2_zero(fock.number_state(1, 6), 1)
        assert g2_paper == pytest.approx(0.0, abs=1e-12)
        assert g2_std == pytest.approx(0.0, abs=1e-12)

    def test_squeezed_vacuum_reference(self):
        g2_paper, _ = g2_zero(squeezed_vacuum(0.5), 1)
        assert g2_paper == pytest.approx(1.0 + math.cosh(1.0), rel=1e-8)
        assert g2_paper == pytest.approx(2.543, rel=1e-3)

    def test_conventions_agree_at_unit_occupation(self):
        # displaced vacuum with |alpha|^2 = 1: <n> = 1 so both forms coincide
        state = coherent_state(1.0, 40)
        g2_paper, g2_std = g2_zero(state, 1)
        assert g2_paper == pytest.approx(g2_std, abs=1e-9)

    def test_vacuum_is_undefined(self):
        with pytest.raises(UndefinedCorrelationError):
            g2_zero(fock.vacuum(5), 1)


class TestEprVariance:
    def test_two_mode_vacuum(self):
        assert epr_variance(fock.vacuum(5, 5)) == pytest.approx(1.0, abs=1e-12)

    def test_product_of_coherent_states(self):
        state = displace_modes(fock.vacuum(22, 22), 0.5 + 0.3j, -0.4j)
        assert epr_variance(state) == pytest.approx(1.0, abs=1e-9)

    def test_two_mode_squeezed_vacuum(self):
        r = 0.3
        sp = SqueezeParams(zeta1=0j, zeta2=0j, zeta_t1=r + 0j, zeta_t2=0j)
        out = apply_two_mode_squeeze(sp, 1.0, fock.vacuum(16, 16))
        assert epr_variance(out.state) == pytest.approx(math.exp(-0.6), abs=1e-7)
        assert epr_variance(out.state) == pytest.approx(0.5488, rel=1e-3)

    def test_single_mode_rejected(self):
        with pytest.raises(DomainError):
            epr_variance(fock.vacuum(8))


class TestReport:
    def test_vacuum_report(self):
        rep = report(fock.vacuum(6, 6), mode=2, with_epr=True)
        assert rep.var_x == pytest.approx(0.25, abs=1e-12)
        assert rep.var_y == pytest.approx(0.25, abs=1e-12)
        assert rep.n_mean == pytest.approx(0.0, abs=1e-14)
        assert math.isnan(rep.g2)  # vacuum: correlation undefined
        assert rep.epr == pytest.approx(1.0, abs=1e-12)

    def test_uncertainty_invariant(self):
        rep = report(squeezed_vacuum(0.6), mode=1)
        assert rep.var_x * rep.var_y >= 1.0 / 16.0 - 1e-9

"""State generation: steady state, evolution window, full evolution and the
closed-form squeeze generators against analytic oracles."""
import math

import numpy as np
import pytest

from cryosqueeze import fock
from cryosqueeze.circuit import SqueezeParams
from cryosqueeze.config import CircuitConfig
from cryosqueeze.dynamics import (
    EvolutionConfig,
    apply_single_mode_squeeze,
    apply_two_mode_squeeze,
    coherent_state,
    displacement,
    evolve,
    select_t0,
    steady_state,
)
from cryosqueeze.errors import DomainError
from cryosqueeze.fock import expectation
from cryosqueeze.hamiltonian import LinearTerms, build_linear
from cryosqueeze.observables import (
    epr_variance,
    g2_zero,
    minimized_variance,
    photon_stats,
    quadrature_variance,
)


def terms(**overrides) -> LinearTerms:
    vals = dict(omega1=0.0, omega2=0.0, c12=0.0, g12s=0.0, g22s=0.0, v1=0.0, v2=0.0, ip=0.0, igs=0.0)
    vals.update(overrides)
    return LinearTerms(**vals)


def squeeze_drives(zeta1=0j, zeta2=0j, zeta_t1=0j, zeta_t2=0j) -> SqueezeParams:
    return SqueezeParams(zeta1=zeta1, zeta2=zeta2, zeta_t1=zeta_t1, zeta_t2=zeta_t2)


class TestSteadyState:
    def test_no_drive_no_field(self):
        a1, a2 = steady_state(terms(omega1=1e9, omega2=2e9), 1e6, 1e6)
        assert a1 == 0 and a2 == 0

    def test_resonant_single_mode_drive(self):
        # zero detuning, drive strength 1, kappa = 0.002: |A| = 1/(kappa/2)
        a1, a2 = steady_state(terms(ip=1.0), kappa1=0.002, kappa2=0.002)
        assert a1 == 0
        assert abs(a2) == pytest.approx(1000.0, rel=1e-12)

    def test_detuned_drive_closed_form(self):
        w, v, kappa = 3.0e9, 2.0e6, 4.0e6
        a1, _ = steady_state(terms(omega1=w, v1=v), kappa, kappa)
        # 0 = -i(w A + i v) - kappa/2 A  =>  A = v / (i w + kappa/2)
        assert a1 == pytest.approx(v / (1j * w + kappa / 2), rel=1e-10)

    def test_decoupled_modes_solve_independently(self):
        w1, w2, v1, ip, kappa = 2.0e9, 3.0e9, 1.0e6, 2.0e6, 5.0e6
        a1, a2 = steady_state(terms(omega1=w1, omega2=w2, v1=v1, ip=ip), kappa, kappa)
        b1, _ = steady_state(terms(omega1=w1, v1=v1), kappa, kappa)
        _, b2 = steady_state(terms(omega2=w2, ip=ip), kappa, kappa)
        assert a1 == pytest.approx(b1, rel=1e-12)
        assert a2 == pytest.approx(b2, rel=1e-12)

    def test_undamped_is_an_error(self):
        with pytest.raises(DomainError):
            steady_state(terms(), 0.0, 1e6)


class TestEvolutionConfig:
    def test_rejects_nonpositive_window(self):
        with pytest.raises(DomainError):
            EvolutionConfig(t0=0.0)

    def test_rejects_unknown_initial(self):
        with pytest.raises(DomainError):
            EvolutionConfig(t0=1e-9, initial="thermal")

    def test_decay_validation(self):
        cfg = EvolutionConfig(t0=9e-8)
        cfg.validate_decay(1e7, 1e7)  # 1/kappa = 1e-7 > t0: fine
        with pytest.raises(DomainError):
            cfg.validate_decay(1e7, 2e7)


class TestSelectT0:
    def test_decay_bound(self):
        assert select_t0(1e7, 1e7) == pytest.approx(9e-8, rel=1e-12)

    def test_settling_wins_when_shorter(self):
        assert select_t0(5e6, 5e6, settling=80e-9) == pytest.approx(80e-9)

    def test_unequal_decays_use_the_faster(self):
        assert select_t0(1e6, 4e6) == pytest.approx(0.9 / 4e6)

    def test_strictly_below_decay_times(self):
        for k1, k2 in ((1e6, 3e7), (2e7, 2e7), (5e5, 1e6)):
            t0 = select_t0(k1, k2)
            assert t0 < min(1.0 / k1, 1.0 / k2)


class TestEvolve:
    def test_vacuum_fixed_point_up_to_phase(self):
        h = build_linear(terms(omega1=5e9, omega2=6e9), 6, 6)
        out = evolve(h, EvolutionConfig(t0=1e-9))
        overlap = abs(np.vdot(fock.vacuum(6, 6).amplitudes, out.amplitudes))
        assert overlap == pytest.approx(1.0, abs=1e-12)

    def test_pure_squeeze_generator_variance(self):
        # H = i (r/t0) (a^2 - a+^2)/2 acting on mode 2
        r, t0, cutoff = 0.5, 1e-8, 30
        a = fock.annihilation(cutoff)
        gen = 1j * (r / t0) * 0.5 * (a @ a - a.dagger() @ a.dagger())
        h = fock.embed(gen, 2, 2)
        state = evolve(h, EvolutionConfig(t0=t0))
        var_min, _ = minimized_variance(state, mode=2)
        assert var_min == pytest.approx(math.exp(-2 * r) / 4.0, abs=1e-9)
        assert var_min == pytest.approx(0.09197, rel=1e-3)

    def test_pure_drive_gives_coherent_statistics(self):
        h = build_linear(terms(omega2=4e9, ip=0.3 * 4e9), 2, 28)
        state = evolve(h, EvolutionConfig(t0=2e-9))
        g2_paper, g2_std = g2_zero(state, mode=2)
        n_mean, _ = photon_stats(state, mode=2)
        assert n_mean > 0.05
        assert g2_paper == pytest.approx(1.0, abs=1e-6)
        assert g2_std == pytest.approx(1.0, abs=1e-6)

    def test_norm_preserved(self):
        h = build_linear(terms(omega1=5e9, omega2=6e9, c12=1e8, v1=1e8), 8, 8)
        out = evolve(h, EvolutionConfig(t0=5e-9))
        assert out.norm == pytest.approx(1.0, abs=1e-12)

    def test_coherent_initial_state(self):
        h = build_linear(terms(), 14, 2)  # zero Hamiltonian: state unchanged
        cfg = EvolutionConfig(t0=1.0, initial="coherent", alpha1=0.7, alpha2=0.0)
        out = evolve(h, cfg)
        a1 = fock.embed(fock.annihilation(14), 1, 2)
        assert expectation(a1, out) == pytest.approx(0.7, abs=1e-10)


class TestSingleModeSqueeze:
    def test_identity_at_zero_drive(self):
        state = fock.vacuum(10)
        out = apply_single_mode_squeeze(squeeze_drives(), 1e-8, state)
        assert np.allclose(out.state.amplitudes, state.amplitudes)
        assert out.renorm_factor == pytest.approx(1.0, abs=1e-12)
        assert not out.renorm_warning

    def test_first_drive_channel_squeeze_magnitude(self):
        # real zeta1 = 0.25/t0 gives squeeze exponent 2 zeta1 t0 = 0.5
        t0 = 1e-8
        out = apply_single_mode_squeeze(squeeze_drives(zeta1=0.25 / t0), t0, fock.vacuum(34))
        var_min, _ = minimized_variance(out.state, mode=1)
        assert var_min == pytest.approx(math.exp(-1.0) / 4.0, abs=1e-8)

    def test_second_drive_channel_standard_squeeze(self):
        t0, r = 2e-9, 0.3
        out = apply_single_mode_squeeze(squeeze_drives(zeta2=r / t0), t0, fock.vacuum(34))
        var_min, _ = minimized_variance(out.state, mode=1)
        assert var_min == pytest.approx(math.exp(-2 * r) / 4.0, abs=1e-9)
        n_mean, _ = photon_stats(out.state, mode=1)
        assert n_mean == pytest.approx(math.sinh(r) ** 2, abs=1e-9)

    def test_acts_on_mode_two_of_a_pair(self):
        t0, r = 1e-9, 0.4
        out = apply_single_mode_squeeze(squeeze_drives(zeta2=r / t0), t0, fock.vacuum(2, 26))
        var_min, _ = minimized_variance(out.state, mode=2)
        assert var_min == pytest.approx(math.exp(-2 * r) / 4.0, abs=1e-8)
        assert quadrature_variance(out.state, 1, 0.0) == pytest.approx(0.25, abs=1e-12)

    def test_complex_first_drive_is_nonunitary_and_reported(self):
        t0 = 1e-8
        out = apply_single_mode_squeeze(squeeze_drives(zeta1=1.2j / t0), t0, fock.vacuum(40))
        assert out.renorm_factor > 2.0 or out.renorm_factor < 0.5
        assert out.renorm_warning
        assert out.state.norm == pytest.approx(1.0, abs=1e-12)


class TestTwoModeSqueeze:
    def test_identity_at_zero_drive(self):
        state = fock.vacuum(6, 6)
        out = apply_two_mode_squeeze(squeeze_drives(), 1e-8, state)
        assert np.allclose(out.state.amplitudes, state.amplitudes)

    def test_occupation_and_epr(self):
        t0, r = 1e-8, 0.3
        sp = squeeze_drives(zeta_t1=0.2 * r / t0, zeta_t2=0.8 * r / t0)
        out = apply_two_mode_squeeze(sp, t0, fock.vacuum(18, 18))
        n1, _ = photon_stats(out.state, 1)
        n2, _ = photon_stats(out.state, 2)
        assert n1 == pytest.approx(math.sinh(r) ** 2, abs=1e-8)
        assert n2 == pytest.approx(math.sinh(r) ** 2, abs=1e-8)
        assert epr_variance(out.state) == pytest.approx(math.exp(-2 * r), abs=1e-7)
        assert out.renorm_factor == pytest.approx(1.0, abs=1e-10)

    def test_rejects_single_mode_state(self):
        with pytest.raises(DomainError):
            apply_two_mode_squeeze(squeeze_drives(), 1e-8, fock.vacuum(6))


class TestPathAgreement:
    def test_paths_agree_in_static_squeeze_regime(self):
        # rotating-frame regime: no free rotation, squeeze coupling only;
        # the closed-form generator and the full evolution are the same map
        g, t0 = 3.0e7, 1e-8  # |zeta| t0 = 0.15
        lt = terms(g22s=g)
        h = build_linear(lt, 2, 30)
        full = evolve(h, EvolutionConfig(t0=t0))
        sp = squeeze_drives(zeta1=-0.5 * g)
        closed = apply_single_mode_squeeze(sp, t0, fock.vacuum(2, 30))
        v_full = quadrature_variance(full, 2, math.pi / 2)
        v_closed = quadrature_variance(closed.state, 2, math.pi / 2)
        assert v_closed == pytest.approx(v_full, rel=1e-9)

    def test_small_rotation_stays_within_ten_percent(self):
        g, t0 = 3.0e7, 1e-8
        omega2 = 0.02 / t0  # slow residual rotation over the window
        h = build_linear(terms(omega2=omega2, g22s=g), 2, 30)
        full = evolve(h, EvolutionConfig(t0=t0))
        closed = apply_single_mode_squeeze(squeeze_drives(zeta1=-0.5 * g), t0, fock.vacuum(2, 30))
        v_full = quadrature_variance(full, 2, math.pi / 2)
        v_closed = quadrature_variance(closed.state, 2, math.pi / 2)
        assert abs(v_closed - v_full) / v_full < 0.10


class TestUncertaintyBound:
    def test_squeezed_states_saturate_not_violate(self):
        t0 = 1e-8
        for zeta in (0.1 / t0, 0.5j / t0, (0.2 + 0.3j) / t0):
            out = apply_single_mode_squeeze(squeeze_drives(zeta1=zeta), t0, fock.vacuum(40))
            vx = quadrature_variance(out.state, 1, 0.0)
            vy = quadrature_variance(out.state, 1, math.pi / 2)
            assert vx * vy >= 1.0 / 16.0 - 1e-9

    def test_default_pipeline_state(self):
        cfg = CircuitConfig()
        dc = cfg.derive()
        lt = LinearTerms.from_coeffs(dc)
        from cryosqueeze.hamiltonian import build_hamiltonian

        hs = build_hamiltonian(dc, 10, 10)
        t0 = select_t0(cfg.kappa_ratio * dc.omega1, cfg.kappa_ratio * dc.omega2)
        state = evolve(hs, EvolutionConfig(t0=t0))
        for mode in (1, 2):
            vx = quadrature_variance(state, mode, 0.0)
            vy = quadrature_variance(state, mode, math.pi / 2)
            assert vx * vy >= 1.0 / 16.0 - 1e-9


class TestDisplacement:
    def test_coherent_state_amplitude(self):
        alpha = 0.6 - 0.2j
        state = coherent_state(alpha, 25)
        a = fock.annihilation(25)
        assert expectation(a, state) == pytest.approx(alpha, abs=1e-10)

    def test_displacement_is_unitary(self):
        d = displacement(0.8j, 30)
        assert np.linalg.norm(d.mat.conj().T @ d.mat - np.eye(30)) < 1e-10

"""Invariant self-test suite behind the ``check`` CLI command.

Each check returns (name, passed, detail).  The coefficient chain is
cross-checked against an independent re-evaluation in exact rational
arithmetic (``fractions.Fraction``), which shares no code with the float
pipeline.
"""
from __future__ import annotations

import math
import random
from dataclasses import replace
from fractions import Fraction

import numpy as np

from . import fock
from .circuit import (
    OperatingPoint,
    OscillatorParams,
    SourceParams,
    TransistorParams,
    capacitance_matrix,
    compute_aggregates,
    compute_nonlinear_dc_terms,
    compute_pump_corrections,
    compute_quadratic_coefficients,
    compute_squeeze_params,
)
from .config import CircuitConfig
from .dynamics import EvolutionConfig, evolve, select_t0
from .errors import CryosqueezeError
from .hamiltonian import LinearTerms, build_hamiltonian
from .observables import quadrature_variance
from .sweep import evaluate_point


def _rational_chain(vals: dict) -> dict:
    """Exact re-evaluation of the coefficient chain in Fraction arithmetic."""
    f = {k: Fraction(v) for k, v in vals.items()}
    c_a = f["C_in"] + f["C1"] + f["C_gs"] + f["C_f"] + f["C_gd"]
    c_b = f["C_gd"] + f["C_f"] + f["C2"]
    c_c = f["C_f"] + f["C_gd"]
    c_n = 2 * f["g_m2"] * f["phi2"] + 6 * f["g_m3"] * f["phi2"] * f["dphi1"]
    c_np = 2 * f["g_m2"] * f["dphi1"] + 12 * f["g_m3"] * f["dphi1"] ** 2
    g_m2n = f["g_m2"] + 6 * f["g_m3"] * f["dphi1"]
    c_m2 = c_b * (c_a + c_n) - c_c**2
    c_m4 = c_m2**2
    half = c_n + c_a / 2
    c_ap = c_a + c_n
    g_m = f["g_m"]
    cv = f["C_in"] * f["V_RF"]
    out = {
        "C_A": c_a,
        "C_B": c_b,
        "C_C": c_c,
        "C_N": c_n,
        "C_Nprime": c_np,
        "g_m2N": g_m2n,
        "C_M2": c_m2,
        "inv_Cq1": (2 * c_b**2 * half - c_c**2 * c_b) / c_m4,
        "inv_Cq2": (2 * c_c**2 * half + c_ap**2 * c_b - 2 * c_c * c_ap * c_b) / c_m4,
        "inv_Cq1q2": (2 * c_c * c_b * half + c_c * c_ap * c_b - c_c**2 * c_b) / c_m4,
        "inv_Lp2": 2 * g_m**2 * c_b**2 * half / c_m4 + 2 * g_m * c_np * c_b / c_m2,
        "g12": -2 * g_m * c_b**2 * half / c_m4
        + c_np * c_b / c_m2
        - Fraction(3, 2) * g_m * c_c**2 * c_b / c_m4,
        "g22": -2 * g_m * c_b * c_c * half / c_m4
        + c_np * c_c / c_m2
        + g_m * c_c**3 / c_m4
        - g_m * c_ap * c_c * c_b / c_m4,
        "V_q1": (2 * c_b * c_c * cv * half - c_c**2 * c_b * cv) / c_m4,
        "V_q2": (2 * c_b * c_c * cv * half - c_c**3 * cv) / c_m4,
        "I_p2": -2 * g_m * c_b**2 * cv * half / c_m4
        + g_m * c_b * c_c**2 * cv / c_m4
        - c_b * c_np * cv / c_m2
        - f["Ids"],
        "inv_L2N": -4 * g_m2n * g_m * c_b**2 * cv / c_m4,
        "g12N": 2 * g_m2n * c_b**2 * cv / c_m4,
        "g22N": 2 * g_m2n * c_b * c_c * cv / c_m4,
        "I_p2N": g_m2n * c_b**2 * cv**2 / c_m4,
        "inv_L2prime": 1 / f["L2"]
        + 2 * g_m**2 * c_b**2 * half / c_m4
        + 2 * g_m * c_np * c_b / c_m2,
    }
    return out


def _random_element_set(rng: random.Random) -> dict:
    def log_uniform(lo, hi):
        return math.exp(rng.uniform(math.log(lo), math.log(hi)))

    while True:
        vals = {
            "C_in": log_uniform(1e-15, 1e-12),
            "C1": log_uniform(1e-15, 1e-12),
            "C2": log_uniform(1e-15, 1e-12),
            "C_gs": log_uniform(1e-15, 1e-12),
            "C_gd": log_uniform(1e-15, 1e-12),
            "C_f": log_uniform(1e-15, 1e-12),
            "g_m": log_uniform(1e-3, 0.2),
            "g_m2": rng.uniform(0.0, 0.5),
            "g_m3": rng.uniform(0.0, 2.0),
            "phi2": rng.uniform(-1e-11, 1e-11),
            "dphi1": rng.uniform(-0.2, 0.2),
            "V_RF": log_uniform(1e-7, 1e-3),
            "L2": log_uniform(1e-10, 1e-7),
            "Ids": rng.uniform(0.0, 1e-9),
        }
        c_a = vals["C_in"] + vals["C1"] + vals["C_gs"] + vals["C_f"] + vals["C_gd"]
        c_b = vals["C_gd"] + vals["C_f"] + vals["C2"]
        c_c = vals["C_f"] + vals["C_gd"]
        c_n = (2 * vals["g_m2"] + 6 * vals["g_m3"] * vals["dphi1"]) * vals["phi2"]
        if c_b * (c_a + c_n) - c_c**2 > 0:
            return vals


def _float_chain(vals: dict) -> dict:
    t = TransistorParams(
        g_m=vals["g_m"],
        g_m2=vals["g_m2"],
        g_m3=vals["g_m3"],
        C_gs=vals["C_gs"],
        C_gd=vals["C_gd"],
    )
    o = OscillatorParams(L1=1e-8, C1=vals["C1"], L2=vals["L2"], C2=vals["C2"])
    s = SourceParams(C_in=vals["C_in"], C_f=vals["C_f"], V_RF=vals["V_RF"])
    op = OperatingPoint(phi2_dc=vals["phi2"], dphi1_dc=vals["dphi1"])
    aggregates = compute_aggregates(t, o, s)
    c_n, c_np, g_m2n = compute_nonlinear_dc_terms(t, op)
    quad = compute_quadratic_coefficients(aggregates, c_n, c_np, t, s, vals["Ids"])
    inv_l2n, g12n, g22n, i_p2n = compute_pump_corrections(g_m2n, aggregates, quad["C_M2"], t, s)
    return {
        "C_A": aggregates[0],
        "C_B": aggregates[1],
        "C_C": aggregates[2],
        "C_N": c_n,
        "C_Nprime": c_np,
        "g_m2N": g_m2n,
        **quad,
        "inv_L2N": inv_l2n,
        "g12N": g12n,
        "g22N": g22n,
        "I_p2N": i_p2n,
        "inv_L2prime": 1.0 / vals["L2"] + quad["inv_Lp2"],
    }


def check_rational_oracle(n_sets: int = 100, rtol: float = 1e-12, seed: int = 20240815):
    """Float chain vs exact rational re-evaluation on random element sets."""
    rng = random.Random(seed)
    worst = 0.0
    worst_key = ""
    for _ in range(n_sets):
        vals = _random_element_set(rng)
        exact = _rational_chain(vals)
        approx = _float_chain(vals)
        for key, ev in exact.items():
            fv = approx[key]
            ef = float(ev)
            denom = max(abs(ef), 1e-300)
            rel = abs(fv - ef) / denom
            if rel > worst:
                worst, worst_key = rel, key
    return worst <= rtol, f"worst relative deviation {worst:.3e} ({worst_key})"


def check_capacitance_matrix(n_sets: int = 50, seed: int = 7):
    """Symmetric 2x2 matrix times its inverse equals identity to 1e-12."""
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(n_sets):
        vals = _random_element_set(rng)
        c_a = vals["C_in"] + vals["C1"] + vals["C_gs"] + vals["C_f"] + vals["C_gd"]
        c_b = vals["C_gd"] + vals["C_f"] + vals["C2"]
        c_c = vals["C_f"] + vals["C_gd"]
        c_n = (2 * vals["g_m2"] + 6 * vals["g_m3"] * vals["dphi1"]) * vals["phi2"]
        mat, c_m2 = capacitance_matrix(c_a, c_b, c_c, c_n)
        m = np.array(mat)
        if abs(m[0, 1] - m[1, 0]) != 0.0:
            return False, "matrix not symmetric"
        resid = np.linalg.norm(np.linalg.inv(m) @ m - np.eye(2)) / np.sqrt(2.0)
        worst = max(worst, resid)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if not math.isclose(det, c_m2, rel_tol=1e-12):
            return False, "determinant does not match C_M^2"
    return worst <= 1e-12, f"worst inverse residual {worst:.3e}"


def check_zero_nonlinearity():
    """g_m2 = g_m3 = 0 collapses every nonlinearity-derived quantity to 0."""
    cfg = replace(CircuitConfig(), g_m2=0.0, g_m3=0.0).validate()
    dc = cfg.derive()
    zeros = {
        "C_N": dc.C_N,
        "C_Nprime": dc.C_Nprime,
        "g_m2N": dc.g_m2N,
        "inv_L2N": dc.inv_L2N,
        "g12N": dc.g12N,
        "g22N": dc.g22N,
        "I_p2N": dc.I_p2N,
        "g13": dc.g13,
        "g14": dc.g14,
        "g15": dc.g15,
        "g16": dc.g16,
        "g17": dc.g17,
        "g18": dc.g18,
    }
    bad = [k for k, v in zeros.items() if v != 0.0]
    if bad:
        return False, f"nonzero after collapse: {bad}"
    op = replace(cfg.operating_point(), A1=0.3 + 0.1j, A2=-0.2 + 0.4j)
    sp = compute_squeeze_params(dc, op)
    if sp.zeta2 != 0 or sp.zeta_t1 != 0 or sp.zeta_t2 != 0:
        return False, "squeeze-drive strengths zeta2/zeta_t did not collapse"
    return True, "all nonlinearity-derived coefficients are exactly zero"


def check_monotonicity():
    """g_m2N strictly increases with g_m3 at fixed positive dphi1_dc."""
    t0 = TransistorParams()
    op = OperatingPoint(phi2_dc=1e-12, dphi1_dc=0.05)
    prev = -math.inf
    for g3 in np.linspace(0.0, 3.0, 40):
        t = replace(t0, g_m3=float(g3))
        _, _, g_m2n = compute_nonlinear_dc_terms(t, op)
        if g_m2n <= prev:
            return False, f"g_m2N not increasing at g_m3 = {g3}"
        prev = g_m2n
    return True, "g_m2N strictly increasing over the g_m3 grid"


def check_homogeneity():
    """First-order scaling relations (value in volts x1000 scales outputs x1000)."""
    t = TransistorParams()
    op = OperatingPoint(phi2_dc=2e-12, dphi1_dc=0.03)
    c_n_base, _, _ = compute_nonlinear_dc_terms(t, op)
    c_n_scaled, _, _ = compute_nonlinear_dc_terms(t, replace(op, phi2_dc=op.phi2_dc * 1e3))
    if not math.isclose(c_n_scaled, c_n_base * 1e3, rel_tol=1e-12):
        return False, "C_N is not linear in phi2_dc"
    o = OscillatorParams(L1=1e-8, C1=1e-13, L2=1e-8, C2=1e-13)
    s = SourceParams()
    aggregates = compute_aggregates(t, o, s)
    c_n, c_np, g_m2n = compute_nonlinear_dc_terms(t, op)
    base = compute_quadratic_coefficients(aggregates, c_n, c_np, t, s, 0.0)
    scaled = compute_quadratic_coefficients(
        aggregates, c_n, c_np, t, replace(s, V_RF=s.V_RF * 1e3), 0.0
    )
    for key in ("V_q1", "V_q2", "I_p2"):
        if not math.isclose(scaled[key], base[key] * 1e3, rel_tol=1e-12):
            return False, f"{key} is not linear in V_RF"
    for key in ("inv_Cq1", "inv_Cq2", "g12", "g22"):
        if scaled[key] != base[key]:
            return False, f"{key} should not depend on V_RF"
    return True, "scaling relations hold to 1e-12"


def check_hermiticity():
    cfg = CircuitConfig()
    dc = cfg.derive()
    hs = build_hamiltonian(dc, 8, 8)
    rep = hs.hermiticity_report
    if rep["linear"] > 1e-12:
        return False, f"linear defect {rep['linear']:.3e}"
    if rep["total"] > 1e-12:
        return False, f"total defect {rep['total']:.3e}"
    return True, (
        f"linear defect {rep['linear']:.1e}, raw cubic defect {rep['nonlinear_raw']:.2e} "
        f"symmetrized to {rep['nonlinear']:.1e}"
    )


def check_unitarity():
    # single mode at the cutoff cap
    rng = np.random.default_rng(3)
    h40 = rng.normal(size=(40, 40)) + 1j * rng.normal(size=(40, 40))
    h40 = 0.5 * (h40 + h40.conj().T)
    h40 *= 5.0 / np.linalg.norm(h40, 2)
    op = fock.FockOperator(40, 0, h40)
    u = fock.expm(-1j * op)
    defect1 = np.linalg.norm(u.mat.conj().T @ u.mat - np.eye(40))
    # the physical two-mode Hamiltonian over one evolution window
    cfg = CircuitConfig()
    dc = cfg.derive()
    hs = build_hamiltonian(dc, 12, 12)
    t0 = select_t0(cfg.kappa_ratio * dc.omega1, cfg.kappa_ratio * dc.omega2)
    u2 = fock.expm(-1j * t0 * hs.total)
    defect2 = np.linalg.norm(u2.mat.conj().T @ u2.mat - np.eye(144))
    worst = max(defect1, defect2)
    return worst < 1e-9, f"worst ||U^dag U - I||_F = {worst:.3e}"


def check_uncertainty():
    """Heisenberg bound on states produced by both generation paths."""
    cfg = CircuitConfig()
    worst = math.inf
    for paths in (("full",), ("squeeze",)):
        row = evaluate_point(cfg, paths)
        if not math.isfinite(row.var_x2):
            return False, f"{paths[0]} path produced no state"
        worst = min(worst, row.var_x2 * row.var_y2)
    bound = 1.0 / 16.0 - 1e-9
    return worst >= bound, f"smallest var_x*var_y product {worst:.6e} (bound {bound:.6e})"


def check_cutoff_convergence():
    cfg = CircuitConfig()
    row = evaluate_point(cfg, ("full",))
    if not row.converged:
        return False, f"default pipeline not converged: {row.warnings}"
    return True, "default pipeline converges under the cutoff cap"


def check_coherent_baseline():
    """Drive-only model evolves vacuum to a coherent state (var 0.25, g2 1)."""
    cfg = CircuitConfig()
    dc = cfg.derive()
    lt = LinearTerms.from_coeffs(dc).drives_only()
    from .hamiltonian import build_linear

    h = build_linear(lt, 18, 18)
    t0 = select_t0(cfg.kappa_ratio * dc.omega1, cfg.kappa_ratio * dc.omega2)
    state = evolve(h, EvolutionConfig(t0=t0))
    worst = 0.0
    for mode in (1, 2):
        for theta in (0.0, math.pi / 2):
            worst = max(worst, abs(quadrature_variance(state, mode, theta) - 0.25))
    return worst < 1e-6, f"worst |var - 0.25| = {worst:.3e}"


ALL_CHECKS = (
    ("hermiticity", check_hermiticity),
    ("unitarity", check_unitarity),
    ("uncertainty-bound", check_uncertainty),
    ("zero-nonlinearity-collapse", check_zero_nonlinearity),
    ("cutoff-convergence", check_cutoff_convergence),
    ("coherent-baseline", check_coherent_baseline),
    ("rational-oracle", check_rational_oracle),
    ("capacitance-matrix", check_capacitance_matrix),
    ("monotonicity", check_monotonicity),
    ("homogeneity", check_homogeneity),
)


def run_checks(names: tuple = ()) -> list:
    """Run (a subset of) the suite; returns [(name, passed, detail)]."""
    results = []
    for name, fn in ALL_CHECKS:
        if names and name not in names:
            continue
        try:
            passed, detail = fn()
        except CryosqueezeError as exc:
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append((name, bool(passed), detail))
    return results

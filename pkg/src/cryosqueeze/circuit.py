"""Circuit coefficients: from raw element values and a DC operating point to
every derived quantity the quantized model needs.

All functions are pure.  Conventions that needed a decision:

* Thermal noise sources are specified as power spectral densities (4kT/R);
  the scalar drive used by the model is sqrt(PSD * delta_f) with a
  configurable effective bandwidth ``delta_f``.  The combined gate-drain
  drive is formed at amplitude level: Igs2 = Ig2 - Ij2.
* The drain noise maps to R_ds and the junction noise to R_gd (the only
  resistances those labels can refer to in the element list).
* The second resonator's inverse inductance stacks three contributions:
  1/L2' = 1/L2 + 1/L_p2 (transconductance shift) and, with the pump on,
  an additional 1/L_2N proportional to g_m2N.
* In the pump-induced drive correction I_p2N the squared drive factor is
  read as (C_in * V_RF)^2, the only dimensionally consistent combination.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateModeError, DomainError, SingularCapacitanceError

K_BOLTZMANN = 1.380649e-23  # J/K
HBAR = 1.054571817e-34  # J*s


@dataclass(frozen=True)
class TransistorParams:
    """Small-signal transistor network at the operating temperature.

    ``g_m2``/``g_m3`` are the second- and third-order transconductances that
    carry the nonlinearity; ``gamma`` is the empirical channel-noise factor.
    ``L_g``, ``L_d`` and ``C_ds`` are stored for completeness but do not
    enter the model equations.
    """

    g_m: float = 0.045
    g_m2: float = 0.2
    g_m3: float = 1.2
    C_gs: float = 69e-15
    C_gd: float = 19e-15
    C_ds: float = 29e-15
    R_g: float = 0.3
    R_gs: float = 4.0
    R_gd: float = 35.0
    R_ds: float = 500.0
    L_g: float = 75e-12
    L_d: float = 70e-12
    gamma: float = 1.0

    def __post_init__(self):
        for name in ("C_gs", "C_gd", "C_ds", "R_g", "R_gs", "R_gd", "R_ds", "L_g", "L_d"):
            if getattr(self, name) < 0:
                raise DomainError(name, "must be >= 0")
        if self.g_m < 0:
            raise DomainError("g_m", "must be >= 0")


@dataclass(frozen=True)
class OscillatorParams:
    """The two LC resonators and their decay rates."""

    L1: float
    C1: float
    L2: float
    C2: float
    kappa1: float = 0.0
    kappa2: float = 0.0

    def __post_init__(self):
        for name in ("L1", "C1", "L2", "C2"):
            if getattr(self, name) <= 0:
                raise DomainError(name, "must be > 0")
        for name in ("kappa1", "kappa2"):
            if getattr(self, name) < 0:
                raise DomainError(name, "must be >= 0")


@dataclass(frozen=True)
class SourceParams:
    """Input coupling, feedback and drive settings."""

    C_in: float = 100e-15
    C_f: float = 20e-15
    V_RF: float = 1e-6
    T: float = 5.0

    def __post_init__(self):
        if self.C_in < 0:
            raise DomainError("C_in", "must be >= 0")
        if self.C_f < 0:
            raise DomainError("C_f", "must be >= 0")
        if self.T <= 0:
            raise DomainError("T", "must be > 0")


@dataclass(frozen=True)
class OperatingPoint:
    """DC bias point plus (once computed) the steady-state field amplitudes."""

    phi2_dc: float
    dphi1_dc: float
    A1: complex = 0j
    A2: complex = 0j

    def __post_init__(self):
        for name in ("phi2_dc", "dphi1_dc"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(name, "must be finite")
        for name in ("A1", "A2"):
            if not cmath.isfinite(getattr(self, name)):
                raise DomainError(name, "must be finite")


@dataclass(frozen=True)
class NoiseDrives:
    """Equivalent thermal drives.  Current-like entries in amperes; Vi2 is
    the gate-source voltage drive.  Igs2 = Ig2 - Ij2 (amplitude level)."""

    Ig2: float
    Id2: float
    Ij2: float
    Ids2: float
    Vi2: float
    Igs2: float


@dataclass(frozen=True)
class DerivedCoefficients:
    """Every derived symbol of the circuit model, SI units throughout."""

    # capacitance aggregates and nonlinear DC terms
    C_A: float
    C_B: float
    C_C: float
    C_N: float
    C_Nprime: float
    g_m2N: float
    C_M2: float
    # quadratic-form coefficients
    inv_Cq1: float
    inv_Cq2: float
    inv_Cq1q2: float
    inv_Lp2: float
    g12: float
    g22: float
    V_q1: float
    V_q2: float
    I_p2: float
    # pump-induced corrections (all proportional to g_m2N)
    inv_L2N: float
    g12N: float
    g22N: float
    I_p2N: float
    # combined ("primed") values used by the quantized model
    inv_L2prime: float
    g12_prime: float
    g22_prime: float
    I_p2_prime: float
    # mode constants
    C_q1: float
    C_q2: float
    L2_eff: float
    Z1: float
    Z2: float
    omega1: float
    omega2: float
    # cubic couplings of the quantized model
    g13: float
    g14: float
    g15: float
    g16: float
    g17: float
    g18: float
    drives: NoiseDrives


@dataclass(frozen=True)
class SqueezeParams:
    """Complex squeeze-drive strengths (1/s) for the closed-form generators."""

    zeta1: complex
    zeta2: complex
    zeta_t1: complex
    zeta_t2: complex


def compute_noise_drives(t: TransistorParams, temperature: float, delta_f: float = 1.0) -> NoiseDrives:
    """Thermal drives sqrt(4 k_B T / R * delta_f) for each dissipative element.

    The channel drive is sqrt(4 k_B T gamma g_m delta_f).  Raises
    ``DomainError`` naming the offending field for non-positive resistances.
    """
    if temperature <= 0:
        raise DomainError("T", "must be > 0")
    if delta_f < 0:
        raise DomainError("delta_f", "must be >= 0")
    kt4 = 4.0 * K_BOLTZMANN * temperature * delta_f
    for name in ("R_g", "R_ds", "R_gd", "R_gs"):
        if getattr(t, name) <= 0:
            raise DomainError(name, "noise drive needs a positive resistance")
    ig = math.sqrt(kt4 / t.R_g)
    id_ = math.sqrt(kt4 / t.R_ds)
    ij = math.sqrt(kt4 / t.R_gd)
    ids = math.sqrt(kt4 * t.gamma * t.g_m)
    vi = math.sqrt(kt4 / t.R_gs)
    return NoiseDrives(Ig2=ig, Id2=id_, Ij2=ij, Ids2=ids, Vi2=vi, Igs2=ig - ij)


def compute_aggregates(
    t: TransistorParams, o: OscillatorParams, s: SourceParams
) -> tuple[float, float, float]:
    """Node capacitance aggregates (C_A, C_B, C_C)."""
    c_a = s.C_in + o.C1 + t.C_gs + s.C_f + t.C_gd
    c_b = t.C_gd + s.C_f + o.C2
    c_c = s.C_f + t.C_gd
    return c_a, c_b, c_c


def compute_nonlinear_dc_terms(
    t: TransistorParams, op: OperatingPoint
) -> tuple[float, float, float]:
    """Operating-point-induced capacitance C_N, transconductance shift
    C_N' and effective second-order transconductance g_m2N."""
    c_n = 2.0 * t.g_m2 * op.phi2_dc + 6.0 * t.g_m3 * op.phi2_dc * op.dphi1_dc
    c_nprime = 2.0 * t.g_m2 * op.dphi1_dc + 12.0 * t.g_m3 * op.dphi1_dc**2
    g_m2n = t.g_m2 + 6.0 * t.g_m3 * op.dphi1_dc
    return c_n, c_nprime, g_m2n


def capacitance_matrix(c_a: float, c_b: float, c_c: float, c_n: float):
    """The symmetric 2x2 matrix [[C_B, C_C], [C_C, C_A + C_N]] and its
    determinant C_M^2 = C_B (C_A + C_N) - C_C^2."""
    c_m2 = c_b * (c_a + c_n) - c_c * c_c
    return [[c_b, c_c], [c_c, c_a + c_n]], c_m2


def compute_quadratic_coefficients(
    aggregates: tuple[float, float, float],
    c_n: float,
    c_nprime: float,
    t: TransistorParams,
    s: SourceParams,
    ids_drive: float,
) -> dict:
    """The nine quadratic-form/drive coefficients of the flux-charge model.

    ``ids_drive`` is the channel noise drive entering the second-mode drive
    current.  Raises ``SingularCapacitanceError`` when C_M^2 <= 0.
    """
    c_a, c_b, c_c = aggregates
    c_m2 = c_b * (c_a + c_n) - c_c * c_c
    if c_m2 <= 0:
        raise SingularCapacitanceError(
            f"C_M^2 = {c_m2:.6g} F^2 is not positive; capacitance matrix not invertible"
        )
    c_m4 = c_m2 * c_m2
    half = c_n + 0.5 * c_a
    c_ap = c_a + c_n  # undefined primed aggregate, read as C_A + C_N

    inv_cq1 = (2.0 * c_b**2 * half - c_c**2 * c_b) / c_m4
    inv_cq2 = (2.0 * c_c**2 * half + c_ap**2 * c_b - 2.0 * c_c * c_ap * c_b) / c_m4
    inv_cq1q2 = (2.0 * c_c * c_b * half + c_c * c_ap * c_b - c_c**2 * c_b) / c_m4
    inv_lp2 = 2.0 * t.g_m**2 * c_b**2 * half / c_m4 + 2.0 * t.g_m * c_nprime * c_b / c_m2
    g12 = (
        -2.0 * t.g_m * c_b**2 * half / c_m4
        + c_nprime * c_b / c_m2
        - 1.5 * t.g_m * c_c**2 * c_b / c_m4
    )
    g22 = (
        -2.0 * t.g_m * c_b * c_c * half / c_m4
        + c_nprime * c_c / c_m2
        + t.g_m * c_c**3 / c_m4
        - t.g_m * c_ap * c_c * c_b / c_m4
    )
    v_q1 = (2.0 * c_b * c_c * s.C_in * s.V_RF * half - c_c**2 * s.C_in * c_b * s.V_RF) / c_m4
    v_q2 = (2.0 * c_b * c_c * s.C_in * s.V_RF * half - c_c**3 * s.C_in * s.V_RF) / c_m4
    i_p2 = (
        -2.0 * t.g_m * c_b**2 * s.C_in * s.V_RF * half / c_m4
        + t.g_m * c_b * s.C_in * c_c**2 * s.V_RF / c_m4
        - c_b * s.C_in * c_nprime * s.V_RF / c_m2
        - ids_drive
    )
    return {
        "C_M2": c_m2,
        "inv_Cq1": inv_cq1,
        "inv_Cq2": inv_cq2,
        "inv_Cq1q2": inv_cq1q2,
        "inv_Lp2": inv_lp2,
        "g12": g12,
        "g22": g22,
        "V_q1": v_q1,
        "V_q2": v_q2,
        "I_p2": i_p2,
    }


def compute_pump_corrections(
    g_m2n: float,
    aggregates: tuple[float, float, float],
    c_m2: float,
    t: TransistorParams,
    s: SourceParams,
) -> tuple[float, float, float, float]:
    """Pump-induced linear corrections (1/L_2N, g12N, g22N, I_p2N).

    Each is proportional to g_m2N and to the drive V_RF, so both switches
    (nonlinearity off, drive off) zero all four exactly.
    """
    c_a, c_b, c_c = aggregates
    c_m4 = c_m2 * c_m2
    # coefficient of phi2^2 is 1/(2 L_2N)
    inv_l2n = 2.0 * g_m2n * (-2.0 * t.g_m * c_b**2 * s.C_in * s.V_RF) / c_m4
    g12n = g_m2n * 2.0 * c_b**2 * s.C_in * s.V_RF / c_m4
    g22n = g_m2n * 2.0 * c_b * c_c * s.C_in * s.V_RF / c_m4
    i_p2n = g_m2n * c_b**2 * (s.C_in * s.V_RF) ** 2 / c_m4
    return inv_l2n, g12n, g22n, i_p2n


def compute_mode_constants(
    inv_cq1: float, inv_cq2: float, inv_l2_total: float, o: OscillatorParams
) -> tuple[float, float, float, float, float, float, float]:
    """Impedances and frequencies (C_q1, C_q2, L2_eff, Z1, Z2, omega1, omega2).

    ``inv_l2_total`` is the full inverse inductance of the second resonator
    (bare + transconductance shift + pump correction)."""
    if inv_cq1 <= 0 or inv_cq2 <= 0:
        raise DegenerateModeError(
            f"effective inverse capacitances must be positive, got "
            f"1/C_q1={inv_cq1:.6g}, 1/C_q2={inv_cq2:.6g}"
        )
    if inv_l2_total <= 0:
        raise DegenerateModeError(
            f"effective inverse inductance 1/L2' = {inv_l2_total:.6g} is not positive"
        )
    c_q1 = 1.0 / inv_cq1
    c_q2 = 1.0 / inv_cq2
    l2_eff = 1.0 / inv_l2_total
    z1 = math.sqrt(o.L1 / c_q1)
    z2 = math.sqrt(l2_eff / c_q2)
    omega1 = 1.0 / math.sqrt(o.L1 * c_q1)
    omega2 = 1.0 / math.sqrt(l2_eff * c_q2)
    return c_q1, c_q2, l2_eff, z1, z2, omega1, omega2


def compute_cubic_couplings(
    g_m2n: float,
    aggregates: tuple[float, float, float],
    c_m2: float,
    z1: float,
    z2: float,
    g_m: float,
) -> tuple[float, float, float, float, float, float]:
    """The six cubic couplings (g13..g18) of the quantized model, rad/s."""
    _, c_b, c_c = aggregates
    c_m4 = c_m2 * c_m2
    root2 = math.sqrt(HBAR / (2.0 * z2))
    g13 = (1.0 / (2.0 * z1)) * root2 * g_m2n * c_b**2 / c_m4
    g14 = (1.0 / (2.0 * z2)) * root2 * g_m2n * c_c**2 / c_m4
    g15 = (1.0 / math.sqrt(z1 * z2)) * root2 * g_m2n * c_b * c_c / c_m4
    g16 = (z2 / 2.0) * math.sqrt(HBAR * z2 / 2.0) * g_m**2 * g_m2n * c_b**2 / c_m4
    g17 = z2 * math.sqrt(HBAR / (2.0 * z1)) * g_m * g_m2n * c_b**2 / c_m4
    g18 = z2 * root2 * g_m * g_m2n * c_b * c_c / c_m4
    return g13, g14, g15, g16, g17, g18


def compute_squeeze_params(coeffs: DerivedCoefficients, op: OperatingPoint) -> SqueezeParams:
    """Squeeze-drive strengths from the couplings and the steady-state fields."""
    a1, a2 = op.A1, op.A2
    zeta1 = -0.5 * coeffs.g22_prime + coeffs.g18 * a2.real + 1j * coeffs.g14 * a2.imag
    zeta2 = 2.0 * a1.conjugate() * (-coeffs.g17 - 1j * coeffs.g15)
    zeta_t1 = 1j * a2 * coeffs.g15
    zeta_t2 = 1j * a1 * coeffs.g13
    return SqueezeParams(zeta1=zeta1, zeta2=zeta2, zeta_t1=zeta_t1, zeta_t2=zeta_t2)


def derive_coefficients(
    t: TransistorParams,
    o: OscillatorParams,
    s: SourceParams,
    op: OperatingPoint,
    delta_f: float = 1.0,
) -> DerivedCoefficients:
    """Full coefficient chain from raw elements to the quantized couplings."""
    drives = compute_noise_drives(t, s.T, delta_f)
    aggregates = compute_aggregates(t, o, s)
    c_n, c_nprime, g_m2n = compute_nonlinear_dc_terms(t, op)
    quad = compute_quadratic_coefficients(aggregates, c_n, c_nprime, t, s, drives.Ids2)
    inv_l2n, g12n, g22n, i_p2n = compute_pump_corrections(
        g_m2n, aggregates, quad["C_M2"], t, s
    )
    inv_l2prime = 1.0 / o.L2 + quad["inv_Lp2"]
    c_q1, c_q2, l2_eff, z1, z2, omega1, omega2 = compute_mode_constants(
        quad["inv_Cq1"], quad["inv_Cq2"], inv_l2prime + inv_l2n, o
    )
    g13, g14, g15, g16, g17, g18 = compute_cubic_couplings(
        g_m2n, aggregates, quad["C_M2"], z1, z2, t.g_m
    )
    return DerivedCoefficients(
        C_A=aggregates[0],
        C_B=aggregates[1],
        C_C=aggregates[2],
        C_N=c_n,
        C_Nprime=c_nprime,
        g_m2N=g_m2n,
        C_M2=quad["C_M2"],
        inv_Cq1=quad["inv_Cq1"],
        inv_Cq2=quad["inv_Cq2"],
        inv_Cq1q2=quad["inv_Cq1q2"],
        inv_Lp2=quad["inv_Lp2"],
        g12=quad["g12"],
        g22=quad["g22"],
        V_q1=quad["V_q1"],
        V_q2=quad["V_q2"],
        I_p2=quad["I_p2"],
        inv_L2N=inv_l2n,
        g12N=g12n,
        g22N=g22n,
        I_p2N=i_p2n,
        inv_L2prime=inv_l2prime,
        g12_prime=quad["g12"] + g12n,
        g22_prime=quad["g22"] + g22n,
        I_p2_prime=quad["I_p2"] + i_p2n,
        C_q1=c_q1,
        C_q2=c_q2,
        L2_eff=l2_eff,
        Z1=z1,
        Z2=z2,
        omega1=omega1,
        omega2=omega2,
        g13=g13,
        g14=g14,
        g15=g15,
        g16=g16,
        g17=g17,
        g18=g18,
        drives=drives,
    )

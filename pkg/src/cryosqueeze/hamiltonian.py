"""Assembly of the quantized Hamiltonians as Fock-space operators.

Everything is expressed with hbar = 1: Hamiltonian entries carry rad/s and
times are seconds.  The conversion from circuit coefficients to rad/s
couplings happens once, in ``LinearTerms.from_coeffs``.

Operator-ordering note: the same-mode charge-flux product contains an
ordering ambiguity.  For the bilinear part we quantize it in symmetric
order, which keeps exactly the (a^2 - a^dag^2) content and discards an
imaginary constant that would otherwise break Hermiticity.  The cubic part
is evaluated in its written order and the Hermitian part (M + M^dag)/2 is
kept, with the raw defect recorded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import HBAR, DerivedCoefficients
from .errors import ConsistencyError
from .fock import FockOperator, annihilation, embed, hermiticity_defect, hermitize, identity

LINEAR_DEFECT_TOL = 1e-12


@dataclass(frozen=True)
class LinearTerms:
    """Bilinear-model coefficients, pre-scaled to rad/s.

    ``c12``: charge-charge coupling; ``g12s``: cross charge-flux coupling
    (already carrying its impedance ratio); ``g22s``: same-mode squeeze-type
    coupling; ``v1/v2/ip/igs``: drive strengths.
    """

    omega1: float
    omega2: float
    c12: float
    g12s: float
    g22s: float
    v1: float
    v2: float
    ip: float
    igs: float

    @classmethod
    def from_coeffs(cls, dc: DerivedCoefficients) -> "LinearTerms":
        return cls(
            omega1=dc.omega1,
            omega2=dc.omega2,
            c12=dc.inv_Cq1q2 / math.sqrt(dc.Z1 * dc.Z2),
            g12s=dc.g12_prime * math.sqrt(dc.Z2 / dc.Z1),
            g22s=dc.g22_prime,
            v1=dc.V_q1 / math.sqrt(2.0 * HBAR * dc.Z1),
            v2=dc.V_q2 / math.sqrt(2.0 * HBAR * dc.Z2),
            ip=dc.I_p2_prime * math.sqrt(dc.Z2 / (2.0 * HBAR)),
            igs=dc.drives.Igs2 * math.sqrt(dc.Z1 / (2.0 * HBAR)),
        )

    def drives_only(self) -> "LinearTerms":
        """Copy with every bilinear coupling removed (pure displacement model)."""
        return LinearTerms(
            omega1=self.omega1,
            omega2=self.omega2,
            c12=0.0,
            g12s=0.0,
            g22s=0.0,
            v1=self.v1,
            v2=self.v2,
            ip=self.ip,
            igs=self.igs,
        )


@dataclass(frozen=True)
class HamiltonianSet:
    """Linear + nonlinear parts and their sum, with hermiticity diagnostics."""

    linear: FockOperator
    nonlinear: FockOperator
    total: FockOperator
    hermiticity_report: dict


def _mode_ops(cutoff1: int, cutoff2: int):
    a1 = embed(annihilation(cutoff1), 1, cutoff2)
    a2 = embed(annihilation(cutoff2), 2, cutoff1)
    return a1, a2


def build_linear(lt: LinearTerms, cutoff1: int, cutoff2: int) -> FockOperator:
    """Bilinear Hamiltonian on the two-mode space (rad/s units).

    With all couplings and drives zero this is exactly
    omega1 (n1 + 1/2) + omega2 (n2 + 1/2).  Constant (identity) terms such
    as the vacuum offsets are kept: they only contribute a global phase.
    """
    a1, a2 = _mode_ops(cutoff1, cutoff2)
    a1d, a2d = a1.dagger(), a2.dagger()
    one = identity(cutoff1, cutoff2)
    d1, s1 = a1 - a1d, a1 + a1d  # anti-Hermitian / Hermitian mode-1 quadrature pair
    d2, s2 = a2 - a2d, a2 + a2d

    h = lt.omega1 * (a1d @ a1 + 0.5 * one) + lt.omega2 * (a2d @ a2 + 0.5 * one)
    h = h + (-0.5 * lt.c12) * (d1 @ d2)
    h = h + (-0.5j * lt.g12s) * (d1 @ s2)
    # same-mode coupling in symmetric order: (a2^2 - a2dag^2) content only
    h = h + (-0.5j * lt.g22s) * (a2 @ a2 - a2d @ a2d)
    h = h + (-1j * lt.v1) * d1 + (-1j * lt.v2) * d2 + lt.ip * s2 + (-lt.igs) * s1

    defect = hermiticity_defect(h)
    if defect > LINEAR_DEFECT_TOL:
        raise ConsistencyError(
            f"linear Hamiltonian hermiticity defect {defect:.3e} exceeds {LINEAR_DEFECT_TOL}"
        )
    return h


def build_nonlinear(dc: DerivedCoefficients, cutoff1: int, cutoff2: int) -> tuple[FockOperator, float]:
    """Cubic Hamiltonian, written-order products then Hermitian-symmetrized.

    Returns (operator, raw_defect).  Zero couplings give the zero operator.
    """
    a1, a2 = _mode_ops(cutoff1, cutoff2)
    a1d, a2d = a1.dagger(), a2.dagger()
    d1, s1 = a1 - a1d, a1 + a1d
    d2, s2 = a2 - a2d, a2 + a2d

    raw = (
        (-dc.g13) * (d1 @ d1 @ s2)
        + dc.g14 * (s2 @ d2 @ d2)
        + (-dc.g15) * (d1 @ d2 @ s2)
        + dc.g16 * (s2 @ s2 @ s2)
        + 1j * dc.g17 * (d1 @ s2 @ s2)
        + 1j * dc.g18 * (d2 @ s2 @ s2)
    )
    defect = hermiticity_defect(raw)
    if defect > 1e-12:
        return hermitize(raw), defect
    return raw, defect


def build_hamiltonian(
    dc: DerivedCoefficients, cutoff1: int, cutoff2: int, lt: LinearTerms | None = None
) -> HamiltonianSet:
    """Linear + nonlinear Hamiltonian set at the given cutoffs."""
    if lt is None:
        lt = LinearTerms.from_coeffs(dc)
    linear = build_linear(lt, cutoff1, cutoff2)
    nonlinear, raw_defect = build_nonlinear(dc, cutoff1, cutoff2)
    total = linear + nonlinear
    report = {
        "linear": hermiticity_defect(linear),
        "nonlinear_raw": raw_defect,
        "nonlinear": hermiticity_defect(nonlinear),
        "total": hermiticity_defect(total),
    }
    return HamiltonianSet(linear=linear, nonlinear=nonlinear, total=total, hermiticity_report=report)


def classical_quadratic_hessian(lt: LinearTerms):
    """Hessian of the classical bilinear form in (x1, p1, x2, p2) coordinates.

    Independent oracle for the spectrum of ``build_linear``: the normal-mode
    frequencies are the symplectic eigenvalues of this matrix.  Coordinates
    are scaled so a_i = (x_i + i p_i)/sqrt(2).
    """
    import numpy as np

    # H = omega1 (x1^2+p1^2)/2 + omega2 (x2^2+p2^2)/2 + c12 p1 p2
    #     + g12s p1 x2 + g22s x2 p2
    # (the bilinear terms rewritten with a-a^dag = i sqrt(2) p, a+a^dag = sqrt(2) x)
    h = np.zeros((4, 4))
    h[0, 0] = lt.omega1
    h[1, 1] = lt.omega1
    h[2, 2] = lt.omega2
    h[3, 3] = lt.omega2
    h[1, 3] = h[3, 1] = lt.c12
    h[1, 2] = h[2, 1] = lt.g12s
    h[2, 3] = h[3, 2] = lt.g22s
    return h


def normal_mode_frequencies(lt: LinearTerms):
    """Classical normal-mode frequencies from the symplectic spectrum."""
    import numpy as np

    h = classical_quadratic_hessian(lt)
    omega = np.zeros((4, 4))
    omega[0, 1] = omega[2, 3] = 1.0
    omega[1, 0] = omega[3, 2] = -1.0
    eigs = np.linalg.eigvals(omega @ h)
    freqs = np.sort(np.abs(eigs.imag))
    return freqs[0], freqs[3]  # each frequency appears twice (+/- i omega)

"""State generation: steady-state fields, evolution window, unitary evolution
under the full Hamiltonian, and the closed-form squeeze generators.

Sign convention: time evolution is exp(-i H t) with H in rad/s units.

The single-mode squeeze generator is evaluated exactly as its closed form is
written; for complex zeta1 the exponent is not anti-Hermitian, so the result
is renormalized and the renormalization factor reported instead of being
hidden.  The two-mode generator uses the convention
``exp[t (zeta a1^dag a2^dag - zeta* a1 a2)]`` with zeta = zeta_t1 + zeta_t2,
so a real total zeta*t equals the usual two-mode squeeze parameter r
(mean photon number sinh^2 r, EPR variance e^{-2r}).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fock
from .circuit import SqueezeParams
from .errors import ConsistencyError, DegenerateModeError, DomainError
from .fock import FockOperator, QuantumState, annihilation, apply, embed
from .hamiltonian import HamiltonianSet, LinearTerms

NORM_TOL = 1e-9
RENORM_WARN_RANGE = (0.5, 2.0)


@dataclass(frozen=True)
class EvolutionConfig:
    """Window and initial-state selection for a state-generation run."""

    t0: float
    initial: str = "vacuum"  # "vacuum" | "coherent"
    alpha1: complex = 0j
    alpha2: complex = 0j
    path: str = "full"  # "full" | "squeeze"

    def __post_init__(self):
        if self.t0 <= 0:
            raise DomainError("t0", "must be > 0")
        if self.initial not in ("vacuum", "coherent"):
            raise DomainError("initial", f"unknown initial state {self.initial!r}")
        if self.path not in ("full", "squeeze"):
            raise DomainError("path", f"unknown path {self.path!r}")

    def validate_decay(self, kappa1: float, kappa2: float):
        if self.t0 > min(1.0 / kappa1, 1.0 / kappa2):
            raise DomainError("t0", "must not exceed min(1/kappa1, 1/kappa2)")


@dataclass(frozen=True)
class SqueezeOutcome:
    """State produced by a closed-form generator plus its diagnostics."""

    state: QuantumState
    renorm_factor: float
    renorm_warning: bool = field(init=False)

    def __post_init__(self):
        lo, hi = RENORM_WARN_RANGE
        object.__setattr__(self, "renorm_warning", not lo <= self.renorm_factor <= hi)


def steady_state(lt: LinearTerms, kappa1: float, kappa2: float) -> tuple[complex, complex]:
    """Coherent-amplitude fixed point of the driven, damped bilinear model.

    Solves 0 = -i dH/dA_i* - (kappa_i/2) A_i with the conjugate equations
    adjoined (the counter-rotating couplings mix A and A*), then checks the
    solution is self-conjugate.
    """
    if kappa1 <= 0 or kappa2 <= 0:
        raise DomainError("kappa", "decay rates must be > 0 for a steady state")
    # unknown vector (A1, A1*, A2, A2*)
    m = np.zeros((4, 4), dtype=np.complex128)
    b = np.zeros(4, dtype=np.complex128)
    # mode-1 equation
    m[0, 0] = -1j * lt.omega1 - 0.5 * kappa1
    m[0, 2] = -0.5j * lt.c12 + 0.5 * lt.g12s
    m[0, 3] = 0.5j * lt.c12 + 0.5 * lt.g12s
    b[0] = -(lt.v1 + 1j * lt.igs)
    # mode-2 equation
    m[1, 0] = -0.5j * lt.c12 - 0.5 * lt.g12s
    m[1, 1] = 0.5j * lt.c12 + 0.5 * lt.g12s
    m[1, 2] = -1j * lt.omega2 - 0.5 * kappa2
    m[1, 3] = lt.g22s
    b[1] = -(lt.v2 - 1j * lt.ip)
    # conjugate equations: swap (A, A*) columns and conjugate coefficients
    swap = [1, 0, 3, 2]
    for row, src in ((2, 0), (3, 1)):
        for col in range(4):
            m[row, col] = np.conj(m[src, swap[col]])
        b[row] = np.conj(b[src])
    try:
        sol = np.linalg.solve(m, b)
    except np.linalg.LinAlgError as exc:
        raise DegenerateModeError("steady-state system is singular (resonant undamped)") from exc
    a1, a1c, a2, a2c = sol
    if abs(a1c - np.conj(a1)) > 1e-6 * max(1.0, abs(a1)) or abs(
        a2c - np.conj(a2)
    ) > 1e-6 * max(1.0, abs(a2)):
        raise ConsistencyError("steady-state solution is not self-conjugate")
    return complex(a1), complex(a2)


def select_t0(kappa1: float, kappa2: float, settling: float | None = None) -> float:
    """Evolution window: the settling time if known, capped strictly below
    the decay times (0.9 guard factor)."""
    if kappa1 <= 0 or kappa2 <= 0:
        raise DomainError("kappa", "decay rates must be > 0")
    t0 = min(0.9 / kappa1, 0.9 / kappa2)
    if settling is not None and settling > 0:
        t0 = min(t0, settling)
    return t0


def coherent_state(alpha: complex, cutoff: int) -> QuantumState:
    """|alpha> on a single mode via the exact displacement unitary."""
    return apply(displacement(alpha, cutoff), fock.vacuum(cutoff))


def displacement(alpha: complex, cutoff: int) -> FockOperator:
    a = annihilation(cutoff)
    return fock.expm(alpha * a.dagger() - np.conj(alpha) * a)


def displace_modes(state: QuantumState, alpha1: complex, alpha2: complex) -> QuantumState:
    """Apply D(alpha1) (x) D(alpha2) to a two-mode state (or D(alpha1) to a
    single-mode one, ignoring alpha2)."""
    if state.is_single_mode:
        return apply(displacement(alpha1, state.cutoff1), state)
    d1 = embed(displacement(alpha1, state.cutoff1), 1, state.cutoff2)
    d2 = embed(displacement(alpha2, state.cutoff2), 2, state.cutoff1)
    return apply(d1, apply(d2, state))


def _initial_state(cfg: EvolutionConfig, cutoff1: int, cutoff2: int) -> QuantumState:
    state = fock.vacuum(cutoff1, cutoff2)
    if cfg.initial == "coherent":
        state = displace_modes(state, cfg.alpha1, cfg.alpha2)
    return state


def evolve(hs: HamiltonianSet | FockOperator, cfg: EvolutionConfig) -> QuantumState:
    """exp(-i H t0) applied to the configured initial state.

    H is Hermitian by contract, so the propagator is built spectrally
    (eigendecomposition), which is both cheaper and better conditioned than
    the general Pade route at the phases omega*t0 ~ 1e3 this model reaches.
    A norm drift beyond 1e-9 raises ``ConsistencyError`` (it would mean H
    was not Hermitian after all).
    """
    h = hs.total if isinstance(hs, HamiltonianSet) else hs
    state = _initial_state(cfg, h.cutoff1, h.cutoff2)
    if fock.hermiticity_defect(h) > 1e-10:
        raise ConsistencyError("evolve needs a Hermitian Hamiltonian")
    evals, vecs = np.linalg.eigh(h.mat)
    phases = np.exp(-1j * cfg.t0 * evals)
    amp = vecs @ (phases * (vecs.conj().T @ state.amplitudes))
    out = QuantumState(state.cutoff1, state.cutoff2, amp)
    if abs(out.norm - state.norm) > NORM_TOL:
        raise ConsistencyError(
            f"evolution changed the norm by {abs(out.norm - state.norm):.3e}; "
            "Hamiltonian is not Hermitian"
        )
    return out.normalized()


def single_mode_squeeze_generator(sp: SqueezeParams, t0: float, cutoff: int) -> FockOperator:
    """Exponent of the closed-form single-mode squeeze on the second mode."""
    a = annihilation(cutoff)
    ad = a.dagger()
    a2, ad2 = a @ a, ad @ ad
    z1, z2 = sp.zeta1, sp.zeta2
    return t0 * (z1 * (a2 - ad2) + 0.5 * np.conj(z2) * a2 - 0.5 * z2 * ad2)


def apply_single_mode_squeeze(
    sp: SqueezeParams, t0: float, initial: QuantumState
) -> SqueezeOutcome:
    """Closed-form squeeze of the second mode.

    On a two-mode initial state the generator acts on mode 2; on a
    single-mode state it acts directly.  The exponential is generally
    non-unitary for complex zeta1; the output is renormalized and the
    factor reported (outside [0.5, 2] flags an untrustworthy truncation).
    """
    if t0 <= 0:
        raise DomainError("t0", "must be > 0")
    if initial.is_single_mode:
        gen = single_mode_squeeze_generator(sp, t0, initial.cutoff1)
    else:
        gen = embed(single_mode_squeeze_generator(sp, t0, initial.cutoff2), 2, initial.cutoff1)
    raw = apply(fock.expm(gen), initial)
    renorm = raw.norm / initial.norm if initial.norm > 0 else float("inf")
    return SqueezeOutcome(state=raw.normalized(), renorm_factor=renorm)


def two_mode_squeeze_generator(sp: SqueezeParams, t0: float, cutoff1: int, cutoff2: int) -> FockOperator:
    """Exponent t0 (zeta a1dag a2dag - zeta* a1 a2), zeta = zeta_t1 + zeta_t2."""
    zeta = sp.zeta_t1 + sp.zeta_t2
    a1 = embed(annihilation(cutoff1), 1, cutoff2)
    a2 = embed(annihilation(cutoff2), 2, cutoff1)
    return t0 * (zeta * (a1.dagger() @ a2.dagger()) - np.conj(zeta) * (a1 @ a2))


def apply_two_mode_squeeze(sp: SqueezeParams, t0: float, initial: QuantumState) -> SqueezeOutcome:
    """Closed-form two-mode squeeze (unitary; renormalization factor ~ 1)."""
    if t0 <= 0:
        raise DomainError("t0", "must be > 0")
    if initial.is_single_mode:
        raise DomainError("initial", "two-mode squeeze needs a two-mode state")
    gen = two_mode_squeeze_generator(sp, t0, initial.cutoff1, initial.cutoff2)
    raw = apply(fock.expm(gen), initial)
    renorm = raw.norm / initial.norm if initial.norm > 0 else float("inf")
    return SqueezeOutcome(state=raw.normalized(), renorm_factor=renorm)

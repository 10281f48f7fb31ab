"""Classical transfer function of the simplified input-output chain, its
step response and the settling time that feeds the evolution-window choice.

The fourth-order denominator is implemented exactly as the circuit
reduction states it, including its two damping-like terms whose printed
form carries no resistance divisor (dimensionally odd but kept verbatim).
Passing ``r_damp`` divides those two terms by a damping resistance, which
restores dimensional consistency; it is off by default.

The step response is computed two independent ways: analytically by
partial fractions over the denominator roots, and numerically with a
trapezoidal integrator (compiled kernel when available).  ``step_response``
returns the analytic series; ``step_response_ode`` the cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .circuit import DerivedCoefficients, OscillatorParams, SourceParams, TransistorParams
from .errors import DegenerateModeError, DomainError, NoSettlingError


@dataclass(frozen=True)
class TransferFunction:
    """Rational transfer function with ascending-power coefficient lists."""

    num: tuple
    den: tuple
    Lp2: float
    Cp1: float
    Cp2: float
    Av0: float

    def __post_init__(self):
        if len(self.den) != 5 or self.den[0] != 1.0:
            raise DomainError("den", "denominator must be degree 4 with constant term 1")
        if len(self.num) != 3:
            raise DomainError("num", "numerator must be degree 2")

    def poles(self) -> np.ndarray:
        # root-find on the frequency-normalized polynomial: the raw SI
        # coefficients span ~40 decades and would destroy root accuracy
        a = self.den
        w = (a[0] / a[4]) ** 0.25
        scaled = [a[k] * w**k for k in range(5)]
        return np.roots(scaled[::-1]) * w


def build_transfer_function(
    dc: DerivedCoefficients,
    t: TransistorParams,
    o: OscillatorParams,
    s: SourceParams,
    r_0: float = 500.0,
    r_damp: float | None = None,
) -> TransferFunction:
    """Transfer function of the simplified chain.

    Composite elements: Lp2 = L_2N || L2 (the pump-induced inductance in
    parallel with the bare one), Cp1 = C_gs + C1 + (C_gd + C_f) Av0 with
    Av0 = g_m r_0, and Cp2 = C_N + C2.
    """
    if r_0 <= 0:
        raise DomainError("r_0", "must be > 0")
    inv_lp2 = dc.inv_L2N + 1.0 / o.L2
    if inv_lp2 <= 0:
        raise DegenerateModeError(
            f"parallel inductance is degenerate: 1/L_2N + 1/L2 = {inv_lp2:.6g}"
        )
    lp2 = 1.0 / inv_lp2
    av0 = t.g_m * r_0
    cp1 = t.C_gs + o.C1 + (t.C_gd + s.C_f) * av0
    cp2 = dc.C_N + o.C2
    num = (0.0, 0.0, t.g_m * lp2 * o.L1)
    if r_damp is None:
        # verbatim denominator; it factors as
        # (L1 Cp1 s^2 + L1 s + 1)(Lp2 Cp2 s^2 + 1), i.e. the output tank is
        # undamped and the response never settles
        den = (
            1.0,
            o.L1,
            o.L1 * cp1 + lp2 * cp2,
            lp2 * o.L1 * cp2,
            lp2 * o.L1 * cp1 * cp2,
        )
    else:
        # insert the damping resistance into both tank factors
        if r_damp <= 0:
            raise DomainError("r_damp", "must be > 0")
        den = (
            1.0,
            (o.L1 + lp2) / r_damp,
            o.L1 * cp1 + lp2 * cp2 + o.L1 * lp2 / r_damp**2,
            (lp2 * o.L1 * cp2 + o.L1 * cp1 * lp2) / r_damp,
            lp2 * o.L1 * cp1 * cp2,
        )
    return TransferFunction(num=num, den=den, Lp2=lp2, Cp1=cp1, Cp2=cp2, Av0=av0)


def _stable_poles(tf: TransferFunction) -> np.ndarray:
    poles = tf.poles()
    # require a genuinely negative real part; within root-finding noise of the
    # imaginary axis means marginally stable, which never settles either
    unstable = poles[poles.real >= -1e-9 * np.abs(poles)]
    if unstable.size:
        raise NoSettlingError(unstable)
    return poles


def step_response(tf: TransferFunction, duration: float, dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Analytic unit-step response on a uniform grid, by partial fractions.

    The numerator's double zero at s = 0 cancels the step's 1/s pole, so the
    response is a pure sum of decaying pole terms with zero final value.
    """
    if duration <= 0 or dt <= 0 or dt >= duration:
        raise DomainError("duration/dt", "need 0 < dt < duration")
    poles = _stable_poles(tf)
    n2 = tf.num[2]
    a = tf.den
    # Y(s) = n2 s / den(s); residue at p_k is n2 p_k / den'(p_k)
    t_axis = np.arange(0.0, duration + 0.5 * dt, dt)
    y = np.zeros_like(t_axis, dtype=np.complex128)
    for p in poles:
        dden = a[1] + 2.0 * a[2] * p + 3.0 * a[3] * p * p + 4.0 * a[4] * p**3
        y += (n2 * p / dden) * np.exp(p * t_axis)
    return t_axis, y.real


def step_response_ode(tf: TransferFunction, duration: float, dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Trapezoidal-rule unit-step response (controllable canonical form).

    Time is rescaled by the geometric-mean pole frequency before integrating
    so the companion matrix stays well-conditioned in double precision.
    """
    if duration <= 0 or dt <= 0 or dt >= duration:
        raise DomainError("duration/dt", "need 0 < dt < duration")
    _stable_poles(tf)
    a = tf.den
    w = (a[0] / a[4]) ** 0.25
    scaled = [a[k] * w**k / a[0] for k in range(5)]  # monic in sigma = s/w
    amat = np.zeros((4, 4))
    amat[0, 1] = amat[1, 2] = amat[2, 3] = 1.0
    amat[3, :] = [-scaled[0], -scaled[1], -scaled[2], -scaled[3]]
    bvec = np.array([0.0, 0.0, 0.0, 1.0 / a[0]])
    cvec = np.array([tf.num[0], tf.num[1] * w, tf.num[2] * w**2, 0.0])
    nsteps = int(round(duration / dt))
    y = kernels.trapezoid_lti(amat, bvec, cvec, 0.0, dt * w, nsteps)
    t_axis = np.arange(nsteps + 1) * dt
    return t_axis, np.asarray(y)


def settling_time(t_axis: np.ndarray, y: np.ndarray, band: float = 0.02) -> float:
    """Last time the response leaves the +/- band envelope around its final
    value, the band being referenced to the peak deviation.

    The final value is taken as the mean of the trailing 2% of samples
    (zero for band-pass responses, the asymptote otherwise).  Returns 0.0
    when the response never leaves the band.
    """
    if t_axis.shape != y.shape or y.size < 4:
        raise DomainError("series", "need matching t/y arrays with >= 4 samples")
    tail = max(2, y.size // 50)
    final = float(np.mean(y[-tail:]))
    dev = np.abs(y - final)
    peak = float(np.max(dev))
    if peak == 0.0:
        return 0.0
    outside = np.nonzero(dev > band * peak)[0]
    if outside.size == 0:
        return 0.0
    last = outside[-1]
    return float(t_axis[min(last + 1, y.size - 1)])


def settling_from_tf(
    tf: TransferFunction, band: float = 0.02, n_samples: int = 4096
) -> float:
    """Settling time straight from a transfer function (analytic response).

    The window is sized from the slowest pole so the tail is fully resolved.
    """
    poles = _stable_poles(tf)
    slowest = float(np.min(-poles.real))
    duration = 12.0 / slowest
    dt = duration / n_samples
    t_axis, y = step_response(tf, duration, dt)
    return settling_time(t_axis, y, band)


def emit_series_csv(t_axis: np.ndarray, y: np.ndarray, path) -> None:
    """Two-column (t, v_out) CSV for external plotting."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("t,v_out\n")
        for ti, yi in zip(t_axis, y):
            fh.write(f"{ti:.9e},{yi:.9e}\n")

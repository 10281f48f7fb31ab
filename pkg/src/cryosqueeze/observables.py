"""Quadrature, photon-statistics and two-mode-correlation observables.

Quadrature convention: X_theta = (a e^{-i theta} + a^dag e^{i theta}) / 2,
so the vacuum variance is 0.25 in every direction.  The second-order
correlation is reported in two normalizations:

* ``g2_paper``    = 1 + (V(n) - <n>) / <n>    (short-counting-window form)
* ``g2_standard`` = 1 + (V(n) - <n>) / <n>^2  (textbook form)

They coincide at <n> = 1 and both equal 1 for coherent states.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UndefinedCorrelationError
from .fock import FockOperator, QuantumState, annihilation, embed, expectation

G2_MIN_OCCUPATION = 1e-12


def _mode_ops(state: QuantumState, mode: int) -> tuple[FockOperator, int]:
    """Annihilation operator of the requested mode on the state's full space."""
    if state.is_single_mode:
        if mode != 1:
            raise DomainError("mode", "single-mode state has only mode 1")
        return annihilation(state.cutoff1), state.cutoff1
    if mode == 1:
        return embed(annihilation(state.cutoff1), 1, state.cutoff2), state.cutoff1
    if mode == 2:
        return embed(annihilation(state.cutoff2), 2, state.cutoff1), state.cutoff2
    raise DomainError("mode", f"mode must be 1 or 2, got {mode}")


def _moments(state: QuantumState, mode: int) -> tuple[complex, complex, float]:
    """(<a>, <a^2>, <a^dag a>) for one mode."""
    a, _ = _mode_ops(state, mode)
    m1 = expectation(a, state)
    m2 = expectation(a @ a, state)
    n = expectation(a.dagger() @ a, state).real
    return m1, m2, n


def quadrature_variance(state: QuantumState, mode: int, theta: float) -> float:
    """Var(X_theta); 0.25 for vacuum and coherent states."""
    m1, m2, n = _moments(state.normalized(), mode)
    e2 = np.exp(-2j * theta)
    mean_sq = 0.25 * (2.0 * (e2 * m2).real + 2.0 * n + 1.0)
    mean = (np.exp(-1j * theta) * m1).real  # X expectation = Re(e^{-i theta} <a>)
    return float(mean_sq - mean * mean)


def minimized_variance(state: QuantumState, mode: int) -> tuple[float, float]:
    """(smallest quadrature variance over theta, the minimizing angle).

    Analytic: Var(theta) = 1/4 [1 + 2(<n> - |<a>|^2) + 2 Re(e^{-2i theta} mu)]
    with mu = <a^2> - <a>^2, minimized when e^{-2i theta} mu = -|mu|.
    """
    m1, m2, n = _moments(state.normalized(), mode)
    mu = m2 - m1 * m1
    base = 0.25 * (1.0 + 2.0 * (n - abs(m1) ** 2))
    theta_min = 0.5 * (math.pi + math.atan2(mu.imag, mu.real)) % math.pi
    return float(base - 0.5 * abs(mu)), float(theta_min)


def photon_stats(state: QuantumState, mode: int) -> tuple[float, float]:
    """(<n>, Var(n)) for one mode."""
    a, _ = _mode_ops(state.normalized(), mode)
    nop = a.dagger() @ a
    state = state.normalized()
    n_mean = expectation(nop, state).real
    n2 = expectation(nop @ nop, state).real
    return float(n_mean), float(max(n2 - n_mean * n_mean, 0.0))


def g2_zero(state: QuantumState, mode: int) -> tuple[float, float]:
    """Zero-delay second-order correlation, both normalizations."""
    n_mean, n_var = photon_stats(state, mode)
    if n_mean < G2_MIN_OCCUPATION:
        raise UndefinedCorrelationError(
            f"g2 undefined: mean photon number {n_mean:.3e} is below {G2_MIN_OCCUPATION}"
        )
    excess = n_var - n_mean
    return 1.0 + excess / n_mean, 1.0 + excess / n_mean**2


def epr_variance(state: QuantumState) -> float:
    """Two-mode squeezing witness Var(X1 - X2) + Var(Y1 + Y2), vacuum -> 1.

    Values below 1 witness two-mode squeezing.  Raises ``DomainError`` for
    single-mode states.
    """
    if state.is_single_mode:
        raise DomainError("state", "EPR variance needs a two-mode state")
    state = state.normalized()
    a1, _ = _mode_ops(state, 1)
    a2, _ = _mode_ops(state, 2)
    x1 = 0.5 * (a1 + a1.dagger())
    x2 = 0.5 * (a2 + a2.dagger())
    y1 = -0.5j * (a1 - a1.dagger())
    y2 = -0.5j * (a2 - a2.dagger())
    total = 0.0
    for op in (x1 - x2, y1 + y2):
        mean = expectation(op, state).real
        mean_sq = expectation(op @ op, state).real
        total += mean_sq - mean * mean
    return float(total)


@dataclass(frozen=True)
class ObservableReport:
    """All single-mode observables (plus EPR for two-mode states)."""

    mode: int
    var_x: float
    var_y: float
    var_min: float
    theta_min: float
    n_mean: float
    n_var: float
    g2: float
    g2_standard: float
    epr: float | None = None


def report(state: QuantumState, mode: int, with_epr: bool = False) -> ObservableReport:
    state = state.normalized()
    var_x = quadrature_variance(state, mode, 0.0)
    var_y = quadrature_variance(state, mode, math.pi / 2.0)
    var_min, theta_min = minimized_variance(state, mode)
    n_mean, n_var = photon_stats(state, mode)
    if n_mean < G2_MIN_OCCUPATION:
        g2 = g2_std = float("nan")
    else:
        g2, g2_std = g2_zero(state, mode)
    epr = epr_variance(state) if (with_epr and not state.is_single_mode) else None
    return ObservableReport(
        mode=mode,
        var_x=var_x,
        var_y=var_y,
        var_min=var_min,
        theta_min=theta_min,
        n_mean=n_mean,
        n_var=n_var,
        g2=g2,
        g2_standard=g2_std,
        epr=epr,
    )

"""Pure-NumPy implementations of the numerical hot kernels.

Two kernels live here (and, algorithm-for-algorithm, in the optional
compiled twin ``_core_cy``):

* ``expm`` -- dense matrix exponential by Pade approximation with scaling
  and squaring (orders 3/5/7/9/13, selected from the 1-norm).
* ``trapezoid_lti`` -- fixed-step trapezoidal integration of a constant
  linear system ``x' = A x + b u`` with unit-step input, used as the
  independent cross-check for the analytic step response.

``cryosqueeze.kernels`` picks between the two backends at import time.
"""
from __future__ import annotations

import numpy as np

# Pade numerator coefficients b_0..b_m for the diagonal approximants.
_PADE_B = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (
        17643225600.0,
        8821612800.0,
        2075673600.0,
        302702400.0,
        30270240.0,
        2162160.0,
        110880.0,
        3960.0,
        90.0,
        1.0,
    ),
    13: (
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ),
}

# 1-norm thresholds below which each order meets double precision.
_THETA = (
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068),
    (13, 5.371920351148152),
)


def _pade_uv(a: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    b = _PADE_B[order]
    n = a.shape[0]
    ident = np.eye(n, dtype=a.dtype)
    a2 = a @ a
    if order == 3:
        u = a @ (b[3] * a2 + b[1] * ident)
        v = b[2] * a2 + b[0] * ident
        return u, v
    a4 = a2 @ a2
    if order == 5:
        u = a @ (b[5] * a4 + b[3] * a2 + b[1] * ident)
        v = b[4] * a4 + b[2] * a2 + b[0] * ident
        return u, v
    a6 = a4 @ a2
    if order == 7:
        u = a @ (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
        v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident
        return u, v
    if order == 9:
        a8 = a6 @ a2
        u = a @ (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
        v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident
        return u, v
    # order 13
    w = a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
    u = a @ (w + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
    v = a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident
    return u, v


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential of a square complex matrix.

    Raises ``ValueError`` for non-finite input and ``OverflowError`` if the
    result overflows double precision (no silent infinities).
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expm expects a square matrix")
    a = a.astype(np.complex128, copy=True)
    if not np.all(np.isfinite(a)):
        raise ValueError("expm input has non-finite entries")
    n = a.shape[0]
    if n == 0:
        return a
    norm = float(np.max(np.sum(np.abs(a), axis=0)))
    squarings = 0
    order = 13
    for m, theta in _THETA:
        if norm <= theta:
            order = m
            break
    else:
        squarings = max(0, int(np.ceil(np.log2(norm / _THETA[-1][1]))))
        a *= 0.5**squarings
    u, v = _pade_uv(a, order)
    try:
        r = np.linalg.solve(v - u, v + u)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - pathological input
        raise OverflowError("Pade denominator is singular") from exc
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(squarings):
            r = r @ r
    if not np.all(np.isfinite(r)):
        raise OverflowError("expm result overflowed double precision")
    return r


def trapezoid_lti(
    a: np.ndarray, b: np.ndarray, c: np.ndarray, d: float, dt: float, nsteps: int
) -> np.ndarray:
    """Unit-step response of ``x' = A x + B u``, ``y = c.x + d u`` on a fixed grid.

    Returns ``y`` at ``t = 0, dt, ..., nsteps*dt`` using the (A-stable)
    trapezoidal rule with ``x(0) = 0`` and ``u = 1`` for ``t >= 0``.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    n = a.shape[0]
    ident = np.eye(n)
    lhs = ident - 0.5 * dt * a
    step_mat = np.linalg.solve(lhs, ident + 0.5 * dt * a)
    step_vec = np.linalg.solve(lhs, dt * b)
    x = np.zeros(n)
    y = np.empty(nsteps + 1)
    y[0] = d
    for k in range(1, nsteps + 1):
        x = step_mat @ x + step_vec
        y[k] = c @ x + d
    return y

"""Truncated Fock-space linear algebra.

Operators are dense complex matrices over a one- or two-mode photon-number
basis.  Two-mode operators use row-major ordering |n1> (x) |n2> with n2
fastest, i.e. index = n1 * cutoff2 + n2, which is exactly ``np.kron``'s
convention.  Operators and states are immutable after construction (the
underlying arrays are marked read-only), so everything here is safe to use
from multiple threads.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DimensionMismatchError, DomainError


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FockOperator:
    """Dense operator on a truncated Fock space.

    ``cutoff2 == 0`` marks a single-mode operator of dimension ``cutoff1``;
    otherwise the dimension is ``cutoff1 * cutoff2``.
    """

    cutoff1: int
    cutoff2: int
    mat: np.ndarray

    def __post_init__(self):
        mat = np.ascontiguousarray(self.mat, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionMismatchError("operator matrix must be square")
        if mat.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"matrix dimension {mat.shape[0]} does not match cutoffs "
                f"({self.cutoff1}, {self.cutoff2})"
            )
        if not np.all(np.isfinite(mat)):
            raise DomainError("mat", "operator entries must be finite")
        object.__setattr__(self, "mat", _freeze(mat))

    @property
    def dim(self) -> int:
        return self.cutoff1 if self.cutoff2 == 0 else self.cutoff1 * self.cutoff2

    @property
    def is_single_mode(self) -> bool:
        return self.cutoff2 == 0

    def _wrap(self, mat: np.ndarray) -> "FockOperator":
        return FockOperator(self.cutoff1, self.cutoff2, mat)

    def dagger(self) -> "FockOperator":
        return self._wrap(self.mat.conj().T)

    def __add__(self, other: "FockOperator") -> "FockOperator":
        self._check_same_space(other)
        return self._wrap(self.mat + other.mat)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        self._check_same_space(other)
        return self._wrap(self.mat - other.mat)

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        self._check_same_space(other)
        return self._wrap(self.mat @ other.mat)

    def __mul__(self, scalar: complex) -> "FockOperator":
        return self._wrap(self.mat * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "FockOperator":
        return self._wrap(-self.mat)

    def _check_same_space(self, other: "FockOperator"):
        if (self.cutoff1, self.cutoff2) != (other.cutoff1, other.cutoff2):
            raise DimensionMismatchError(
                f"operators act on different spaces: ({self.cutoff1}, {self.cutoff2}) "
                f"vs ({other.cutoff1}, {other.cutoff2})"
            )


@dataclass(frozen=True)
class QuantumState:
    """Complex amplitude vector over the truncated Fock basis."""

    cutoff1: int
    cutoff2: int
    amplitudes: np.ndarray
    norm: float = field(init=False)

    def __post_init__(self):
        amp = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        dim = self.cutoff1 if self.cutoff2 == 0 else self.cutoff1 * self.cutoff2
        if amp.ndim != 1 or amp.shape[0] != dim:
            raise DimensionMismatchError(
                f"state dimension {amp.shape} does not match cutoffs "
                f"({self.cutoff1}, {self.cutoff2})"
            )
        object.__setattr__(self, "amplitudes", _freeze(amp))
        object.__setattr__(self, "norm", float(np.linalg.norm(amp)))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def is_single_mode(self) -> bool:
        return self.cutoff2 == 0

    def normalized(self) -> "QuantumState":
        if self.norm == 0.0:
            raise DomainError("amplitudes", "cannot normalize the zero vector")
        return QuantumState(self.cutoff1, self.cutoff2, self.amplitudes / self.norm)


def vacuum(cutoff1: int, cutoff2: int = 0) -> QuantumState:
    dim = cutoff1 if cutoff2 == 0 else cutoff1 * cutoff2
    amp = np.zeros(dim, dtype=np.complex128)
    amp[0] = 1.0
    return QuantumState(cutoff1, cutoff2, amp)


def number_state(n: int, cutoff: int) -> QuantumState:
    if not 0 <= n < cutoff:
        raise DomainError("n", f"number state {n} does not fit cutoff {cutoff}")
    amp = np.zeros(cutoff, dtype=np.complex128)
    amp[n] = 1.0
    return QuantumState(cutoff, 0, amp)


def annihilation(cutoff: int) -> FockOperator:
    """Single-mode annihilation operator: (n-1, n) entry sqrt(n)."""
    if cutoff < 2:
        raise DomainError("cutoff", "annihilation operator needs cutoff >= 2")
    mat = np.diag(np.sqrt(np.arange(1, cutoff, dtype=np.float64)), k=1)
    return FockOperator(cutoff, 0, mat.astype(np.complex128))


def creation(cutoff: int) -> FockOperator:
    return annihilation(cutoff).dagger()


def identity(cutoff1: int, cutoff2: int = 0) -> FockOperator:
    dim = cutoff1 if cutoff2 == 0 else cutoff1 * cutoff2
    return FockOperator(cutoff1, cutoff2, np.eye(dim, dtype=np.complex128))


def number(cutoff: int) -> FockOperator:
    return FockOperator(cutoff, 0, np.diag(np.arange(cutoff, dtype=np.complex128)))


def embed(op: FockOperator, mode: int, cutoff_other: int) -> FockOperator:
    """Lift a single-mode operator to the two-mode space (op (x) I or I (x) op)."""
    if not op.is_single_mode:
        raise DimensionMismatchError("embed expects a single-mode operator")
    if mode == 1:
        mat = np.kron(op.mat, np.eye(cutoff_other, dtype=np.complex128))
        return FockOperator(op.cutoff1, cutoff_other, mat)
    if mode == 2:
        mat = np.kron(np.eye(cutoff_other, dtype=np.complex128), op.mat)
        return FockOperator(cutoff_other, op.cutoff1, mat)
    raise DomainError("mode", f"mode must be 1 or 2, got {mode}")


def expm(op: FockOperator) -> FockOperator:
    """Matrix exponential of an operator (dense Pade scaling-and-squaring)."""
    return FockOperator(op.cutoff1, op.cutoff2, kernels.expm(op.mat))


def apply(op: FockOperator, state: QuantumState) -> QuantumState:
    if (op.cutoff1, op.cutoff2) != (state.cutoff1, state.cutoff2):
        raise DimensionMismatchError(
            f"operator space ({op.cutoff1}, {op.cutoff2}) does not match state "
            f"({state.cutoff1}, {state.cutoff2})"
        )
    return QuantumState(state.cutoff1, state.cutoff2, op.mat @ state.amplitudes)


def expectation(op: FockOperator, state: QuantumState) -> complex:
    if (op.cutoff1, op.cutoff2) != (state.cutoff1, state.cutoff2):
        raise DimensionMismatchError("operator and state dimensions differ")
    psi = state.amplitudes
    return complex(np.vdot(psi, op.mat @ psi))


def hermiticity_defect(op: FockOperator) -> float:
    """Relative Frobenius defect ||M - M^dag||_F / ||M||_F (0 for Hermitian)."""
    norm = float(np.linalg.norm(op.mat))
    if norm == 0.0:
        return 0.0
    return float(np.linalg.norm(op.mat - op.mat.conj().T)) / norm


def hermitize(op: FockOperator) -> FockOperator:
    """Hermitian part (M + M^dag)/2."""
    return FockOperator(op.cutoff1, op.cutoff2, 0.5 * (op.mat + op.mat.conj().T))

"""Exception types shared across the package."""


class CryosqueezeError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(CryosqueezeError):
    """Bad configuration file or parameter value."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(CryosqueezeError):
    """A physical parameter is outside its valid domain."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class SingularCapacitanceError(CryosqueezeError):
    """The 2x2 node capacitance matrix is not invertible (C_M^2 <= 0)."""


class DegenerateModeError(CryosqueezeError):
    """Effective inductance/capacitance of a mode is not positive, or the
    steady-state system is singular."""


class DimensionMismatchError(CryosqueezeError):
    """Operator/state dimensions are incompatible."""


class UndefinedCorrelationError(CryosqueezeError):
    """g2 requested for a state with (numerically) zero mean photon number."""


class NoSettlingError(CryosqueezeError):
    """Step response does not settle (unstable transfer function)."""

    def __init__(self, unstable_roots):
        self.unstable_roots = list(unstable_roots)
        super().__init__(
            "transfer function is unstable; poles with non-negative real part: "
            + ", ".join(f"{r:.6g}" for r in self.unstable_roots)
        )


class ConsistencyError(CryosqueezeError):
    """An internal numerical contract was violated (e.g. a Hamiltonian that
    should be Hermitian is not)."""

"""cryosqueeze: Fock-space simulator for squeezing and photon statistics in
a cryogenic transistor-coupled two-resonator circuit."""

__version__ = "0.1.0"

from .circuit import (
    DerivedCoefficients,
    NoiseDrives,
    OperatingPoint,
    OscillatorParams,
    SourceParams,
    SqueezeParams,
    TransistorParams,
    compute_squeeze_params,
    derive_coefficients,
)
from .config import CircuitConfig, load_config, parse_config, dump_config
from .dynamics import (
    EvolutionConfig,
    apply_single_mode_squeeze,
    apply_two_mode_squeeze,
    evolve,
    select_t0,
    steady_state,
)
from .fock import FockOperator, QuantumState
from .hamiltonian import HamiltonianSet, LinearTerms, build_hamiltonian
from .kernels import BACKEND
from .observables import ObservableReport, epr_variance, g2_zero, photon_stats, quadrature_variance, report
from .sweep import SweepRow, SweepSpec, emit_csv, run_sweep

__all__ = [
    "BACKEND",
    "CircuitConfig",
    "DerivedCoefficients",
    "EvolutionConfig",
    "FockOperator",
    "HamiltonianSet",
    "LinearTerms",
    "NoiseDrives",
    "ObservableReport",
    "OperatingPoint",
    "OscillatorParams",
    "QuantumState",
    "SourceParams",
    "SqueezeParams",
    "SweepRow",
    "SweepSpec",
    "TransistorParams",
    "apply_single_mode_squeeze",
    "apply_two_mode_squeeze",
    "build_hamiltonian",
    "compute_squeeze_params",
    "derive_coefficients",
    "dump_config",
    "emit_csv",
    "epr_variance",
    "evolve",
    "g2_zero",
    "load_config",
    "parse_config",
    "photon_stats",
    "quadrature_variance",
    "report",
    "run_sweep",
    "select_t0",
    "steady_state",
]

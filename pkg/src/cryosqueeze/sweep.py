"""Parameter sweeps: per-point pipeline, cutoff-convergence control and
deterministic CSV emission.

Each sweep point is evaluated independently (pure function of the config),
so points may run concurrently; rows are always assembled in parameter
order.  A point that fails numerically produces a row of NaNs with the
error recorded in its warnings instead of aborting the sweep.

Two state-generation paths exist per point:

* ``full``    -- evolve the vacuum under the complete Hamiltonian.
* ``squeeze`` -- the closed-form squeeze generators, displaced afterwards
  by the steady-state fields (squeezed-coherent construction).

When both are requested the ``full`` results populate the row and a
relative mode-2 variance disagreement beyond 10% is recorded as a warning.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import fock
from .circuit import compute_squeeze_params
from .config import CircuitConfig, with_value
from .dynamics import (
    EvolutionConfig,
    apply_single_mode_squeeze,
    apply_two_mode_squeeze,
    displace_modes,
    displacement,
    evolve,
    select_t0,
    steady_state,
)
from .errors import CryosqueezeError
from .fock import apply
from .hamiltonian import LinearTerms, build_hamiltonian
from .observables import epr_variance, report

SWEEPABLE = ("g_m", "g_m2", "g_m3", "C_f", "V_RF", "kappa")
CSV_HEADER = "param,var_x2,var_y2,g2_paper,g2_standard,n_mean,zeta1_mag,zeta2_mag,epr,converged"

_OBS_KEYS = ("var_x2", "var_y2", "g2_paper", "g2_standard", "n_mean", "epr")


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter over a linear range, everything else fixed."""

    parameter: str
    start: float
    stop: float
    points: int
    fixed: CircuitConfig
    paths: tuple = ("full",)

    def __post_init__(self):
        if self.parameter not in SWEEPABLE:
            raise CryosqueezeError(
                f"cannot sweep {self.parameter!r}; choose one of {SWEEPABLE}"
            )
        if not self.start < self.stop:
            raise CryosqueezeError("sweep needs start < stop")
        if self.points < 2:
            raise CryosqueezeError("sweep needs at least 2 points")
        for p in self.paths:
            if p not in ("full", "squeeze"):
                raise CryosqueezeError(f"unknown path {p!r}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepRow:
    """One record of the swept observable set (mode-2 quantities)."""

    param_value: float
    var_x2: float
    var_y2: float
    g2_paper: float
    g2_standard: float
    n_mean: float
    zeta1_mag: float
    zeta2_mag: float
    epr: float
    converged: bool
    warnings: tuple = ()


def _apply_parameter(cfg: CircuitConfig, parameter: str, value: float) -> CircuitConfig:
    key = "kappa_ratio" if parameter == "kappa" else parameter
    return with_value(cfg, key, value)


def _point_quantities(cfg: CircuitConfig):
    """Shared per-point pipeline up to (but excluding) state generation."""
    dc = cfg.derive()
    lt = LinearTerms.from_coeffs(dc)
    kappa1 = cfg.kappa_ratio * dc.omega1
    kappa2 = cfg.kappa_ratio * dc.omega2
    a1, a2 = steady_state(lt, kappa1, kappa2)
    op = replace(cfg.operating_point(), A1=a1, A2=a2)
    sp = compute_squeeze_params(dc, op)
    t0 = select_t0(kappa1, kappa2)
    return dc, lt, sp, t0, a1, a2


def _observables_full(dc, lt, t0, c1, c2) -> dict:
    hs = build_hamiltonian(dc, c1, c2, lt=lt)
    state = evolve(hs, EvolutionConfig(t0=t0))
    rep = report(state, mode=2, with_epr=True)
    return {
        "var_x2": rep.var_x,
        "var_y2": rep.var_y,
        "g2_paper": rep.g2,
        "g2_standard": rep.g2_standard,
        "n_mean": rep.n_mean,
        "epr": rep.epr,
    }


def _observables_squeeze(sp, t0, a1, a2, c1, c2) -> tuple[dict, list]:
    warnings = []
    out2 = apply_single_mode_squeeze(sp, t0, fock.vacuum(c2))
    if out2.renorm_warning:
        warnings.append(f"squeeze_renorm_factor={out2.renorm_factor:.3g}")
    mode2 = apply(displacement(a2, c2), out2.state).normalized()
    rep = report(mode2, mode=1)
    out_t = apply_two_mode_squeeze(sp, t0, fock.vacuum(c1, c2))
    pair = displace_modes(out_t.state, a1, a2).normalized()
    obs = {
        "var_x2": rep.var_x,
        "var_y2": rep.var_y,
        "g2_paper": rep.g2,
        "g2_standard": rep.g2_standard,
        "n_mean": rep.n_mean,
        "epr": epr_variance(pair),
    }
    return obs, warnings


def _close(a: float, b: float, rtol: float) -> bool:
    if math.isnan(a) and math.isnan(b):
        return True
    return abs(a - b) <= max(rtol * max(abs(a), abs(b)), 1e-9)


def _converged_observables(eval_at, cfg: CircuitConfig) -> tuple[dict, bool, list]:
    """Raise both cutoffs in steps until every observable moves < 0.1%.

    Returns (observables at the larger cutoff, converged flag, warnings).
    """
    warnings: list = []
    c1, c2 = cfg.cutoff1, cfg.cutoff2
    step, cap, rtol = cfg.cutoff_step, cfg.cutoff_max, cfg.convergence_rtol
    prev = eval_at(c1, c2)
    while True:
        n1, n2 = c1 + step, c2 + step
        if max(n1, n2) > cap:
            warnings.append(f"not_converged_at_cutoff_{max(c1, c2)}")
            return prev, False, warnings
        cur = eval_at(n1, n2)
        if all(_close(prev[k], cur[k], rtol) for k in _OBS_KEYS):
            return cur, True, warnings
        prev, c1, c2 = cur, n1, n2


def evaluate_point(cfg: CircuitConfig, paths: tuple) -> SweepRow:
    """Full pipeline for one parameter value."""
    param_value = float("nan")  # set by caller through the row copy
    warnings: list = []
    nan_obs = {k: float("nan") for k in _OBS_KEYS}
    try:
        dc, lt, sp, t0, a1, a2 = _point_quantities(cfg)
    except CryosqueezeError as exc:
        return SweepRow(
            param_value=param_value,
            var_x2=float("nan"),
            var_y2=float("nan"),
            g2_paper=float("nan"),
            g2_standard=float("nan"),
            n_mean=float("nan"),
            zeta1_mag=float("nan"),
            zeta2_mag=float("nan"),
            epr=float("nan"),
            converged=False,
            warnings=(f"pipeline_error: {exc}",),
        )
    results: dict = {}
    converged: dict = {}
    for path in paths:
        try:
            if path == "full":
                obs, ok, warns = _converged_observables(
                    lambda c1, c2: _observables_full(dc, lt, t0, c1, c2), cfg
                )
            else:
                path_warns: list = []

                def eval_squeeze(c1, c2):
                    obs_i, w = _observables_squeeze(sp, t0, a1, a2, c1, c2)
                    path_warns.extend(w)
                    return obs_i

                obs, ok, warns = _converged_observables(eval_squeeze, cfg)
                warns = list(dict.fromkeys(path_warns)) + warns
            results[path] = obs
            converged[path] = ok
            warnings.extend(f"{path}:{w}" for w in warns)
        except CryosqueezeError as exc:
            results[path] = dict(nan_obs)
            converged[path] = False
            warnings.append(f"{path}_error: {exc}")
    primary = "full" if "full" in results else "squeeze"
    obs = results[primary]
    if len(results) == 2:
        v_full, v_sq = results["full"]["var_y2"], results["squeeze"]["var_y2"]
        if math.isfinite(v_full) and math.isfinite(v_sq) and v_full != 0:
            rel = abs(v_full - v_sq) / max(abs(v_full), abs(v_sq))
            if rel > 0.10:
                warnings.append(f"paths_disagree_var_y2_rel={rel:.3g}")
    return SweepRow(
        param_value=param_value,
        var_x2=obs["var_x2"],
        var_y2=obs["var_y2"],
        g2_paper=obs["g2_paper"],
        g2_standard=obs["g2_standard"],
        n_mean=obs["n_mean"],
        zeta1_mag=abs(sp.zeta1),
        zeta2_mag=abs(sp.zeta2),
        epr=obs["epr"] if obs["epr"] is not None else float("nan"),
        converged=converged[primary],
        warnings=tuple(warnings),
    )


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list:
    """Evaluate every sweep point; rows come back in parameter order."""
    values = spec.values()

    def point(value: float) -> SweepRow:
        cfg = _apply_parameter(spec.fixed, spec.parameter, float(value))
        row = evaluate_point(cfg, spec.paths)
        return replace(row, param_value=float(value))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(point, values))
    else:
        rows = [point(v) for v in values]
    return rows


def _fmt(x: float) -> str:
    return f"{x:.9e}"


def format_csv(rows) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    _fmt(r.param_value),
                    _fmt(r.var_x2),
                    _fmt(r.var_y2),
                    _fmt(r.g2_paper),
                    _fmt(r.g2_standard),
                    _fmt(r.n_mean),
                    _fmt(r.zeta1_mag),
                    _fmt(r.zeta2_mag),
                    _fmt(r.epr),
                    "true" if r.converged else "false",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def emit_csv(rows, path) -> None:
    """Deterministic CSV: identical rows give byte-identical files."""
    if not rows:
        raise CryosqueezeError("emit_csv needs at least one row")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_csv(rows))

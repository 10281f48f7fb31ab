"""Command-line interface.

Subcommands: ``coeffs`` (print derived coefficients), ``sweep`` (parameter
sweep to CSV), ``step-response`` (classical step response to CSV) and
``check`` (invariant self-test suite).  Exit codes: 0 success, 1 usage or
validation error, 2 numeric failure.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import fields

from . import __version__, kernels
from .config import dump_config, load_config
from .errors import ConfigError, CryosqueezeError, DomainError
from .response import build_transfer_function, settling_time, step_response, emit_series_csv
from .selfcheck import run_checks
from .sweep import SweepSpec, emit_csv, run_sweep

_UNITS = {
    "C_A": "F", "C_B": "F", "C_C": "F", "C_N": "F", "C_Nprime": "A/V",
    "g_m2N": "A/V^2", "C_M2": "F^2", "inv_Cq1": "1/F", "inv_Cq2": "1/F",
    "inv_Cq1q2": "1/F", "inv_Lp2": "1/H", "g12": "1/s", "g22": "1/s",
    "V_q1": "V", "V_q2": "V", "I_p2": "A", "inv_L2N": "1/H", "g12N": "1/s",
    "g22N": "1/s", "I_p2N": "A", "inv_L2prime": "1/H", "g12_prime": "1/s",
    "g22_prime": "1/s", "I_p2_prime": "A", "C_q1": "F", "C_q2": "F",
    "L2_eff": "H", "Z1": "ohm", "Z2": "ohm", "omega1": "rad/s",
    "omega2": "rad/s", "g13": "rad/s", "g14": "rad/s", "g15": "rad/s",
    "g16": "rad/s", "g17": "rad/s", "g18": "rad/s",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cryosqueeze",
        description="Quantized two-resonator circuit simulator (kernel backend: %s)"
        % kernels.BACKEND,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_coeffs = sub.add_parser("coeffs", help="print every derived coefficient")
    p_coeffs.add_argument("--config", default=None, help="config file path")

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep and write CSV")
    p_sweep.add_argument("--param", required=True, help="g_m|g_m2|g_m3|C_f|V_RF|kappa")
    p_sweep.add_argument("--start", required=True, type=float)
    p_sweep.add_argument("--stop", required=True, type=float)
    p_sweep.add_argument("--points", required=True, type=int)
    p_sweep.add_argument("--config", default=None)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--path", default="full", choices=["full", "squeeze", "both"])
    p_sweep.add_argument("--jobs", default=1, type=int, help="concurrent sweep points")

    p_step = sub.add_parser("step-response", help="classical step response to CSV")
    p_step.add_argument("--config", default=None)
    p_step.add_argument("--out", required=True)
    p_step.add_argument("--samples", default=4096, type=int)

    p_check = sub.add_parser("check", help="run the invariant self-test suite")
    p_check.add_argument("names", nargs="*", help="optional subset of check names")
    return parser


def _cmd_coeffs(args) -> int:
    cfg = load_config(args.config)
    print(dump_config(cfg), end="")
    dc = cfg.derive()
    print("# derived coefficients")
    for f in fields(dc):
        if f.name == "drives":
            continue
        print(f"{f.name} = {getattr(dc, f.name):.9e}  [{_UNITS.get(f.name, '-')}]")
    d = dc.drives
    for name in ("Ig2", "Id2", "Ij2", "Ids2", "Igs2"):
        print(f"{name} = {getattr(d, name):.9e}  [A]")
    print(f"Vi2 = {d.Vi2:.9e}  [V]")
    return 0


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    paths = ("full", "squeeze") if args.path == "both" else (args.path,)
    spec = SweepSpec(
        parameter=args.param,
        start=args.start,
        stop=args.stop,
        points=args.points,
        fixed=cfg,
        paths=paths,
    )
    print(dump_config(cfg), end="")
    rows = run_sweep(spec, jobs=max(1, args.jobs))
    emit_csv(rows, args.out)
    flagged = sum(1 for r in rows if not r.converged)
    print(f"# wrote {len(rows)} rows to {args.out} ({flagged} flagged non-converged)")
    for row in rows:
        for warning in row.warnings:
            print(f"# warn {row.param_value:.6g}: {warning}")
    return 0


def _cmd_step(args) -> int:
    cfg = load_config(args.config)
    print(dump_config(cfg), end="")
    dc = cfg.derive()
    tf = build_transfer_function(
        dc,
        cfg.transistor(),
        cfg.oscillators(),
        cfg.source(),
        r_0=cfg.r_0,
        r_damp=cfg.r_damp if cfg.r_damp > 0 else None,
    )
    import numpy as np

    poles = tf.poles()
    duration = 12.0 / float(np.min(-poles.real))
    dt = duration / args.samples
    t_axis, y = step_response(tf, duration, dt)
    emit_series_csv(t_axis, y, args.out)
    ts = settling_time(t_axis, y)
    print(f"# wrote {len(t_axis)} samples to {args.out}; settling time {ts:.4e} s")
    return 0


def _cmd_check(args) -> int:
    results = run_checks(tuple(args.names))
    if not results:
        print(f"no such check: {' '.join(args.names)}")
        return 1
    failed = 0
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        failed += 0 if passed else 1
    return 0 if failed == 0 else 2


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        if args.command == "coeffs":
            return _cmd_coeffs(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "step-response":
            return _cmd_step(args)
        return _cmd_check(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CryosqueezeError, OverflowError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 numerical instability.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .config import (
    SCHEMA_VERSION,
    apply_overrides,
    build_impedance,
    build_pulse,
    build_solver_config,
    config_hash,
    eps_list,
    load_config,
    write_config,
)
from .coefficient import travel_time_transform
from .diagnostics import uniform_bound_summary
from .errors import ConfigError, DiagnosticsError, InstabilityError
from .experiments import (
    decay_experiment,
    echo_experiment,
    sweep_epsilon,
    theorem_dashboard,
    write_decay_csv,
)
from .io import fmt, snapshot_filename, write_csv, write_diagnostics, write_snapshot
from .mollifier import bump_mollifier, moderateness_scan, mollifier_sensitivity
from .solver_fd import run


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="echowave", description="Dissipative wave equation simulator with regularized jump coefficients")
    p.add_argument("--version", action="version", version=f"echowave {__version__} (config schema {SCHEMA_VERSION})")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("simulate", "single run: snapshots and diagnostics CSVs"),
        ("sweep", "epsilon sweep with a convergence table"),
        ("moderateness", "derivative scaling scan of the regularized coefficient"),
        ("sensitivity", "two-mollifier difference table"),
        ("echo", "echo experiment with peak tracking"),
        ("decay", "decay fits over a long horizon"),
        ("dashboard", "decay-regime classification and measured constants"),
        ("transform", "travel-time transform of an impedance profile"),
    ]:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--config", required=True, help="path to the INI config file")
        sp.add_argument("--out", default="runs", help="output root directory")
        sp.add_argument("-O", "--override", action="append", default=[], metavar="SECTION.KEY=VALUE")
        sp.add_argument("--ci", action="store_true", help="reduced resolution: dx and dt scaled by 4")
        sp.add_argument("--jobs", type=int, default=os.cpu_count(), help="parallel runs for sweeps")
    return p


def _run_dir(out_root: str, cfg: dict) -> str:
    path = os.path.join(out_root, f"run_{config_hash(cfg)}")
    os.makedirs(path, exist_ok=True)
    write_config(cfg, os.path.join(path, "effective.cfg"))
    return path


def _cmd_simulate(cfg, args, run_dir):
    sc = build_solver_config(cfg, 4 if args.ci else 1)
    tr = run(sc)
    for msg in tr.warnings:
        print(f"warning: {msg}", file=sys.stderr)
    for t, fp in tr.snapshots:
        write_snapshot(os.path.join(run_dir, snapshot_filename(t, sc.epsilon)), sc.grid.nodes, fp.p, fp.u)
    write_diagnostics(os.path.join(run_dir, "diagnostics.csv"), tr)
    print(f"simulate: {len(tr.snapshots)} snapshots -> {run_dir}")


def _cmd_sweep(cfg, args, run_dir):
    sc = build_solver_config(cfg, 4 if args.ci else 1)
    compare_time = float(cfg.get("experiment", {}).get("compare_time", "60"))
    eps = eps_list(cfg)
    table = sweep_epsilon(sc, eps, compare_time, jobs=args.jobs)
    table.write_csv(os.path.join(run_dir, "convergence.csv"))
    trs = [run(replace(sc, epsilon=e, snapshot_times=(compare_time,))) for e in eps]
    for e, tr in zip(eps, trs):
        _, fp = tr.snapshot_at(compare_time)
        write_snapshot(os.path.join(run_dir, snapshot_filename(compare_time, e)), sc.grid.nodes, fp.p, fp.u)
    summary = uniform_bound_summary(trs)
    write_csv(
        os.path.join(run_dir, "uniform_bound.csv"),
        ["epsilon", "max_l2_u", "spread"],
        [[e, m, summary.spread] for e, m in zip(summary.epsilons, summary.max_l2)],
    )
    print(f"sweep: spread {fmt(summary.spread)} -> {run_dir}")


def _window(cfg, default=(0.0, 20.0)):
    raw = cfg.get("experiment", {}).get("window")
    if not raw:
        return default
    parts = [float(x) for x in raw.split(",")]
    if len(parts) != 2:
        raise ConfigError("experiment.window must be 't0,t1'")
    return tuple(parts)


def _cmd_moderateness(cfg, args, run_dir):
    from .config import build_coefficient

    b = build_coefficient(cfg)
    m = bump_mollifier(sharpness=float(cfg.get("mollifier", {}).get("sharpness", "1")))
    k = int(cfg.get("experiment", {}).get("derivative_order", "1"))
    report = moderateness_scan(b, m, k, eps_list(cfg, default=[2.0**-j for j in range(2, 9)]), _window(cfg))
    report.write_csv(os.path.join(run_dir, "moderateness.csv"))
    exp = "identically zero" if report.identically_zero else fmt(report.exponent)
    print(f"moderateness: k={k} exponent {exp} -> {run_dir}")


def _cmd_sensitivity(cfg, args, run_dir):
    from .config import build_coefficient

    b = build_coefficient(cfg)
    m1 = bump_mollifier(sharpness=float(cfg.get("mollifier", {}).get("sharpness", "1")))
    m2 = bump_mollifier(sharpness=float(cfg.get("experiment", {}).get("sharpness2", "2")))
    table = mollifier_sensitivity(b, m1, m2, eps_list(cfg, default=[2.0**-j for j in range(2, 9)]), _window(cfg, (0.0, 10.0)))
    table.write_csv(os.path.join(run_dir, "sensitivity.csv"))
    exp = "all zero" if table.exponent is None else fmt(table.exponent)
    print(f"sensitivity: exponent {exp} -> {run_dir}")


def _cmd_echo(cfg, args, run_dir):
    pulse = build_pulse(cfg)
    epsilon = float(cfg.get("mollifier", {}).get("epsilon", "0.01"))
    jump_time = float(cfg.get("experiment", {}).get("jump_time", "5"))
    snap_raw = cfg.get("run", {}).get("snapshot_times", "")
    snaps = tuple(float(x) for x in snap_raw.split(",") if x.strip()) or None
    report, _ = echo_experiment(pulse, epsilon, snapshot_times=snaps, out_dir=run_dir, jump_time=jump_time, ci_factor=4 if args.ci else 1)
    if report is None:
        print(f"echo: no echo detected -> {run_dir}")
    else:
        print(f"echo: born t={fmt(report.birth_time)} amp_ratio={fmt(report.amplitude_ratio)} -> {run_dir}")


def _cmd_decay(cfg, args, run_dir):
    base = None
    if "grid" in cfg and "run" in cfg:
        base = build_solver_config(cfg, 4 if args.ci else 1)
    results = decay_experiment(eps_list(cfg), base_config=base, jobs=args.jobs)
    write_decay_csv(os.path.join(run_dir, "decay.csv"), results)
    for r in results:
        write_csv(
            os.path.join(run_dir, f"decay_series_eps{r.epsilon:g}.csv"),
            ["t", "l2_u", "l2_u_times_b"],
            zip(r.times.tolist(), r.l2_u.tolist(), r.l2_times_b.tolist()),
        )
    print(f"decay: {len(results)} fits -> {run_dir}")


def _cmd_dashboard(cfg, args, run_dir):
    from .mollifier import regularize

    sc = build_solver_config(cfg, 4 if args.ci else 1)
    report = theorem_dashboard(sc)
    report.write_csv(os.path.join(run_dir, "dashboard.csv"))
    coeff = regularize(sc.coefficient, bump_mollifier(sharpness=sc.mollifier_sharpness), sc.epsilon)
    ts = np.linspace(0.0, sc.t_end, 1201)
    write_csv(
        os.path.join(run_dir, "coefficient.csv"),
        ["t", "b", "b_eps"],
        zip(ts.tolist(), [float(sc.coefficient(t)) for t in ts], coeff.b_eps_many(ts).tolist()),
    )
    rows = [["case", report.case], ["stat_sup", fmt(report.stat_sup)], ["stat_limit_estimate", fmt(report.stat_limit_estimate)],
            ["worst_constant", fmt(report.worst_constant)], ["energy_constant", fmt(report.energy_constant)], ["flagged", str(report.flagged)]]
    for (l, alpha), c in sorted(report.derivative_constants.items()):
        rows.append([f"constant_l{l}_alpha{alpha}", fmt(c)])
    write_csv(os.path.join(run_dir, "dashboard_summary.csv"), ["quantity", "value"], rows)
    print(f"dashboard: case ({report.case}) worst constant {fmt(report.worst_constant)} -> {run_dir}")


def _cmd_transform(cfg, args, run_dir):
    profile, z = build_impedance(cfg)
    x = travel_time_transform(profile, z)
    write_csv(os.path.join(run_dir, "transform.csv"), ["z", "x"], [[z, x]])
    print(f"transform: x({fmt(z)}) = {fmt(x)}")


_COMMANDS = {
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "moderateness": _cmd_moderateness,
    "sensitivity": _cmd_sensitivity,
    "echo": _cmd_echo,
    "decay": _cmd_decay,
    "dashboard": _cmd_dashboard,
    "transform": _cmd_transform,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = apply_overrides(load_config(args.config), args.override)
        run_dir = _run_dir(args.out, cfg)
        _COMMANDS[args.command](cfg, args, run_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except InstabilityError as exc:
        print(f"instability: {exc}", file=sys.stderr)
        return 3
    except DiagnosticsError as exc:
        print(f"diagnostics error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

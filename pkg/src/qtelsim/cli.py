"""Command-line driver: surfaces, average-fidelity sweeps, g curves, channel reports.

Data files are deterministic for identical flags: fixed grid order, fixed
12-significant-digit formatting, and no timestamps (the manifest sidecar
carries the timestamp and wall-clock).  Every invocation writes a
``<out>.manifest.json`` sidecar describing parameters and outputs.

Exit codes: 0 success, 2 usage error, 3 numerical failure (trace drift or fit
non-convergence).  The ``LT_THREADS`` environment variable caps the sweep
worker pool (0 or unset = auto).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import uuid
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .lindblad import IntegrationError, IntegratorConfig
from .oracles import favg
from .quantum import check_density_matrix, singlet_fraction
from .sphere import FitError, QuadratureSpec, fit_exponential
from .teleport import (
    NoiseCase,
    average_fidelity,
    custom_channel_average,
    custom_channel_surface,
    dephased_bell_channel,
    fidelity_surface,
    g_statistic,
    maximally_mixed_channel,
    popescu_channel,
)
from .oracles import horodecki_optimal


class UsageError(Exception):
    pass


_AXES = {"x": ("x",), "z": ("z",), "xyz": ("x", "y", "z")}

_ORACLE_TAG = {
    ("A", ("x",)): "A1x",
    ("A", ("z",)): "A1z",
    ("A", ("x", "y", "z")): "A2iso",
    ("B", ("x",)): "B1x",
    ("B", ("z",)): "B1z",
    ("B", ("x", "y", "z")): "B2iso",
}


def _fmt(value: float) -> str:
    return "%.12g" % value


def _parse_sweep(text: str) -> np.ndarray:
    try:
        start, stop, count = text.split(":")
        grid = np.linspace(float(start), float(stop), int(count))
    except ValueError as exc:
        raise UsageError(f"bad sweep spec {text!r}, expected start:stop:n") from exc
    if grid.size == 0:
        raise UsageError("sweep must contain at least one point")
    return grid


def _theta_grid(n: int) -> np.ndarray:
    return np.linspace(0.0, np.pi, n)


def _phi_grid(n: int) -> np.ndarray:
    return np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)


def _cfg(args) -> IntegratorConfig | None:
    return IntegratorConfig(dt=args.dt) if args.dt is not None else None


def _write_table(path: str, fmt: str, header, rows) -> None:
    if fmt == "csv":
        with open(path, "w") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
    else:
        payload = {"columns": list(header), "rows": [[float(v) for v in row] for row in rows]}
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")


def _write_manifest(out_path: str, command: str, params: dict, outputs, t_start: float) -> None:
    manifest = {
        "id": str(uuid.uuid4()),
        "command": command,
        "parameters": params,
        "outputs": list(outputs),
        "tool_version": __version__,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "wallclock_seconds": time.monotonic() - t_start,
    }
    with open(out_path + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=1)
        fh.write("\n")


def _worker_count(n_tasks: int) -> int:
    raw = os.environ.get("LT_THREADS", "0")
    try:
        workers = int(raw)
    except ValueError:
        workers = 0
    if workers <= 0:
        workers = min(os.cpu_count() or 1, 8)
    return max(1, min(workers, n_tasks))


def _map_points(fn, tasks):
    workers = _worker_count(len(tasks))
    if workers == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))  # map preserves task order


def _favg_point(task):
    tag, axes, kt, dt = task
    cfg = IntegratorConfig(dt=dt) if dt is not None else None
    return average_fidelity(NoiseCase(tag, axes, kt), QuadratureSpec(32, 32), cfg)


def _g_point(task):
    tag, axes, kt, dt, theta_points = task
    cfg = IntegratorConfig(dt=dt) if dt is not None else None
    rows = g_statistic(NoiseCase(tag, axes, kt), [kt], cfg, theta_points=theta_points)
    return float(rows[0, 1])


def cmd_surface(args) -> int:
    t0 = time.monotonic()
    case = NoiseCase(args.case, _AXES[args.axes], args.kappa_tau)
    thetas = _theta_grid(args.theta_grid)
    phis = _phi_grid(args.phi_grid)
    surf = fidelity_surface(case, thetas, phis, _cfg(args))
    rows = [
        (thetas[i], phis[j], surf[i, j])
        for i in range(thetas.size)
        for j in range(phis.size)
    ]
    _write_table(args.out, args.format, ("theta", "phi", "fidelity"), rows)
    _write_manifest(
        args.out,
        "surface",
        {
            "case": case.tag,
            "axes": "".join(case.axes),
            "kappa_tau": case.kappa_tau,
            "theta_grid": args.theta_grid,
            "phi_grid": args.phi_grid,
            "dt": args.dt,
            "format": args.format,
        },
        [args.out],
        t0,
    )
    return 0


def _fit_report_path(out: str) -> str:
    root, ext = os.path.splitext(out)
    return (root if ext else out) + ".fit.json"


def cmd_average_sweep(args) -> int:
    t0 = time.monotonic()
    axes = _AXES[args.axes]
    sweep = _parse_sweep(args.kappa_tau_sweep)
    NoiseCase(args.case, axes, float(sweep[0]))  # validate flags early
    values = _map_points(_favg_point, [(args.case, axes, float(kt), args.dt) for kt in sweep])

    oracle_tag = _ORACLE_TAG.get((args.case, axes), "CDfit" if args.case in "CD" else None)
    header = ["kappa_tau", "f_avg_numeric"]
    rows = [[float(kt), v] for kt, v in zip(sweep, values)]
    if args.with_oracle and oracle_tag is not None:
        header.append("f_avg_oracle")
        for row in rows:
            row.append(float(favg(oracle_tag, row[0])))
    _write_table(args.out, args.format, header, rows)

    fit_path = _fit_report_path(args.out)
    report = {"model": "asymptote + amplitude * exp(-rate * kappa_tau)"}
    if sweep.size >= 3:
        fixed = 0.5 if args.case in ("C", "D") else None
        fit = fit_exponential(sweep, np.array(values), fix_asymptote=fixed)
        report.update(
            asymptote=fit.asymptote,
            amplitude=fit.amplitude,
            rate=fit.rate,
            residual_rms=fit.residual_rms,
            fixed_asymptote=fixed is not None,
        )
    else:
        report["fit"] = None
        report["reason"] = "need at least 3 sweep points"
    with open(fit_path, "w") as fh:
        json.dump(report, fh, indent=1)
        fh.write("\n")

    _write_manifest(
        args.out,
        "average-sweep",
        {
            "case": args.case,
            "axes": "".join(axes),
            "kappa_tau_sweep": args.kappa_tau_sweep,
            "quadrature": {"n_theta": 32, "n_phi": 32},
            "dt": args.dt,
            "with_oracle": bool(args.with_oracle),
            "format": args.format,
        },
        [args.out, fit_path],
        t0,
    )
    return 0


def cmd_gcurve(args) -> int:
    t0 = time.monotonic()
    if args.case not in ("C", "D"):
        raise UsageError("gcurve requires --case C or D")
    axes = _AXES[args.axes]
    sweep = _parse_sweep(args.kappa_tau_sweep)
    gs = _map_points(
        _g_point, [(args.case, axes, float(kt), args.dt, args.theta_grid) for kt in sweep]
    )
    _write_table(args.out, args.format, ("kappa_tau", "g"), list(zip(sweep, gs)))
    _write_manifest(
        args.out,
        "gcurve",
        {
            "case": args.case,
            "axes": "".join(axes),
            "kappa_tau_sweep": args.kappa_tau_sweep,
            "theta_grid": args.theta_grid,
            "dt": args.dt,
            "format": args.format,
        },
        [args.out],
        t0,
    )
    return 0


def _load_channel_file(path: str) -> np.ndarray:
    try:
        with open(path) as fh:
            lines = [line.strip() for line in fh if line.strip()]
    except OSError as exc:
        raise UsageError(f"cannot read channel file {path}: {exc}") from exc
    if len(lines) != 4:
        raise UsageError(f"channel file must have 4 rows, found {len(lines)}")
    rho = np.zeros((4, 4), dtype=complex)
    for i, line in enumerate(lines):
        entries = line.split()
        if len(entries) != 4:
            raise UsageError(f"channel row {i + 1} must have 4 entries, found {len(entries)}")
        for j, ent in enumerate(entries):
            try:
                re_s, im_s = ent.split(",")
                rho[i, j] = complex(float(re_s), float(im_s))
            except ValueError as exc:
                raise UsageError(f"bad channel entry {ent!r} at row {i + 1}") from exc
    return rho


def _parse_channel(spec: str) -> np.ndarray:
    if spec == "popescu":
        return popescu_channel()
    if spec == "maximally-mixed":
        return maximally_mixed_channel()
    if spec.startswith("dephased:"):
        try:
            exposure = float(spec.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(f"bad dephased exposure in {spec!r}") from exc
        return dephased_bell_channel(exposure)
    if spec.startswith("file:"):
        return _load_channel_file(spec.split(":", 1)[1])
    raise UsageError(
        f"unknown channel {spec!r}; expected popescu | maximally-mixed | "
        "dephased:<exposure> | file:<path>"
    )


def cmd_channel(args) -> int:
    t0 = time.monotonic()
    rho = _parse_channel(args.channel)
    check_density_matrix(rho)  # numerical validation of user-supplied channels
    thetas = _theta_grid(args.theta_grid)
    phis = _phi_grid(args.phi_grid)
    surf = custom_channel_surface(rho, thetas, phis)
    f_ab = singlet_fraction(rho)
    report = {
        "channel": args.channel,
        "theta": [float(t) for t in thetas],
        "phi": [float(p) for p in phis],
        "fidelity": [[float(v) for v in row] for row in surf],
        "f_avg": custom_channel_average(rho),
        "singlet_fraction": f_ab,
        "horodecki_optimal": horodecki_optimal(f_ab),
    }
    with open(args.out, "w") as fh:
        json.dump(report, fh, indent=1)
        fh.write("\n")
    _write_manifest(
        args.out,
        "channel",
        {"channel": args.channel, "theta_grid": args.theta_grid, "phi_grid": args.phi_grid},
        [args.out],
        t0,
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtelsim",
        description="Teleportation-through-noise experiment driver",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sweep=False):
        p.add_argument("--case", choices=["A", "B", "C", "D"], required=True)
        p.add_argument("--axes", choices=["x", "z", "xyz"], default="z")
        if sweep:
            p.add_argument("--kappa-tau-sweep", required=True, metavar="START:STOP:N")
        else:
            p.add_argument("--kappa-tau", type=float, required=True)
        p.add_argument("--dt", type=float, default=None)
        p.add_argument("--out", required=True)
        p.add_argument("--format", choices=["csv", "json"], default="csv")

    p_surface = sub.add_parser("surface", help="fidelity F(theta, phi) on an angle grid")
    common(p_surface)
    p_surface.add_argument("--theta-grid", type=int, default=41)
    p_surface.add_argument("--phi-grid", type=int, default=41)
    p_surface.set_defaults(func=cmd_surface)

    p_sweep = sub.add_parser("average-sweep", help="average fidelity over a kappa-tau sweep")
    common(p_sweep, sweep=True)
    p_sweep.add_argument("--with-oracle", action="store_true")
    p_sweep.set_defaults(func=cmd_average_sweep)

    p_g = sub.add_parser("gcurve", help="fidelity spread g = max F - min F vs kappa-tau")
    common(p_g, sweep=True)
    p_g.add_argument("--theta-grid", type=int, default=41)
    p_g.set_defaults(func=cmd_gcurve)

    p_ch = sub.add_parser("channel", help="teleportation quality report for a channel state")
    p_ch.add_argument(
        "--channel",
        required=True,
        help="popescu | maximally-mixed | dephased:<exposure> | file:<path>",
    )
    p_ch.add_argument("--theta-grid", type=int, default=5)
    p_ch.add_argument("--phi-grid", type=int, default=5)
    p_ch.add_argument("--out", required=True)
    p_ch.set_defaults(func=cmd_channel)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IntegrationError, FitError, ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())

"""Command-line surface: figure-style CSV/JSON emitters and the verification run.

Exit codes: 0 ok, 1 verification failure, 2 usage error.  CSV files carry a
header row, comma separators, 17 significant digits and LF line endings, so
repeated runs with the same flags are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, metrics, oscillator, tls, verify
from .crossings import DistanceSeries, pairwise_crossings
from .errors import StateError
from .schedules import CavityMode, ExpDecay, Ramp, SinExpDecay, time_grid
from .states import BathThermal, BlochVector

_SCHEDULES = {"exp": ExpDecay, "sinexp": SinExpDecay, "ramp": Ramp, "cavity": CavityMode}


def worker_count() -> int:
    """Worker cap from MPEMBA_QSIM_THREADS (default: up to 4)."""
    raw = os.environ.get("MPEMBA_QSIM_THREADS", "")
    if raw.strip():
        try:
            n = int(raw)
        except ValueError:
            raise SystemExit(f"MPEMBA_QSIM_THREADS must be an integer, got {raw!r}")
        return max(1, n)
    return max(1, min(4, os.cpu_count() or 1))


def _parse_state(token: str) -> oscillator.InitialState:
    kind, _, value = token.partition(":")
    try:
        if kind == "thermal":
            return oscillator.Thermal(float(value))
        if kind == "coherent":
            return oscillator.Coherent(complex(value))
        if kind == "number":
            return oscillator.Fock(int(value))
    except (ValueError, StateError) as exc:
        raise argparse.ArgumentTypeError(f"bad state spec {token!r}: {exc}")
    raise argparse.ArgumentTypeError(
        f"unknown state spec {token!r} (expected thermal:NBAR, coherent:ALPHA or number:N)"
    )


def _parse_bloch(token: str) -> BlochVector:
    try:
        return BlochVector.from_sequence(token.split(","))
    except (ValueError, StateError) as exc:
        raise argparse.ArgumentTypeError(f"bad Bloch vector {token!r}: {exc}")


def _parse_beta(token: str) -> float:
    if token.strip().lower() == "inf":
        return math.inf
    try:
        beta = float(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad beta {token!r} (number or 'inf')")
    if beta < 0:
        raise argparse.ArgumentTypeError(f"beta must be >= 0, got {beta}")
    return beta


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_csv(path: Path, header: list[str], columns: list[np.ndarray]) -> None:
    rows = len(columns[0])
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(rows):
            fh.write(",".join(_fmt(float(col[i])) for col in columns) + "\n")


def _crossing_json(report, labels_meta: dict) -> dict:
    body = dict(labels_meta)
    body["tool"] = "mpemba-qsim"
    body["version"] = __version__
    body["pairs"] = [
        {
            "pair": [p.label_a, p.label_b],
            "crossings": p.crossing_times,
            "mpemba": p.mpemba,
            "degenerate_start": p.degenerate_start,
            "window": list(report.window),
        }
        for p in report.pairs
    ]
    return body


def _write_json(path: Path, body: dict) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(json.dumps(body, indent=2, sort_keys=True))
        fh.write("\n")


def _state_label(state) -> str:
    if isinstance(state, oscillator.Thermal):
        return f"thermal:{state.nbar:g}"
    if isinstance(state, oscillator.Coherent):
        a = state.alpha
        return f"coherent:{a.real:g}" if a.imag == 0 else f"coherent:{a:g}"
    return f"number:{state.n}"


def cmd_oscillator(args) -> int:
    if args.states is None:
        args.states = [oscillator.Thermal(3.0), oscillator.Coherent(1.0), oscillator.Fock(1)]
    schedule = _SCHEDULES[args.schedule](args.gamma)
    grid = time_grid(schedule, args.steps, args.tmax)
    tau = args.gamma * grid
    cos2 = schedule.cos2(grid)
    if args.metric == "trace":
        dist = oscillator.trace_distance_closed
    else:
        dist = oscillator.hs_distance_closed

    def column(state):
        return np.array([dist(state, float(c)) for c in cos2])

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        columns = list(pool.map(column, args.states))

    labels = [_state_label(s) for s in args.states]
    out = Path(args.out)
    _write_csv(out, ["tau"] + labels, [tau] + columns)

    series = [DistanceSeries(lbl, tau, col) for lbl, col in zip(labels, columns)]
    report = pairwise_crossings(series)
    _write_json(
        out.with_suffix(".json"),
        _crossing_json(
            report,
            {
                "command": "oscillator",
                "schedule": {"type": args.schedule, "gamma": args.gamma},
                "grid": {"tmax": float(grid[-1]), "steps": args.steps, "tau_scale": args.gamma},
                "metric": args.metric,
                "states": labels,
            },
        ),
    )
    return 0


def _tls_distance_column(args, bath, r, phase, cos2) -> np.ndarray:
    if args.model == "pair":
        if bath.is_zero_temperature:
            return np.array([tls.tls_pair_trace_distance(r, float(c)) for c in cos2])
        target = np.diag([bath.p_excited, bath.p_ground]).astype(complex)
        return np.array(
            [
                metrics.trace_distance(tls.tls_pair_evolve(r, bath, float(c)), target)
                for c in cos2
            ]
        )
    if bath.is_zero_temperature:
        return np.array([tls.jcm_trace_distance(r, float(c)) for c in cos2])
    # Finite-temperature boson bath: distance measured to the zero-temperature
    # relaxation point, the fixed reference all the figure curves share.
    target = tls.ground_state()
    return np.array(
        [
            metrics.trace_distance(tls.jcm_thermal_components(r, bath, float(p)), target)
            for p in phase
        ]
    )


def cmd_tls(args) -> int:
    if args.bloch is None:
        args.bloch = [BlochVector(0.0, 0.0, 1.0), BlochVector(0.5, 0.5, 0.5)]
    if args.schedule in ("exp", "sinexp"):
        schedule = _SCHEDULES[args.schedule](args.gamma)
        tau_scale = args.gamma
    else:
        schedule = _SCHEDULES[args.schedule](args.t0)
        tau_scale = 1.0 / args.t0
    if args.traj_out and args.model != "jcm":
        raise SystemExit("--traj-out is only available for --model jcm")

    grid = time_grid(schedule, args.steps, args.tmax)
    tau = tau_scale * grid
    cos2 = schedule.cos2(grid)
    phase = schedule.phase(grid)
    bath = BathThermal(args.beta)

    def column(r):
        return _tls_distance_column(args, bath, r, phase, cos2)

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        columns = list(pool.map(column, args.bloch))

    # semicolons keep the labels comma-free for naive CSV consumers
    labels = [f"bloch({r.rx:g};{r.ry:g};{r.rz:g})" for r in args.bloch]
    header = ["tau"]
    out_columns = [tau]
    for lbl, col in zip(labels, columns):
        header.append(lbl)
        out_columns.append(col)
    if args.model == "jcm":
        for r, lbl in zip(args.bloch, labels):
            energies = np.array(
                [
                    tls.tls_energy(tls.jcm_thermal_components(r, bath, float(p)))
                    for p in phase
                ]
            )
            header.append(f"{lbl}:energy")
            out_columns.append(energies)

    out = Path(args.out)
    _write_csv(out, header, out_columns)

    series = [DistanceSeries(lbl, tau, col) for lbl, col in zip(labels, columns)]
    report = pairwise_crossings(series)
    schedule_meta = {"type": args.schedule}
    if args.schedule in ("exp", "sinexp"):
        schedule_meta["gamma"] = args.gamma
    else:
        schedule_meta["t0"] = args.t0
    _write_json(
        out.with_suffix(".json"),
        _crossing_json(
            report,
            {
                "command": "tls",
                "model": args.model,
                "schedule": schedule_meta,
                "grid": {"tmax": float(grid[-1]), "steps": args.steps, "tau_scale": tau_scale},
                "beta_hbar_omega": "inf" if math.isinf(args.beta) else args.beta,
                "states": labels,
            },
        ),
    )

    if args.traj_out:
        # Bloch trajectories need a visible free rotation; omega is fixed by
        # the scaled rate omega*t0 (or omega/gamma), 20 by default.
        header = ["tau"]
        cols = [tau]
        for r, lbl in zip(args.bloch, labels):
            points = [
                tls.jcm_bloch(r, float(p), args.omega_t0 * float(tt))
                for p, tt in zip(phase, tau)
            ]
            for comp in "xyz":
                header.append(f"{lbl}:a{comp}")
                cols.append(np.array([getattr(b, "r" + comp) for b in points]))
        _write_csv(Path(args.traj_out), header, cols)
    return 0


def cmd_verify(args) -> int:
    overrides = {}
    if args.tol_overrides:
        for item in args.tol_overrides.split(","):
            name, _, value = item.partition("=")
            if not value:
                raise SystemExit(f"bad tolerance override {item!r} (expected suite=value)")
            overrides[name.strip()] = float(value)
    try:
        report = verify.run_all(dim=args.dim, seed=args.seed, tol_overrides=overrides)
    except KeyError as exc:
        raise SystemExit(str(exc))
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)
    if not report["all_passed"]:
        for suite in report["suites"]:
            if not suite["passed"]:
                print(
                    f"FAILED {suite['name']}: max deviation {suite['max_deviation']:.3e} "
                    f"> {suite['tolerance']:g} at {suite['worst_case']}",
                    file=sys.stderr,
                )
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpemba-qsim",
        description="Relaxation-distance trajectories and Mpemba-crossing detection "
        "for exactly solvable open-system models.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_osc = sub.add_parser("oscillator", help="oscillator distance curves as CSV + crossing JSON")
    p_osc.add_argument("--schedule", choices=("exp", "sinexp"), default="exp")
    p_osc.add_argument("--gamma", type=float, default=1.0)
    p_osc.add_argument("--tmax", type=float, default=None, help="default 6/gamma")
    p_osc.add_argument("--steps", type=int, default=1001)
    p_osc.add_argument(
        "--states",
        type=_parse_state,
        nargs="+",
        action="extend",
        default=None,
        help="thermal:NBAR coherent:ALPHA number:N (repeatable; "
        "default thermal:3 coherent:1 number:1)",
    )
    p_osc.add_argument("--metric", choices=("trace", "hs"), default="trace")
    p_osc.add_argument("--out", required=True)
    p_osc.set_defaults(func=cmd_oscillator)

    p_tls = sub.add_parser("tls", help="two-level-system distance curves as CSV + crossing JSON")
    p_tls.add_argument("--model", choices=("pair", "jcm"), default="jcm")
    p_tls.add_argument("--schedule", choices=("exp", "sinexp", "ramp", "cavity"), default="ramp")
    p_tls.add_argument("--gamma", type=float, default=1.0)
    p_tls.add_argument("--t0", type=float, default=1.0)
    p_tls.add_argument(
        "--bloch",
        type=_parse_bloch,
        nargs="+",
        action="extend",
        default=None,
        help="rx,ry,rz (repeatable; default 0,0,1 and 0.5,0.5,0.5)",
    )
    p_tls.add_argument("--beta", type=_parse_beta, default=math.inf, help="beta*hbar*omega; 'inf' = zero temperature")
    p_tls.add_argument("--tmax", type=float, default=None)
    p_tls.add_argument("--steps", type=int, default=1001)
    p_tls.add_argument("--out", required=True)
    p_tls.add_argument("--traj-out", default=None, help="also write Bloch trajectories (jcm only)")
    p_tls.add_argument("--omega-t0", type=float, default=20.0, help="scaled level splitting for trajectories")
    p_tls.set_defaults(func=cmd_tls)

    p_ver = sub.add_parser("verify", help="run the closed-form-vs-oracle verification suites")
    p_ver.add_argument("--dim", type=int, default=40)
    p_ver.add_argument("--seed", type=int, default=2024)
    p_ver.add_argument("--tol-overrides", default="", help="comma-separated suite=tol pairs")
    p_ver.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: single-point solves, sweeps, analytic estimates."""

from __future__ import annotations

import argparse
import sys

from .fock import DEFAULT_TRUNCATION, FockTruncation, build_space
from .model import (
    DensityMatrix,
    SystemParams,
    build_liouvillian,
    evolve,
    steady_state,
    trace_distance,
)
from .observables import g2_zero, mean_occupation
from .analytic import manifold_eigenfrequencies, steady_amplitudes, weak_drive_g2
from .sweep import ConfigError, emit_csv, parse_config, point_params, run_sweep

ORACLE_HORIZON = 100.0  # in units of 1/kappa for the slowest mode


def _parse_trunc(text: str) -> FockTruncation:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("truncation must be three comma-separated integers, e.g. 5,2,2")
    try:
        levels = tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"truncation levels must be integers, got {text!r}") from None
    try:
        return FockTruncation(*levels)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("model parameters")
    group.add_argument("--delta-a", type=float, default=0.0, help="mode a drive detuning")
    group.add_argument("--delta-b", type=float, default=0.0, help="mode b detuning")
    group.add_argument("--delta-c", type=float, default=0.0, help="mode c detuning")
    group.add_argument("--g", type=float, default=0.0, help="four-wave-mixing strength")
    group.add_argument("--f-a", type=float, default=0.0, help="drive amplitude on mode a")
    group.add_argument("--kappa-a", type=float, default=1.0, help="mode a decay rate")
    group.add_argument("--kappa-b", type=float, default=1.0, help="mode b decay rate")
    group.add_argument("--kappa-c", type=float, default=1.0, help="mode c decay rate")


def _params_from_args(args: argparse.Namespace) -> SystemParams:
    return SystemParams(
        delta_a=args.delta_a, delta_b=args.delta_b, delta_c=args.delta_c,
        g=args.g, f_a=args.f_a,
        kappa_a=args.kappa_a, kappa_b=args.kappa_b, kappa_c=args.kappa_c)


def _emit(stream, key: str, value: float) -> None:
    stream.write(f"{key} = {value:.9e}\n")


def _oracle_distance(params: SystemParams, trunc: FockTruncation) -> float:
    space = build_space(trunc)
    lv = build_liouvillian(params, space)
    rho_s = steady_state(lv)
    horizon = ORACLE_HORIZON / min(params.kappa_a, params.kappa_b, params.kappa_c)
    rho_t = evolve(lv, DensityMatrix.vacuum(space), horizon)
    return trace_distance(rho_s, rho_t)


def _run_point(args: argparse.Namespace) -> int:
    params = _params_from_args(args)
    space = build_space(args.trunc)
    rho = steady_state(build_liouvillian(params, space))
    _emit(sys.stdout, "g2_a", g2_zero(rho, space, "a"))
    for mode in ("a", "b", "c"):
        _emit(sys.stdout, f"n_{mode}", mean_occupation(rho, space, mode))
    if args.oracle:
        _emit(sys.stdout, "oracle_trace_distance", _oracle_distance(params, args.trunc))
    return 0


def _run_sweep(args: argparse.Namespace) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 1
    _, spec = parse_config(text, trunc=args.trunc)
    records = run_sweep(spec, workers=args.workers)
    csv_text = emit_csv(records)
    if args.out is None:
        sys.stdout.write(csv_text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text)
    if args.oracle:
        worst = 0.0
        for rec in records:
            if rec.is_gap:
                print(f"oracle x = {rec.x:.9e}: skipped (gap)", file=sys.stderr)
                continue
            dist = _oracle_distance(point_params(spec, rec.x), spec.trunc)
            worst = max(worst, dist)
            print(f"oracle x = {rec.x:.9e}: trace_distance = {dist:.3e}", file=sys.stderr)
        print(f"oracle worst trace_distance = {worst:.3e}", file=sys.stderr)
    return 0


def _run_analytic(args: argparse.Namespace) -> int:
    params = _params_from_args(args)
    low, high = manifold_eigenfrequencies(params)
    _emit(sys.stdout, "omega_minus", low)
    _emit(sys.stdout, "omega_plus", high)
    if params.f_a > 0:
        amps = steady_amplitudes(params)
        _emit(sys.stdout, "abs_c100", abs(amps.c100))
        _emit(sys.stdout, "abs_c200", abs(amps.c200))
        _emit(sys.stdout, "abs_c011", abs(amps.c011))
        _emit(sys.stdout, "weak_drive_g2", weak_drive_g2(params))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fwmpb",
        description="Photon-blockade statistics of a three-mode four-wave-mixing cavity.")
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="solve one parameter set and print observables")
    _add_param_flags(point)
    point.add_argument("--trunc", type=_parse_trunc, default=DEFAULT_TRUNCATION,
                       metavar="A,B,C", help="Fock ceilings per mode (default 5,2,2)")
    point.add_argument("--oracle", action="store_true",
                       help="also time-evolve from vacuum and report the trace distance")
    point.set_defaults(func=_run_point)

    swp = sub.add_parser("sweep", help="run a one-axis sweep from a config file")
    swp.add_argument("--config", required=True, help="path to a key = value sweep config")
    swp.add_argument("--out", default=None, help="CSV destination (default: standard output)")
    swp.add_argument("--trunc", type=_parse_trunc, default=DEFAULT_TRUNCATION,
                     metavar="A,B,C", help="Fock ceilings per mode (default 5,2,2)")
    swp.add_argument("--workers", type=int, default=1, help="parallel point solvers")
    swp.add_argument("--oracle", action="store_true",
                     help="report per-point oracle trace distances on stderr (slow)")
    swp.set_defaults(func=_run_sweep)

    ana = sub.add_parser("analytic", help="print manifold eigenfrequencies and weak-drive estimates")
    _add_param_flags(ana)
    ana.set_defaults(func=_run_analytic)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

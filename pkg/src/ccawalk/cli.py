"""Command-line front end: scenario runs, sweeps, verification, data export.

Subcommands
-----------
spectrum     mode index k and frequency Omega_k, one row per mode
correlation  coincidence matrix P[m, n] at one time, as (m, n, value) triples
tpd          delocalization degree eta over the configured time grid
sweep        eta series for a family of superposition angles
verify       cross-check the closed form against the brute-force reference

Every command takes ``--config PATH`` (JSON scenario, see config module),
``--out PATH`` ('-' or omitted with no configured path means stdout) and
repeated ``--set key.path=value`` overrides.  Exit codes: 0 success,
1 validation error, 2 verification failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .config import (
    ScenarioConfig,
    apply_overrides,
    config_from_dict,
    config_to_dict,
    default_config_dict,
)
from .errors import ValidationError
from .lattice import decompose
from .observables import (
    NoonInput,
    concurrence,
    correlation_matrix,
    theta_for_concurrence,
    tpd_series,
)
from .output import provenance, render, write_text
from .verify import run_verification

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFICATION = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage problems as validation errors."""

    def error(self, message):
        raise ValidationError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="scenario JSON file")
    common.add_argument(
        "--out",
        metavar="PATH",
        help="output file; '-' for stdout; overrides output.path from the config",
    )
    common.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config field by dotted path, e.g. lattice.hopping=0.1",
    )

    parser = _Parser(
        prog="ccawalk",
        description="Two-photon transport in a coupled-cavity array.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser(
        "spectrum", parents=[common], help="write normal-mode frequencies"
    )

    p_corr = sub.add_parser(
        "correlation", parents=[common], help="write the coincidence matrix at one time"
    )
    p_corr.add_argument(
        "--t",
        type=float,
        default=None,
        help="evaluation time in the configured scale units (default: time.t_max)",
    )

    sub.add_parser(
        "tpd", parents=[common], help="write the delocalization-degree time series"
    )

    p_sweep = sub.add_parser(
        "sweep", parents=[common], help="eta series for several superposition angles"
    )
    group = p_sweep.add_mutually_exclusive_group()
    group.add_argument("--theta", help="comma-separated list of theta values")
    group.add_argument(
        "--concurrence", help="comma-separated list of concurrence values"
    )
    p_sweep.add_argument(
        "--branch",
        choices=["low", "high"],
        default="low",
        help="theta branch used with --concurrence (default: low)",
    )

    p_verify = sub.add_parser(
        "verify", parents=[common], help="run the reference cross-check suite"
    )
    p_verify.add_argument(
        "--max-n",
        type=int,
        default=8,
        metavar="N",
        help="shrink the scenario to at most N cavities (default 8)",
    )
    p_verify.add_argument(
        "--swap-weights",
        action="store_true",
        help="diagnostic: exchange the superposition weights in the closed form "
        "to demonstrate the cross-check catches it",
    )
    p_verify.add_argument("--seed", type=int, default=20260810)
    return parser


def _load_scenario(args) -> ScenarioConfig:
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"config is not valid JSON: {exc}") from exc
    else:
        raw = default_config_dict()
    raw = apply_overrides(raw, args.overrides)
    return config_from_dict(raw)


def _out_path(args, cfg: ScenarioConfig) -> str | None:
    return args.out if args.out is not None else cfg.output.path


def _parse_float_list(text: str, name: str) -> list[float]:
    values = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            raise ValidationError(f"empty entry in --{name} list")
        try:
            values.append(float(piece))
        except ValueError:
            raise ValidationError(f"--{name} entry {piece!r} is not a number") from None
    return values


def _emit(cfg: ScenarioConfig, args, command: str, extra: dict, columns, rows) -> None:
    prov = provenance(command, __version__, config_to_dict(cfg), extra)
    text = render(cfg.output.format, prov, columns, rows)
    write_text(text, _out_path(args, cfg))


def cmd_spectrum(cfg: ScenarioConfig, args) -> int:
    decomp = decompose(cfg.lattice)
    rows = [(k + 1, float(freq)) for k, freq in enumerate(decomp.frequencies)]
    _emit(cfg, args, "spectrum", {}, ["k", "Omega_k"], rows)
    return EXIT_OK


def cmd_correlation(cfg: ScenarioConfig, args) -> int:
    scaled = cfg.time.t_max if args.t is None else args.t
    t = cfg.absolute_time(scaled)
    noon = cfg.input.to_noon()
    corr = correlation_matrix(decompose(cfg.lattice), noon, t)
    n = cfg.lattice.num_cavities
    rows = [
        (m + 1, k + 1, float(corr.entries[m, k])) for m in range(n) for k in range(n)
    ]
    extra = {
        "t": t,
        "omega_t": t * cfg.lattice.omega,
        "J_t": t * cfg.lattice.hopping,
        "theta": noon.theta,
        "concurrence": concurrence(noon),
    }
    _emit(cfg, args, "correlation", extra, ["m", "n", "P_mn"], rows)
    return EXIT_OK


def cmd_tpd(cfg: ScenarioConfig, args) -> int:
    noon = cfg.input.to_noon()
    series = tpd_series(decompose(cfg.lattice), noon, cfg.time_grid())
    omega, hopping = cfg.lattice.omega, cfg.lattice.hopping
    rows = [
        (float(t), float(t * omega), float(t * hopping), float(eta))
        for t, eta in zip(series.times, series.eta)
    ]
    extra = {"theta": noon.theta, "concurrence": concurrence(noon)}
    _emit(cfg, args, "tpd", extra, ["t", "omega_t", "J_t", "eta"], rows)
    return EXIT_OK


def cmd_sweep(cfg: ScenarioConfig, args) -> int:
    if args.theta is not None:
        thetas = _parse_float_list(args.theta, "theta")
    elif args.concurrence is not None:
        thetas = [
            theta_for_concurrence(c, args.branch)
            for c in _parse_float_list(args.concurrence, "concurrence")
        ]
    elif cfg.sweep is not None:
        thetas = list(cfg.sweep.resolved_thetas())
    else:
        raise ValidationError(
            "no sweep values: pass --theta or --concurrence, or add a 'sweep' "
            "block to the config"
        )
    if len(set(thetas)) != len(thetas):
        raise ValidationError("sweep values contain duplicates")

    decomp = decompose(cfg.lattice)
    grid = cfg.time_grid()
    rows = []
    for theta in thetas:
        noon = NoonInput(
            theta=theta, site_r=cfg.input.site_r, site_s=cfg.input.site_s
        )
        series = tpd_series(decomp, noon, grid)
        c = concurrence(noon)
        rows.extend(
            (theta, c, float(t), float(eta))
            for t, eta in zip(series.times, series.eta)
        )
    extra = {"thetas": thetas}
    _emit(cfg, args, "sweep", extra, ["theta", "concurrence", "t", "eta"], rows)
    return EXIT_OK


def cmd_verify(cfg: ScenarioConfig, args) -> int:
    noon = cfg.input.to_noon()
    report = run_verification(
        cfg.lattice,
        noon,
        seed=args.seed,
        swap_weights=args.swap_weights,
        max_cavities=args.max_n,
    )
    text = report.format() + "\n"
    sys.stdout.write(text)
    destination = _out_path(args, cfg)
    if destination is not None and destination != "-":
        write_text(text, destination)
    return EXIT_OK if report.passed else EXIT_VERIFICATION


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "correlation": cmd_correlation,
    "tpd": cmd_tpd,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _load_scenario(args)
        return _COMMANDS[args.command](cfg, args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()

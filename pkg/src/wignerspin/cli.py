"""Command line entry point: ``sweep``, ``figure`` and ``check`` subcommands.

Exit status: 0 on success, 1 when a self-check property fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import configparser
import contextlib
import sys
from pathlib import Path

import numpy as np

from .checks import report, self_check
from .errors import DomainError
from .sweep import (
    DEFAULT_FIGURE_STEPS,
    FIGURE_COLUMNS,
    FIGURES,
    KIND_ALIASES,
    SUPERREL_SPEED,
    GridRange,
    SweepConfig,
    emit_figure_data,
    figure_config,
    run_sweep,
    write_rows,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

_SWEEP_DEFAULTS = {
    "kind": "vn",
    "p1": "0.5",
    "phi-v": str(SUPERREL_SPEED),
    "alpha": f"0.1:{np.arctanh(SUPERREL_SPEED)!r}:{DEFAULT_FIGURE_STEPS}",
    "theta": f"0.1:{np.pi!r}:{DEFAULT_FIGURE_STEPS}",
    "format": "csv",
}


def read_config_file(path) -> dict:
    """Flat ``key = value`` file; keys use the long flag names without dashes prefix."""
    parser = configparser.ConfigParser()
    text = Path(path).read_text(encoding="utf-8")
    parser.read_string("[sweep]\n" + text)
    return {k.replace("_", "-"): v for k, v in parser["sweep"].items()}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wignerspin",
        description="Entropy of boosted EPR spin pairs: sweeps, figure data and self-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="evaluate an entropy over an (alpha, theta) grid")
    sw.add_argument("--config", help="flat key = value file; flags override it")
    sw.add_argument("--kind", choices=sorted(KIND_ALIASES))
    sw.add_argument("--p1", type=float, help="weight of the theta = 0 pair (p2 = 1 - p1)")
    rap = sw.add_mutually_exclusive_group()
    rap.add_argument("--phi-v", type=float, help="ejection speed v in (0, 1)")
    rap.add_argument("--phi", type=float, help="ejection rapidity")
    sw.add_argument("--alpha", help="boost rapidity grid lo:hi:steps")
    sw.add_argument("--theta", help="pair angle grid lo:hi:steps (radians)")
    sw.add_argument("--renormalize-shannon", action="store_true", default=None,
                    help="subtract the 1-bit rest baseline from Shannon entropies")
    sw.add_argument("--format", choices=["csv", "jsonl"])
    sw.add_argument("--out", help="output path (default: standard output)")

    fig = sub.add_parser("figure", help="write figure data for one preset (fig2..fig9)")
    fig.add_argument("figure_id", choices=sorted(FIGURES))
    fig.add_argument("--steps", type=int, default=DEFAULT_FIGURE_STEPS, help="grid points per axis")
    fig.add_argument("--superrel-v", type=float, default=SUPERREL_SPEED,
                     help="speed used for phi and the alpha upper bound (default 0.999)")
    fig.add_argument("--renormalize-shannon", action="store_true")
    fig.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    fig.add_argument("--out", help="CSV path (default: standard output); a .gp plot script is written beside it")
    fig.add_argument("--plot-script", help="explicit path for the gnuplot script")

    chk = sub.add_parser("check", help="run the oracle and invariant self-checks")
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--corrupt-b-sign", action="store_true",
                     help="negative control: flip the sign of B before the oracle comparison")
    return parser


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _sweep_config(args) -> tuple:
    settings = dict(_SWEEP_DEFAULTS)
    if args.config:
        settings.update(read_config_file(args.config))
    for key in ("kind", "p1", "phi-v", "phi", "alpha", "theta", "format", "out", "renormalize-shannon"):
        val = getattr(args, key.replace("-", "_"))
        if val is not None:
            if key == "phi":
                settings.pop("phi-v", None)
            elif key == "phi-v":
                settings.pop("phi", None)
            settings[key] = str(val)

    kind = settings["kind"]
    if kind not in KIND_ALIASES:
        raise DomainError(f"unknown kind {kind!r}")
    if "phi" in settings:
        phi = float(settings["phi"])
    else:
        v = float(settings["phi-v"])
        if not 0.0 < v < 1.0:
            raise DomainError(f"--phi-v must lie in (0, 1), got {v}")
        phi = float(np.arctanh(v))
    renorm = str(settings.get("renormalize-shannon", "false")).lower() in ("1", "true", "yes", "on")
    config = SweepConfig(
        entropy_kind=KIND_ALIASES[kind],
        p1=float(settings["p1"]),
        phi=phi,
        alpha_range=GridRange.parse(settings["alpha"]),
        theta_range=GridRange.parse(settings["theta"]),
        renormalize_shannon=renorm,
    )
    fmt = settings["format"]
    if fmt not in ("csv", "jsonl"):
        raise DomainError(f"unknown format {fmt!r}")
    return config, fmt, settings.get("out")


def _cmd_sweep(args) -> int:
    config, fmt, out = _sweep_config(args)
    with _output(out) as fh:
        write_rows(run_sweep(config), fh, fmt)
    return EXIT_OK


def _cmd_figure(args) -> int:
    if args.steps < 1:
        raise DomainError("--steps must be positive")
    if args.out in (None, "-"):
        data_path = f"{args.figure_id}.csv"
    else:
        data_path = Path(args.out).name
    if args.format == "csv":
        data = emit_figure_data(args.figure_id, args.steps, args.superrel_v, data_path, args.renormalize_shannon)
        with _output(args.out) as fh:
            fh.write(data.csv)
        script = data.plot_script
    else:
        config = figure_config(args.figure_id, args.steps, args.superrel_v, args.renormalize_shannon)
        with _output(args.out) as fh:
            write_rows(run_sweep(config), fh, "jsonl", FIGURE_COLUMNS)
        script = None
    script_path = args.plot_script
    if script_path is None and args.out not in (None, "-"):
        script_path = str(Path(args.out).with_suffix(".gp"))
    if script is not None and script_path:
        Path(script_path).write_text(script, encoding="utf-8")
    return EXIT_OK


def _cmd_check(args) -> int:
    results = self_check(seed=args.seed, corrupt_b_sign=args.corrupt_b_sign)
    return EXIT_OK if report(results) else EXIT_FAILED


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {"sweep": _cmd_sweep, "figure": _cmd_figure, "check": _cmd_check}[args.command]
    try:
        return handler(args)
    except (DomainError, OSError, configparser.Error) as exc:
        print(f"wignerspin {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

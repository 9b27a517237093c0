"""Command-line interface: ``nmxstate {epsilon,measures,sweep,transitions,compare}``.

Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure in a
one-shot computation, 4 I/O failure.
"""

import argparse
from dataclasses import asdict
import json
import logging
import sys

import numpy as np

from . import __version__
from .events import detect_transitions
from .exceptions import ConfigError, DomainError, NMXStateError, NumericalError
from .io import emit, format_float, read_table
from .measures import DiscordOptimizerConfig, measure_all
from .noise import QuadratureConfig, epsilon_closed_form, epsilon_series
from .parallelism import parallelism_stats
from .presets import PRESET_NAMES, kernel_from_spec, load_preset, preset_for_figure
from .sweep import SweepConfig, load_config, run_sweep
from .state import rho_normalized

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

logger = logging.getLogger("nmxstate")


def _add_output(p, formats=("csv", "json"), default="csv"):
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--output", metavar="PATH", help="write here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="nmxstate", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"nmxstate {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("epsilon", help="injected energy epsilon(t) for one noise kernel")
    p.add_argument("--preset", choices=PRESET_NAMES, default="white")
    p.add_argument("--kind", choices=("white", "exponential"))
    p.add_argument("--gamma", type=float, help="noise power (in units of omega)")
    p.add_argument("--lambda", dest="lam", type=float, help="inverse correlation time (units of omega)")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--t-max", type=float, help="default: the preset's horizon")
    p.add_argument("--num", type=int, default=101)
    p.add_argument("--panels", type=int, default=64)
    p.add_argument("--check", action="store_true", help="verify quadrature against the closed form")
    _add_output(p)

    p = sub.add_parser("measures", help="all six measures at one injected energy")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--verify", action="store_true", help="cross-check fast paths against generic routes")
    _add_output(p, default="json")

    p = sub.add_parser("sweep", help="grid sweep over (omega, t) for a figure regime")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", metavar="FILE")
    src.add_argument("--preset", choices=PRESET_NAMES)
    src.add_argument("--figure", type=int, choices=range(2, 14), metavar="{2..13}")
    p.add_argument("--panels", type=int)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--reproducible", action="store_true", help="omit the timestamp line")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--output", metavar="PATH")

    p = sub.add_parser("transitions", help="entanglement death/revival events in a sweep table")
    p.add_argument("--input", required=True, metavar="CSV")
    p.add_argument("--tol", type=float, default=1e-9)
    _add_output(p)

    p = sub.add_parser("compare", help="parallelism statistics across measures")
    p.add_argument("--input", required=True, metavar="CSV")
    p.add_argument("--tol", type=float, default=1e-9)
    _add_output(p, default="json")
    return parser


def _cmd_epsilon(args, out):
    preset = load_preset(args.preset)
    spec = dict(preset["kernel"])
    if args.kind:
        spec["kind"] = args.kind
    if args.gamma is not None:
        spec["gamma"] = args.gamma
    if args.lam is not None:
        spec["lambda"] = args.lam
    t_max = args.t_max if args.t_max is not None else preset["t_grid"]["stop"]
    try:
        kernel = kernel_from_spec(spec, args.omega)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    grid = np.linspace(0.0, t_max, args.num)
    points = epsilon_series(kernel, args.omega, grid, QuadratureConfig(args.panels), verify=args.check)
    if args.format == "json":
        text = json.dumps(
            {
                "kernel": {"kind": kernel.kind, "gamma": kernel.gamma,
                           "lambda": None if kernel.kind == "white" else kernel.lam},
                "points": [asdict(p) for p in points],
                "closed_form": [epsilon_closed_form(kernel, args.omega, p.t) for p in points],
            },
            indent=2,
        ) + "\n"
    else:
        lines = ["omega,t,epsilon"] + [
            ",".join(format_float(v) for v in (p.omega, p.t, p.epsilon)) for p in points
        ]
        text = "\n".join(lines) + "\n"
    _write(text, args.output, out)


def _cmd_measures(args, out):
    try:
        state = rho_normalized(args.epsilon)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    m = measure_all(state, DiscordOptimizerConfig(), verify=args.verify)
    if args.format == "json":
        text = json.dumps({"epsilon": args.epsilon, **asdict(m)}, indent=2) + "\n"
    else:
        names = ["epsilon"] + list(asdict(m))
        text = ",".join(names) + "\n" + ",".join(
            format_float(v) for v in (args.epsilon,) + m.as_tuple()) + "\n"
    _write(text, args.output, out)


def _cmd_sweep(args, out):
    if args.config:
        cfg = load_config(args.config)
    else:
        name = args.preset or preset_for_figure(args.figure)
        cfg = SweepConfig.from_preset(name)
    if args.panels is not None:
        cfg = cfg.with_overrides(quadrature=QuadratureConfig(args.panels))
    fmt = args.format or cfg.format
    path = args.output or cfg.output
    table = run_sweep(cfg, n_jobs=args.jobs, reproducible=args.reproducible)
    failed = sum(1 for r in table.rows if r.error)
    if failed:
        logger.warning("%d of %d rows failed; see the error column", failed, len(table))
    _emit(table, fmt, path, out)


def _cmd_transitions(args, out):
    table = read_table(args.input)
    _emit(detect_transitions(table, tol=args.tol), args.format, args.output, out)


def _cmd_compare(args, out):
    table = read_table(args.input)
    _emit(parallelism_stats(table, tol=args.tol), args.format, args.output, out)


def _write(text, path, out):
    if path is None:
        out.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _emit(obj, fmt, path, out):
    emit(obj, fmt, path=path, stream=out)


COMMANDS = {
    "epsilon": _cmd_epsilon,
    "measures": _cmd_measures,
    "sweep": _cmd_sweep,
    "transitions": _cmd_transitions,
    "compare": _cmd_compare,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args, out)
    except OSError as exc:
        print(f"nmxstate: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, DomainError) as exc:
        print(f"nmxstate: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"nmxstate: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except NMXStateError as exc:
        print(f"nmxstate: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

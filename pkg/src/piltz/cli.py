"""Command-line entry point: ``piltz <subcommand> [options]``.

Exit codes: 0 success, 1 usage or config error, 2 computation error.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments as ex
from .errors import ConfigError, FieldFileError, PiltzError

SUBCOMMANDS = ("delta", "rprime", "convexity", "expsum", "atkinson", "omega", "catalog", "selftest")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


# flag -> (config key, type)
_FLAGS = {
    "delta": ["m", "x_min", "x_max", "grid_points", "grid_ratio", "window", "method"],
    "rprime": ["r", "ell", "beta", "x_min", "x_max", "grid_points", "grid_ratio", "window", "method"],
    "convexity": ["sigma", "t_min", "t_max", "grid_points", "window", "method"],
    "expsum": ["m", "x", "S", "instances", "seed"],
    "atkinson": ["y", "A", "B", "tau"],
    "omega": ["group", "m"],
    "catalog": ["n", "m", "beta"],
}
_TYPES = {
    "m": int, "r": int, "ell": int, "x_min": float, "x_max": int, "grid_points": int,
    "grid_ratio": float, "window": float, "method": str, "sigma": float, "t_min": float,
    "t_max": float, "x": float, "S": int, "instances": int, "seed": int, "y": float,
    "A": float, "B": float, "tau": str, "group": str, "n": int, "beta": float,
}
_CHOICES = {"method": ("running_max", "all_points"), "tau": ("cos", "sin")}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="piltz", description="Piltz divisor problem experiments over number fields.")
    sub = p.add_subparsers(dest="command", metavar="{" + ",".join(SUBCOMMANDS) + "}",
                           parser_class=_Parser)
    sub.required = True
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        if name == "selftest":
            continue
        sp.add_argument("--config", metavar="PATH", help="JSON experiment config")
        sp.add_argument("--field", metavar="LABEL", help="built-in label or descriptor file")
        sp.add_argument("--out", metavar="PATH", help="report path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"))
        sp.add_argument("--threads", type=int, metavar="N")
        for key in _FLAGS[name]:
            flag = "--" + key.replace("_", "-")
            sp.add_argument(flag, dest=key, type=_TYPES[key], choices=_CHOICES.get(key),
                            metavar=None if key in _CHOICES else key.upper())
    return p


def _config_from_args(args) -> ex.ExperimentConfig:
    if args.config:
        cfg = ex.ExperimentConfig.load(args.config)
        if cfg.kind != args.command:
            raise ConfigError(f"config kind {cfg.kind!r} does not match subcommand {args.command!r}")
    else:
        cfg = ex.ExperimentConfig(kind=args.command)
    overrides = {k: getattr(args, k) for k in _FLAGS[args.command]}
    overrides.update(field=args.field, output=args.out, format=args.format, threads=args.threads)
    try:
        return ex.with_overrides(cfg, **overrides)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def _subparser(parser, name):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[name]
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    if args.command == "selftest":
        from .selftest import run_selftest
        return 0 if run_selftest(print) else 2
    try:
        cfg = _config_from_args(args)
        report = ex.run(cfg)
    except (ConfigError, FieldFileError) as exc:
        print(f"piltz {args.command}: {exc}", file=sys.stderr)
        print(_subparser(parser, args.command).format_usage(), file=sys.stderr, end="")
        return 1
    except (PiltzError, ArithmeticError) as exc:
        print(f"piltz {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        report.write(cfg.output)
    else:
        sys.stdout.write(report.render())
    print(report.summary)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

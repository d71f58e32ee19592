"""Command-line front end.

Exit codes: 0 success, 2 invalid arguments or configuration, 3 I/O failure
or empty output, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import analysis, dynamics, gaussian, oracle
from .analysis import ScanResult
from .errors import ConfigError, NumericalFailure
from .model import ModelConfig, config_from_mapping, kelvin_to_theta, read_config_file
from .output import (EmptyScan, complex_matrix_to_csv, scan_to_csv, scan_to_json,
                     scan_to_svg)

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_NUMERICAL = 0, 2, 3, 4

SUBCOMMANDS = ("propagator", "cm", "negativity", "bte", "tcrit", "scan-n", "fig", "oracle")
SVG_CAPABLE = ("scan-n", "fig")
DEFAULT_TAU = 0.3324
DEFAULT_TCRIT_TAU = 0.6978


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _odd_n(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1 or value % 2 == 0:
        raise argparse.ArgumentTypeError("n must be odd and positive")
    return value


def _n_list(text):
    return [_odd_n(t) for t in text.split(",") if t.strip()]


def _nonneg(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not np.isfinite(value) or value < 0:
        raise argparse.ArgumentTypeError("must be finite and nonnegative")
    return value


def _positive(text):
    value = _nonneg(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("model")
    g.add_argument("--config", type=Path, help="flat key = value file; flags override it")
    g.add_argument("--pattern", choices=("pairwise", "one-to-all"))
    g.add_argument("--n", type=_odd_n, help="micro-modes per wave-packet (odd)")
    g.add_argument("--omega1", type=_positive, help="signal central frequency")
    g.add_argument("--omega2", type=_positive, help="idler central frequency")
    g.add_argument("--bw1", type=_nonneg, help="signal bandwidth")
    g.add_argument("--bw2", type=_nonneg, help="idler bandwidth")
    g.add_argument("--theta", type=_nonneg, help="dimensionless temperature")
    g.add_argument("--temp-kelvin", type=_nonneg, help="temperature in K (needs --coupling-hz)")
    g.add_argument("--coupling-hz", type=_positive, help="coupling w in rad/s for --temp-kelvin")
    g.add_argument("--pump-phase", type=float)
    g.add_argument("--tau", type=_nonneg, help="dimensionless interaction time")
    g.add_argument("--log-base", choices=("e", "2"))
    o = common.add_argument_group("output")
    o.add_argument("--out", type=Path, help="output file (default: stdout)")
    o.add_argument("--format", choices=("csv", "json", "svg"), default="csv")

    parser = _Parser(prog="mpdc-collective",
                     description="Collective entanglement of multimode PDC wave-packets.")
    # also accepted before the subcommand
    parser.add_argument("--n", dest="global_n", type=_odd_n, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser,
                                metavar="{propagator,cm,negativity,bte,tcrit,scan-n,fig}")
    sub.add_parser("propagator", parents=[common], help="dump R(tau) as re/im CSV")
    sub.add_parser("cm", parents=[common], help="collective covariance matrix and invariants")
    sub.add_parser("negativity", parents=[common], help="logarithmic negativity at tau")
    sub.add_parser("bte", parents=[common], help="birth time of entanglement")
    sub.add_parser("tcrit", parents=[common], help="critical temperature at tau")
    scan = sub.add_parser("scan-n", parents=[common], help="negativity versus n with line fit")
    scan.add_argument("--n-list", type=_n_list, default=[1, 3, 5, 7, 9, 11])
    fig = sub.add_parser("fig", parents=[common], help="regenerate a figure's data")
    fig.add_argument("--fig-id", type=int, choices=(2, 3, 4, 5, 6), required=True)
    # debugging aid, deliberately absent from the help listing
    sub.add_parser("oracle", parents=[common])
    return parser


def resolve_config(args) -> ModelConfig:
    values = {}
    if args.config is not None:
        try:
            values.update(read_config_file(args.config))
        except OSError as exc:
            raise ConfigError(f"--config: cannot read {args.config}: {exc.strerror}") from None
    if args.temp_kelvin is not None or args.coupling_hz is not None:
        if args.temp_kelvin is None or args.coupling_hz is None:
            raise ConfigError("--temp-kelvin and --coupling-hz must be given together")
        if args.theta is not None:
            raise ConfigError("--theta conflicts with --temp-kelvin")
        args.theta = kelvin_to_theta(args.temp_kelvin, args.coupling_hz)
    flags = {"pattern": args.pattern, "n": args.n, "omega1_bar": args.omega1,
             "omega2_bar": args.omega2, "bw1": args.bw1, "bw2": args.bw2,
             "theta": args.theta, "pump_phase": args.pump_phase, "log_base": args.log_base}
    values.update({k: v for k, v in flags.items() if v is not None})
    if "tau" in values and args.tau is None:
        args.tau = float(values["tau"])
    return config_from_mapping(values)


def _row(label, **cols) -> ScanResult:
    return ScanResult(label, {k: [v] for k, v in cols.items()})


def run(args) -> tuple:
    """Execute one subcommand; returns ``(payload, kind)`` with kind ``scan`` or ``text``."""
    config = resolve_config(args)
    cmd = args.command
    if args.format == "svg" and cmd not in SVG_CAPABLE:
        raise ConfigError(f"--format: svg is only available for {', '.join(SVG_CAPABLE)}")
    tau = args.tau
    if tau is None:
        tau = DEFAULT_TCRIT_TAU if cmd == "tcrit" else DEFAULT_TAU

    if cmd == "propagator":
        prop = dynamics.propagator(config, tau)
        if args.format == "json":
            return json.dumps({"tau": tau, "re": prop.r.real.tolist(),
                               "im": prop.r.imag.tolist()}, indent=2) + "\n", "text"
        return complex_matrix_to_csv(prop.r), "text"
    if cmd == "cm":
        state = gaussian.thermal_state(config)
        cm = gaussian.collective_cm(config, tau, state)
        I1, I2 = gaussian.invariants(cm)
        crit = gaussian.s_criterion(cm, state)
        cols = {"tau": tau}
        for i in range(4):
            for j in range(4):
                cols[f"s{i + 1}{j + 1}"] = float(cm.sigma[i, j])
        cols.update(det_alpha=float(np.linalg.det(cm.alpha)), det_beta=float(np.linalg.det(cm.beta)),
                    det_gamma=cm.det_gamma, I1=I1, I2=I2, S=crit.S, S0=crit.S0,
                    EN=gaussian.log_negativity(cm, config.log_base))
        return _row("cm", **cols), "scan"
    if cmd == "negativity":
        return _row("negativity", tau=tau, EN=analysis.negativity(config, tau)), "scan"
    if cmd == "bte":
        return _row("bte", theta=config.theta, tau_E=analysis.bte_numeric(config)), "scan"
    if cmd == "tcrit":
        return _row("tcrit", tau=tau, theta_c=analysis.critical_temperature(config, tau)), "scan"
    if cmd == "scan-n":
        if not args.n_list:
            return ScanResult("negativity_vs_n", {"n": [], "EN": []}), "scan"
        return analysis.scan_negativity_vs_n(config, tau, args.n_list), "scan"
    if cmd == "fig":
        return analysis.figure_series(config, args.fig_id, tau=args.tau), "scan"
    if cmd == "oracle":
        primary = gaussian.collective_cm(config, tau)
        check = oracle.micro_cm_evolve_and_project(config, tau)
        diff = float(np.max(np.abs(primary.sigma - check.sigma)))
        return _row("oracle", tau=tau, max_abs_diff=diff,
                    max_abs_entry=float(np.max(np.abs(primary.sigma)))), "scan"
    raise ConfigError(f"unknown command {cmd!r}")


def render(payload, kind: str, fmt: str) -> str:
    if kind == "text":
        return payload
    if fmt == "json":
        return scan_to_json(payload)
    if fmt == "svg":
        return scan_to_svg(payload)
    return scan_to_csv(payload)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n is None:
        args.n = args.global_n
    prog = parser.prog
    try:
        payload, kind = run(args)
        text = render(payload, kind, args.format)
    except ConfigError as exc:
        print(f"{prog}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EmptyScan as exc:
        print(f"{prog}: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NumericalFailure as exc:
        print(f"{prog}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    try:
        if args.out is None:
            sys.stdout.write(text)
        else:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"{prog}: error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

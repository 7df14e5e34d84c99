"""Command-line front end: coefficients, closed forms, count tables, recognition, verification, asymptotics."""

import argparse
import sys
from typing import List, Optional, TextIO

from config.logger import logger
from config.settings import CROSS_CHECK_ORDER, get_brute_cap, get_default_order
from models.path_model import ModelKind
from models.run_config import OUTPUT_FORMATS, RunConfig
from services.asymptotics_service import AMPLITUDE_ORDER, AsymptoticsError, asymptotic_report
from services.dp_service import DPError, dp_counts, dp_series
from services.export_service import (
    ExportError,
    render_asymptotics,
    render_series,
    render_table,
    render_verification,
    write_output,
)
from services.kernel_service import KernelError, closed_form
from services.path_model_service import PathModelError, brute_force_counts, parse_word, recognize
from services.verification_service import VerificationError, run_verification

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

_USAGE_ERRORS = (ValueError, PathModelError, DPError, KernelError, ExportError, VerificationError, AsymptoticsError)


def _add_common(parser: argparse.ArgumentParser, with_model: bool = True) -> None:
    if with_model:
        parser.add_argument("--model", choices=[k.value for k in ModelKind], default=ModelKind.CATA.value,
                            help="Path model (default: cata).")
    parser.add_argument("--n", type=int, default=None, help="Truncation order N (default: SMOTZKIN_ORDER or 40).")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="human", dest="output_format",
                        help="Output format (default: human).")
    parser.add_argument("--out", default=None, help="Write to this file instead of standard output.")
    parser.add_argument("--brute-cap", type=int, default=None, dest="brute_cap",
                        help="Longest word enumerated by brute force (default: SMOTZKIN_BRUTE_CAP or 12).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smotzkin",
        description="Enumerate and verify S-Motzkin paths with catastrophes and air pockets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    coeffs = sub.add_parser("coeffs", help="Series of one state from the recursions.")
    _add_common(coeffs)
    coeffs.add_argument("--layer", required=True, help="Layer letter, e.g. F, G, A, B, C, D.")
    coeffs.add_argument("--level", type=int, default=0, help="Level of the state (default: 0).")

    closed = sub.add_parser("closed", help="Closed-form series by key, e.g. cata.f0, air.rho, cata.fk:3.")
    _add_common(closed, with_model=False)
    closed.add_argument("--key", required=True, help="Closed-form key.")

    table = sub.add_parser("table", help="Full count table of a model.")
    _add_common(table)
    table.add_argument("--method", choices=("dp", "brute"), default="dp", help="Counting method (default: dp).")

    rec = sub.add_parser("recognize", help="Run words (one per line, comma-separated symbols) through the automaton.")
    rec.add_argument("--model", choices=[k.value for k in ModelKind], default=ModelKind.CATA.value)
    rec.add_argument("words", nargs="?", default=None, help="File of words (default: standard input).")
    rec.add_argument("--out", default=None, help="Write to this file instead of standard output.")

    verify = sub.add_parser("verify", help="Run the full verification suite.")
    _add_common(verify, with_model=False)
    verify.add_argument("--tolerance", type=float, default=None, help="Override tolerances of the asymptotic checks.")
    verify.add_argument("--no-asymptotics", action="store_true", help="Skip the asymptotic constants.")
    verify.add_argument("--perturb", default=None, help=argparse.SUPPRESS)

    asymp = sub.add_parser("asymp", help="Pole, growth constants and amplitudes.")
    _add_common(asymp, with_model=False)
    asymp.add_argument("--no-empirical", action="store_true", help="Skip the empirical amplitude study.")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        model=ModelKind(getattr(args, "model", ModelKind.CATA.value)),
        order=get_default_order() if getattr(args, "n", None) is None else args.n,
        brute_cap=get_brute_cap() if getattr(args, "brute_cap", None) is None else args.brute_cap,
        output_format=getattr(args, "output_format", "human"),
        out_path=args.out,
        tolerance=getattr(args, "tolerance", None),
    )


def cmd_coeffs(config: RunConfig, layer: str, level: int) -> int:
    series = dp_series(config.model, layer, level, config.order)
    label = f"{config.model.value}.{layer}{level}"
    write_output(render_series(series, config.output_format, label=label, model=config.model.value), config.out_path)
    return EXIT_OK


def cmd_closed(config: RunConfig, key: str) -> int:
    series = closed_form(key, config.order)
    write_output(render_series(series, config.output_format, key=key), config.out_path)
    return EXIT_OK


def cmd_table(config: RunConfig, method: str) -> int:
    if method == "brute":
        table = brute_force_counts(config.model, min(config.order, config.brute_cap))
    else:
        table = dp_counts(config.model, config.order)
    write_output(render_table(table, config.output_format), config.out_path)
    return EXIT_OK


def cmd_recognize(model: str, source: TextIO, out_path: Optional[str] = None) -> int:
    lines = []
    for raw in source:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        state = recognize(model, parse_word(line))
        lines.append(f"{line}\t{state if state is not None else 'rejected'}")
    write_output("\n".join(lines) + ("\n" if lines else ""), out_path)
    return EXIT_OK


def cmd_verify(config: RunConfig, perturb: Optional[str] = None, include_asymptotics: bool = True) -> int:
    report = run_verification(
        order=config.order,
        brute_cap=config.brute_cap,
        perturb=perturb,
        tolerance=config.tolerance,
        include_asymptotics=include_asymptotics,
    )
    write_output(render_verification(report, config.output_format), config.out_path)
    if not report.passed:
        for check in report.failures:
            print(f"FAILED: {check.name} {check.detail}".rstrip(), file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def cmd_asymp(config: RunConfig, include_empirical: bool = True, amplitude_order: int = AMPLITUDE_ORDER) -> int:
    report = asymptotic_report(include_empirical=include_empirical, order=amplitude_order)
    write_output(render_asymptotics(report, config.output_format), config.out_path)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for bad usage
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        if args.command == "recognize":
            if args.words is None:
                return cmd_recognize(args.model, sys.stdin, args.out)
            try:
                with open(args.words, 'r', encoding='utf-8') as f:
                    return cmd_recognize(args.model, f, args.out)
            except OSError as e:
                raise ValueError(f"Cannot read words file {args.words}: {e}") from e

        if args.command == "verify" and args.n is None:
            args.n = CROSS_CHECK_ORDER
        config = _config(args)
        if args.command == "coeffs":
            return cmd_coeffs(config, args.layer, args.level)
        if args.command == "closed":
            return cmd_closed(config, args.key)
        if args.command == "table":
            return cmd_table(config, args.method)
        if args.command == "verify":
            return cmd_verify(config, perturb=args.perturb, include_asymptotics=not args.no_asymptotics)
        amplitude_order = AMPLITUDE_ORDER if args.n is None else args.n
        return cmd_asymp(config, include_empirical=not args.no_empirical, amplitude_order=amplitude_order)
    except _USAGE_ERRORS as e:
        logger.debug(f"{args.command} failed: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

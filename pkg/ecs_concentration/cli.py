"""Command-line front end: ``ghz-ecs {ecp1,ecp2,sweep,verify}``.

Exit codes:

* 0: success
* 2: usage error (bad flags, invalid configuration, unwritable output)
* 3: degenerate protocol input, post-selection succeeds with probability 0
* 4: an internal tolerance check failed
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import math
import sys
from typing import IO, Iterator, Sequence

from .__about__ import __version__
from .errors import EcsError, EmptySelectionError, InvalidConfigError, ToleranceViolationError
from .measurement import ProtocolKind
from .protocols import DEFAULT_C1, ProtocolConfig, find_peak, run_protocol, sweep
from .rendering import (
    SweepCurve,
    render_report,
    render_report_json,
    render_verification,
    write_sweep_csv,
    write_sweep_json_lines,
)
from .verification import run_verification

__all__ = ["main", "build_parser"]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_TOLERANCE = 4


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def _positive_float(text: str) -> float:
    value = _finite_float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _alpha_list(text: str) -> list[float]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected one or more comma-separated amplitudes")
    return [_positive_float(item) for item in items]


def _int_at_least(minimum: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}, got {value}")
        return value

    return parse


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", "-o", help="write to this file instead of standard output")
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="diagnostics on standard error (default: WARNING)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghz-ecs",
        description="Entanglement concentration of 3-mode GHZ-type entangled coherent states.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    for kind in ProtocolKind:
        ecp = commands.add_parser(
            f"ecp{int(kind)}",
            help=f"run protocol {int(kind)} ({kind.name.lower()}) once and dump every stage",
        )
        ecp.set_defaults(kind=kind)
        ecp.add_argument("--alpha", type=_positive_float, required=True)
        ecp.add_argument("--c1", type=_finite_float, default=DEFAULT_C1)
        ecp.add_argument("--c2", type=_finite_float, default=None)
        ecp.add_argument(
            "--normalize", action="store_true", help="rescale (c1, c2) onto the unit circle"
        )
        ecp.add_argument(
            "--keep-amplified",
            action="store_true",
            help="stop after post-selection, keeping the sqrt(2)-amplified amplitude",
        )
        ecp.add_argument("--format", choices=["text", "json-lines"], default="text")
        _add_common(ecp)

    sweep_cmd = commands.add_parser("sweep", help="success probability across c1 in (0, 1)")
    sweep_cmd.add_argument("--protocol", type=ProtocolKind.parse, default=ProtocolKind.ANCILLA)
    sweep_cmd.add_argument("--alpha", type=_alpha_list, required=True, help="e.g. 0.5,1,2")
    sweep_cmd.add_argument("--points", type=_int_at_least(2), default=99)
    sweep_cmd.add_argument("--workers", type=_int_at_least(1), default=1)
    sweep_cmd.add_argument("--keep-amplified", action="store_true")
    sweep_cmd.add_argument("--format", choices=["csv", "json-lines"], default="csv")
    _add_common(sweep_cmd)

    verify = commands.add_parser("verify", help="Fock-oracle and unitarity checks")
    verify.add_argument("--n-max", type=_int_at_least(1), default=60)
    verify.add_argument("--trials", type=_int_at_least(1), default=200)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--max-amplitude", type=_positive_float, default=2.0)
    _add_common(verify)
    return parser


@contextlib.contextmanager
def _open_output(path: str | None) -> Iterator[IO[str]]:
    if path is None:
        yield sys.stdout
        return
    # newline="" keeps "\n" line endings on every platform
    with open(path, "w", encoding="utf-8", newline="") as stream:
        yield stream


def _cmd_ecp(args: argparse.Namespace, out: IO[str]) -> int:
    cfg = ProtocolConfig(
        alpha=args.alpha,
        c1=args.c1,
        c2=args.c2,
        normalize_inputs=args.normalize,
        keep_amplified=args.keep_amplified,
    )
    report = run_protocol(args.kind, cfg)
    out.write(render_report_json(report) if args.format == "json-lines" else render_report(report))
    report.check()
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace, out: IO[str]) -> int:
    curves = []
    for alpha in args.alpha:
        base = ProtocolConfig(alpha=alpha, keep_amplified=args.keep_amplified)
        rows = sweep(args.protocol, alpha, args.points, workers=args.workers, base=base)
        curves.append(SweepCurve(args.protocol, alpha, rows, find_peak(rows)))
    writer = write_sweep_json_lines if args.format == "json-lines" else write_sweep_csv
    writer(out, curves)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, out: IO[str]) -> int:
    summary = run_verification(
        n_max=args.n_max, trials=args.trials, seed=args.seed, max_amplitude=args.max_amplitude
    )
    out.write(render_verification(summary))
    return EXIT_OK if summary.passed else EXIT_TOLERANCE


_COMMANDS = {"ecp1": _cmd_ecp, "ecp2": _cmd_ecp, "sweep": _cmd_sweep, "verify": _cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and run one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        with _open_output(args.output) as out:
            return _COMMANDS[args.command](args, out)
    except EmptySelectionError as exc:
        print(f"ghz-ecs: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ToleranceViolationError as exc:
        print(f"ghz-ecs: tolerance violation: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except InvalidConfigError as exc:
        print(f"ghz-ecs: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ghz-ecs: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EcsError as exc:
        # any other library check tripping on valid input is an internal failure
        logger.debug("unexpected simulator error", exc_info=True)
        print(f"ghz-ecs: internal check failed: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE

"""Command line entry point: ``pptineq sweep`` and ``pptineq thresholds``.

Exit codes: 0 success, 1 configuration or I/O error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from pptineq.errors import DomainError, NumericalError, PptError
from pptineq.scan import Family, SweepConfig, emit, rows_from_csv, rows_from_json, run_sweep, threshold_report
from pptineq.witnesses import WitnessKind

log = logging.getLogger("pptineq")

EXIT_CONFIG = 1
EXIT_NUMERICAL = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pptineq", description="Sweep PPT and Bell-Mermin witnesses over N-qubit state families.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="evaluate witnesses for each qubit count")
    sw.add_argument("--family", required=True, choices=[f.value for f in Family])
    sw.add_argument("--n-min", type=int, default=3)
    sw.add_argument("--n-max", type=int, default=10)
    sw.add_argument(
        "--witness",
        action="append",
        choices=[k.value for k in WitnessKind],
        help="repeatable; default is all four",
    )
    sw.add_argument("--visibility", type=float, default=None, help="GHZ weight V (noisyGhz only)")
    sw.add_argument("--check-ppt", action="store_true", help="also compute the PPT signature of every cut")
    sw.add_argument("--format", default="json", choices=["csv", "json", "table"])
    sw.add_argument("--seed", type=int, default=None)
    sw.add_argument("--out", type=Path, default=None)

    th = sub.add_parser("thresholds", help="first violating N per witness from a sweep's JSON or CSV")
    th.add_argument("input", nargs="?", default="-", help="sweep output path, '-' for stdin")
    th.add_argument("--out", type=Path, default=None)
    return parser


def _write(data: bytes, out: Path | None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        try:
            out.write_bytes(data)
        except OSError as exc:
            raise OSError(f"cannot write {out}: {exc.strerror}") from exc


def _cmd_sweep(args) -> int:
    config = SweepConfig(
        family=args.family,
        n_min=args.n_min,
        n_max=args.n_max,
        witnesses=tuple(args.witness) if args.witness else tuple(WitnessKind),
        visibility=args.visibility,
        check_ppt_signature=args.check_ppt,
        output_format=args.format,
        seed=args.seed,
    )
    rows = run_sweep(config)
    for r in rows:
        if r.error:
            log.warning("n=%d: %s", r.n, r.error)
    _write(emit(rows, config.output_format), args.out)
    return 0


def _cmd_thresholds(args) -> int:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise OSError(f"cannot read {args.input}: {exc.strerror}") from exc
    if text.lstrip().startswith("["):
        rows = rows_from_json(text)
    else:
        rows = rows_from_csv(text)
    ns = sorted(r.n for r in rows)
    span = f"{ns[0]}..{ns[-1]}" if ns else "empty sweep"
    report = {
        k: (v if v is not None else f"threshold not reached in range {span}") for k, v in threshold_report(rows).items()
    }
    _write((json.dumps(report) + "\n").encode(), args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    handler = _cmd_sweep if args.command == "sweep" else _cmd_thresholds
    try:
        return handler(args)
    except NumericalError as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except (DomainError, PptError, OSError, ValueError, KeyError, TypeError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())

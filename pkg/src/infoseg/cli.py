"""Command-line interface.

Subcommands: encode, count, classify, compare, report.  Exit codes:
0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from .counting import CountingMethod, count
from .evaluate import REPORT_COLUMNS
from .ingest import UcrFormatError
from .pipeline import (
    BOTH_METHODS,
    PipelineError,
    RunConfig,
    compare_reports,
    load_reports,
    prepare_dataset,
    run_classify,
    write_encoded_dataset,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; we reserve 2 for data errors.
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _methods_from_flag(token: str) -> tuple[CountingMethod, ...]:
    if token == "both":
        return BOTH_METHODS
    return (CountingMethod.from_token(token),)


def _add_run_flags(sub: argparse.ArgumentParser, with_methods: bool = True):
    sub.add_argument("datasets", nargs="+", type=Path,
                     help="dataset directories (raw record files or encoded output)")
    sub.add_argument("--alphabet-size", type=int, default=16)
    sub.add_argument("--word-length", type=int, default=None,
                     help="downsampled length; default keeps one symbol per sample")
    sub.add_argument("--separator", choices=("on", "off"), default="on",
                     help="insert a separator between concatenated training strings")
    sub.add_argument("--out", type=Path, default=Path("out"))
    sub.add_argument("--delimiter", choices=("auto", "comma", "tab"), default="auto")
    if with_methods:
        sub.add_argument("--method", choices=("overlap", "nonoverlap", "both"),
                         default="both")
        sub.add_argument("--workers", type=int, default=1)
        sub.add_argument("--max-segment-len", type=int, default=None,
                         help="cap candidate segment length in the optimizer")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="infoseg",
                     description="Classify symbol strings by minimum information "
                                 "quantity under two substring-counting semantics.")
    parser.add_argument("-q", "--quiet", action="store_true",
                        help="suppress progress logging")
    commands = parser.add_subparsers(dest="command", required=True)

    enc = commands.add_parser("encode", help="symbolize datasets and write encodings")
    _add_run_flags(enc, with_methods=False)

    cnt = commands.add_parser("count", help="count a query string in a data string")
    cnt.add_argument("--method", choices=("overlap", "nonoverlap"), required=True)
    cnt.add_argument("--query", required=True)
    cnt.add_argument("--data", required=True,
                     help="literal symbol string, or a path to a file holding one")

    cls = commands.add_parser("classify", help="classify test sets and write reports")
    _add_run_flags(cls)

    cmp = commands.add_parser("compare", help="aggregate tallies and run the exact test")
    cmp.add_argument("--out", type=Path, default=Path("out"),
                     help="directory holding per-dataset report.json files")
    cmp.add_argument("--alpha", type=float, default=0.05)

    rep = commands.add_parser("report",
                              help="combine reports into one CSV and render figures")
    rep.add_argument("--out", type=Path, default=Path("out"))

    return parser


def _config_from_args(args) -> RunConfig:
    try:
        return RunConfig(
            datasets=list(args.datasets),
            alphabet_size=args.alphabet_size,
            word_length=args.word_length,
            methods=_methods_from_flag(getattr(args, "method", "both")),
            use_separator=args.separator == "on",
            out_dir=args.out,
            workers=getattr(args, "workers", 1),
            delimiter=args.delimiter,
            max_segment_len=getattr(args, "max_segment_len", None),
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def cmd_encode(args) -> int:
    config = _config_from_args(args)
    for path in config.datasets:
        encoded = prepare_dataset(path, config)
        write_encoded_dataset(encoded, config)
    return EXIT_OK


def cmd_count(args) -> int:
    data = args.data
    path = Path(data)
    if path.is_file():
        data = "".join(path.read_text().split())
    method = CountingMethod.from_token(args.method)
    try:
        print(count(args.query, data, method))
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    return EXIT_OK


def cmd_classify(args) -> int:
    config = _config_from_args(args)
    for path in config.datasets:
        report = run_classify(path, config)
        row = dict(zip(REPORT_COLUMNS, report.to_csv_row()))
        print(json.dumps(row))
    return EXIT_OK


def cmd_compare(args) -> int:
    summary = compare_reports(args.out, alpha=args.alpha)
    print(json.dumps({"b": summary["b"], "c": summary["c"],
                      "p": format(summary["p"], ".6e"),
                      "significant": summary["significant"]}))
    return EXIT_OK


def cmd_report(args) -> int:
    from .figures import render_report_figures

    reports = load_reports(args.out)
    combined = args.out / "report_all.csv"
    with open(combined, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for rep in reports:
            writer.writerow([
                rep["dataset"],
                rep.get("n_classes") if rep.get("n_classes") is not None else "",
                rep["n_test"],
                rep.get("series_length") if rep.get("series_length") is not None else "",
                rep.get("correct_overlap") if rep.get("correct_overlap") is not None else "",
                rep.get("correct_nonoverlap") if rep.get("correct_nonoverlap") is not None else "",
            ])
    p_value = None
    summary_path = args.out / "summary.json"
    if summary_path.exists():
        p_value = json.loads(summary_path.read_text()).get("p")
    figures = render_report_figures(reports, args.out / "figures", p_value)
    print(json.dumps({"csv": str(combined), "figures": [str(p) for p in figures]}))
    return EXIT_OK


_HANDLERS = {
    "encode": cmd_encode,
    "count": cmd_count,
    "classify": cmd_classify,
    "compare": cmd_compare,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (UcrFormatError, PipelineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def entry():  # console-script shim
    sys.exit(main())

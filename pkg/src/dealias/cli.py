"""Command line interface.

Subcommands: ``disambiguate`` (aliases -> partition), ``evaluate``
(partition vs truth), ``sweep`` (grid of methods/measures/thresholds),
``triage`` (pre-label pairs for review), ``extract`` (log -> alias CSV).

Exit codes: 0 success, 1 usage error, 2 bad input data, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
import traceback

from .clustering import ENGINES, METHODS, disambiguate
from .errors import DealiasError
from .evaluation import evaluate, sweep, triage, write_sweep_csv
from .normalize import StopWordConfig, prepare_aliases
from .rules import MatcherConfig
from .similarity import Measure
from .storage import (ALIAS_HEADER, PARTITION_HEADER, extract_from_log,
                      read_aliases, read_partition, write_aliases,
                      write_partition)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

DEFAULT_METHOD = "gambit"
DEFAULT_MEASURE = "lev"
DEFAULT_THRESHOLD = 0.95
DEFAULT_MIN_LEN = 3
THREADS_ENV_VAR = "DEALIAS_THREADS"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_thresholds(text: str) -> list[float]:
    """Parse ``0.5:1.0:0.05`` (inclusive range) or ``0.9,0.95,1.0``."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"bad threshold range {text!r}; "
                             "expected start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("threshold step must be positive")
        if stop < start:
            raise ValueError("threshold range is empty (stop < start)")
        values = []
        k = 0
        while (v := start + k * step) <= stop + 1e-9:
            values.append(round(v, 10))
            k += 1
        return values
    return [float(p) for p in text.split(",") if p.strip()]


def _resolve_threads(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get(THREADS_ENV_VAR)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(
                f"{THREADS_ENV_VAR} must be an integer, got {env!r}") from None
    return 1


def _matcher_config(args) -> MatcherConfig:
    measure = Measure.from_token(args.measure if args.measure is not None
                                 else DEFAULT_MEASURE)
    threshold = (args.threshold if args.threshold is not None
                 else DEFAULT_THRESHOLD)
    min_len = args.min_len if args.min_len is not None else DEFAULT_MIN_LEN
    return MatcherConfig(threshold=threshold, measure=measure, min_len=min_len)


def _load_prepared(path, stop_words_path):
    cfg = (StopWordConfig.from_file(stop_words_path)
           if stop_words_path else None)
    return prepare_aliases(read_aliases(path), cfg)


def cmd_disambiguate(args) -> int:
    aliases = _load_prepared(args.aliases, args.stop_words)
    if args.method == "simple" and (args.threshold is not None
                                    or args.measure is not None):
        print("warning: method 'simple' ignores --threshold and --measure",
              file=sys.stderr)
    cfg = _matcher_config(args)
    threads = _resolve_threads(args.threads)
    start = time.perf_counter()
    partition = disambiguate(aliases, args.method, cfg, workers=threads,
                             engine=args.engine)
    elapsed = time.perf_counter() - start
    if args.output:
        write_partition(partition, args.output)
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(PARTITION_HEADER)
        assignment = partition.assignment
        for alias_id in sorted(assignment):
            writer.writerow([alias_id, assignment[alias_id]])
    print(f"{len(aliases)} aliases -> {partition.author_count()} authors "
          f"({args.method}, {elapsed:.2f}s)", file=sys.stderr)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    predicted = read_partition(args.predicted)
    truth = read_partition(args.truth)
    report = evaluate(predicted, truth)
    print(f"tp = {report.true_positives}")
    print(f"fp = {report.false_positives}")
    print(f"fn = {report.false_negatives}")
    print(f"precision = {report.precision:.6f}")
    print(f"recall = {report.recall:.6f}")
    print(f"f1 = {report.f1:.6f}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    aliases = _load_prepared(args.aliases, args.stop_words)
    truth = read_partition(args.truth)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}; expected one of {METHODS}")
    measures = [Measure.from_token(tok.strip())
                for tok in args.measures.split(",") if tok.strip()]
    thresholds = parse_thresholds(args.thresholds)
    min_len = args.min_len if args.min_len is not None else DEFAULT_MIN_LEN
    rows = sweep(aliases, truth, methods, measures, thresholds,
                 min_len=min_len, workers=_resolve_threads(args.threads),
                 engine=args.engine)
    if args.output:
        with open(args.output, "w", newline="", encoding="utf-8") as fh:
            write_sweep_csv(rows, fh)
    else:
        write_sweep_csv(rows, sys.stdout)
    return EXIT_OK


def cmd_triage(args) -> int:
    aliases = _load_prepared(args.aliases, args.stop_words)
    result = triage(aliases, differ_cutoff=args.differ_cutoff)
    for suffix, pairs in (("match", result.auto_match),
                          ("differ", result.auto_differ),
                          ("undecided", result.undecided)):
        path = f"{args.out_prefix}_{suffix}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["id_a", "id_b"])
            writer.writerows(pairs)
    total = (len(result.auto_match) + len(result.auto_differ)
             + len(result.undecided))
    print(f"auto_match = {len(result.auto_match)}")
    print(f"auto_differ = {len(result.auto_differ)}")
    print(f"undecided = {len(result.undecided)}")
    print(f"total_pairs = {total}")
    return EXIT_OK


def cmd_extract(args) -> int:
    if args.log == "-":
        records = extract_from_log(sys.stdin)
    else:
        with open(args.log, encoding="utf-8", errors="replace") as fh:
            records = extract_from_log(fh)
    if args.output:
        write_aliases(records, args.output)
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(ALIAS_HEADER)
        for rec in records:
            writer.writerow([rec.id, rec.name, rec.email])
    print(f"{len(records)} distinct aliases", file=sys.stderr)
    return EXIT_OK


def _add_matcher_options(p, with_method=True):
    if with_method:
        p.add_argument("--method", choices=METHODS, default=DEFAULT_METHOD)
    p.add_argument("--measure", choices=[m.value for m in Measure],
                   default=None,
                   help=f"string similarity measure (default {DEFAULT_MEASURE})")
    p.add_argument("--threshold", type=float, default=None,
                   help=f"match decision threshold (default {DEFAULT_THRESHOLD})")
    p.add_argument("--min-len", type=int, default=None,
                   help="strings shorter than this never match "
                        f"(default {DEFAULT_MIN_LEN})")


def _add_common_input_options(p):
    p.add_argument("--stop-words", default=None, metavar="FILE",
                   help="replace the built-in stop-word list "
                        "(one token per line, '#' comments)")


def _add_run_options(p):
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes for the pair scan "
                        f"(default ${THREADS_ENV_VAR} or 1)")
    p.add_argument("--engine", choices=ENGINES, default="auto",
                   help="pair-scan implementation (default auto)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dealias",
                     description="Resolve author aliases (name/email pairs) "
                                 "to unique identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("disambiguate", parents=[],
                       help="group aliases into authors")
    p.add_argument("aliases", help="alias CSV (id,name,email)")
    p.add_argument("-o", "--output", default=None,
                   help="partition CSV to write (default stdout)")
    _add_matcher_options(p)
    _add_common_input_options(p)
    _add_run_options(p)
    p.set_defaults(func=cmd_disambiguate)

    p = sub.add_parser("evaluate", help="score a partition against truth")
    p.add_argument("predicted", help="partition CSV to score")
    p.add_argument("truth", help="ground-truth partition CSV")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep",
                       help="evaluate a grid of methods/measures/thresholds")
    p.add_argument("aliases", help="alias CSV (id,name,email)")
    p.add_argument("truth", help="ground-truth partition CSV")
    p.add_argument("-o", "--output", default=None,
                   help="sweep CSV to write (default stdout)")
    p.add_argument("--methods", default=DEFAULT_METHOD,
                   help="comma-separated subset of " + ",".join(METHODS))
    p.add_argument("--measures", default=DEFAULT_MEASURE,
                   help="comma-separated subset of "
                        + ",".join(m.value for m in Measure))
    p.add_argument("--thresholds", default=str(DEFAULT_THRESHOLD),
                   help="comma list '0.9,0.95' or range '0.5:1.0:0.05'")
    p.add_argument("--min-len", type=int, default=None)
    _add_common_input_options(p)
    _add_run_options(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("triage",
                       help="pre-label alias pairs for manual review")
    p.add_argument("aliases", help="alias CSV (id,name,email)")
    p.add_argument("--out-prefix", required=True,
                   help="writes <prefix>_match.csv, <prefix>_differ.csv, "
                        "<prefix>_undecided.csv")
    p.add_argument("--differ-cutoff", type=float, default=0.5,
                   help="auto-differ when both name and email similarity "
                        "fall below this (default 0.5)")
    _add_common_input_options(p)
    p.set_defaults(func=cmd_triage)

    p = sub.add_parser("extract",
                       help="collect distinct aliases from a tab-separated "
                            "name/email log")
    p.add_argument("log", help="log file, or '-' for stdin")
    p.add_argument("-o", "--output", default=None,
                   help="alias CSV to write (default stdout)")
    p.set_defaults(func=cmd_extract)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help exits 0, usage errors exit 1
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (DealiasError, OSError, ValueError) as exc:
        print(f"dealias: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL

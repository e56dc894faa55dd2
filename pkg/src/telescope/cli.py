"""
Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error (the message names the
offending file).
"""

import argparse
import itertools
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import benchmark, pipeline, recommender, synth
from .config import Settings, load_config
from .decomposition import stl
from .exceptions import DataError, EmptyCorpus, RecommenderNotTrained, TelescopeError
from .spectral import dominant_frequencies, periodogram
from .timeseries import format_value, read_csv, write_csv


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def fake_clock():
    """A clock that advances one second per reading."""
    ticks = itertools.count()
    return lambda: float(next(ticks))


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def read_corpus(directory):
    root = Path(directory)
    if not root.is_dir():
        raise DataError(f"{root}: not a directory")
    paths = sorted(root.glob("*.csv"))
    if not paths:
        raise EmptyCorpus(f"{root}: no *.csv series found")
    return {p.stem: read_csv(p) for p in paths}


def load_model(path):
    try:
        return recommender.RecommenderModel.load(path)
    except OSError as exc:
        raise DataError(f"{path}: cannot read ({exc.strerror or exc})") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise DataError(f"{path}: not a valid recommender model ({exc})") from exc
    except RecommenderNotTrained as exc:
        raise DataError(f"{path}: {exc}") from exc


def write_text(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_forecast(args, settings):
    mode = args.mode.replace("-", "_")
    if mode == "recommended" and args.model is None:
        raise UsageError("--mode recommended requires --model")
    model = load_model(args.model) if args.model else None
    values = read_csv(args.input)
    clock = fake_clock() if args.fake_clock else time.perf_counter
    try:
        result = pipeline.forecast(values, args.horizon, mode=mode, seed=args.seed,
                                   recommender=model, settings=settings, clock=clock)
    except DataError as exc:
        raise DataError(f"{args.input}: {exc}") from exc
    if args.output:
        write_csv(args.output, result.forecast)
    else:
        sys.stdout.write("".join(format_value(v) + "\n" for v in result.forecast))
    if args.diagnostics:
        write_text(args.diagnostics, json.dumps(result.diagnostics(), indent=2, sort_keys=True) + "\n")


def cmd_decompose(args, settings):
    values = read_csv(args.input)
    if values.size < 4:
        raise DataError(f"{args.input}: decomposition needs at least 4 observations")
    if args.period is not None:
        period = args.period
    else:
        period = dominant_frequencies(values, settings.max_count, settings.power_fraction,
                                      settings.median_ratio, settings.alpha)[0]
    try:
        dec = stl(values, period) if period > 1 else None
    except DataError as exc:
        raise DataError(f"{args.input}: {exc}") from exc
    if dec is None:
        trend = pipeline.linear_trend(values)
        rows = np.column_stack([values, trend, np.zeros_like(values), values - trend])
        text = "value,trend,season,irregular\n" + "".join(
            ",".join(format_value(v) for v in row) + "\n" for row in rows)
    else:
        text = dec.to_csv(values)
    if args.output:
        write_text(args.output, text)
    else:
        sys.stdout.write(text)
    if args.spectrum:
        write_text(args.spectrum, periodogram(values).to_csv())


def cmd_train(args, settings):
    corpus = read_corpus(args.corpus)
    model = recommender.train(list(corpus.values()), augment_to=args.augment_to,
                              seed=args.seed, settings=settings, jobs=args.jobs)
    model.save(args.out)


def cmd_benchmark(args, settings):
    corpus = read_corpus(args.corpus)
    names = [m.strip() for m in args.methods.split(",") if m.strip()]
    model = load_model(args.model) if args.model else None
    available = {
        "telescope": lambda y, h: pipeline.forecast(y, h, seed=args.seed, settings=settings).forecast,
        "telescope-star": lambda y, h: pipeline.forecast(
            y, h, mode="recommended", seed=args.seed, recommender=model, settings=settings).forecast,
        "naive": benchmark.naive_forecast,
        "seasonal-naive": benchmark.seasonal_naive_forecast,
    }
    unknown = [m for m in names if m not in available]
    if unknown or not names:
        raise UsageError(f"unknown method(s) {unknown}; choose from {sorted(available)}")
    if "telescope-star" in names and model is None:
        raise UsageError("method telescope-star requires --model")
    protocol = benchmark.EvalProtocol(repetitions=args.reps, seed=args.seed)
    clock = fake_clock() if args.fake_clock else time.perf_counter
    report = benchmark.run(corpus, {m: available[m] for m in names}, protocol, clock=clock)
    report.write(args.out)
    for sname, mname, rep, msg in report.failures:
        print(f"warning: {sname}/{mname} rep {rep} failed: {msg}", file=sys.stderr)


def cmd_synth(args, settings):
    synth.write_corpus(args.out, count=args.count, seed=args.seed)


def build_parser():
    parser = Parser(prog="telescope", description="Hybrid time-series forecasting.")
    parser.add_argument("--config", help="key=value file overriding thresholds and hyperparameters")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--config", default=argparse.SUPPRESS, help=argparse.SUPPRESS)

    p = sub.add_parser("forecast", help="forecast a single-column CSV series")
    p.add_argument("--input", required=True)
    p.add_argument("--horizon", type=positive_int, required=True)
    p.add_argument("--mode", choices=["time-critical", "recommended"], default="time-critical")
    p.add_argument("--model", help="trained recommender model (required for --mode recommended)")
    p.add_argument("--output", help="forecast CSV (default: stdout)")
    p.add_argument("--diagnostics", help="write frequencies, lambda, learner and components as JSON")
    p.add_argument("--fake-clock", action="store_true", help="deterministic timings for testing")
    common(p)
    p.set_defaults(func=cmd_forecast)

    p = sub.add_parser("decompose", help="write trend/season/irregular CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--period", type=positive_int, help="override the detected period")
    p.add_argument("--output", help="component CSV (default: stdout)")
    p.add_argument("--spectrum", help="also write the periodogram as frequency,power CSV")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("train-recommender", help="train the learner recommender on a corpus")
    p.add_argument("--corpus", required=True, help="directory of CSV series")
    p.add_argument("--augment-to", type=positive_int, help="extend the corpus to this many series")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=positive_int, default=1)
    common(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("benchmark", help="compare forecasting methods on a corpus")
    p.add_argument("--corpus", required=True, help="directory of CSV series")
    p.add_argument("--methods", default="telescope,naive,seasonal-naive")
    p.add_argument("--model", help="recommender model for telescope-star")
    p.add_argument("--reps", type=positive_int, default=10)
    p.add_argument("--out", required=True, help="report directory")
    p.add_argument("--jobs", type=positive_int, default=1,
                   help="accepted for symmetry; timed runs are always sequential")
    p.add_argument("--fake-clock", action="store_true", help="deterministic timings for testing")
    common(p)
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("synth", help="write a seeded synthetic corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=positive_int, default=10)
    common(p)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        settings = load_config(args.config) if args.config else Settings()
        args.func(args, settings)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (TelescopeError, OSError) as exc:
        print(f"telescope: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: run the test on CSV data, generate synthetic
data, run Monte Carlo studies.

Exit codes: 0 success, 1 internal/numeric failure, 2 usage or parse
error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from .datagen import KINDS, GeneratorSpec, gen
from .simharness import StudySpec, run_study
from .testkit import TestConfig, run_axial_symmetry_test

__all__ = ["main"]

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2


class CliError(Exception):
    """Usage or input error; maps to exit code 2."""


def read_csv_sample(path: str) -> np.ndarray:
    """Load an (n, d) sample from CSV; auto-detects a single header row."""
    if not os.path.exists(path):
        raise CliError(f"input file not found: {path}")
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for lineno, fields in enumerate(reader, start=1):
            if not fields or (len(fields) == 1 and not fields[0].strip()):
                continue
            try:
                rows.append([float(x) for x in fields])
            except ValueError:
                if lineno == 1 and not rows:
                    continue  # header row
                raise CliError(f"malformed CSV row {lineno} in {path}: {fields!r}") from None
    if not rows:
        raise CliError(f"no data rows in {path}")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise CliError(f"ragged CSV in {path}: row widths {sorted(widths)}")
    return np.asarray(rows, dtype=float)


def write_csv_sample(path: str, data: np.ndarray) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for row in data:
            writer.writerow([format(x, ".17g") for x in row])


def _parse_vector(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise CliError(f"could not parse vector {text!r}") from None


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("AXISYM_THREADS")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"bad AXISYM_THREADS value: {env!r}") from None
    return 0


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_test(args) -> int:
    data = read_csv_sample(args.input)
    try:
        config = TestConfig(
            alpha=args.alpha,
            bootstrap=args.bootstrap,
            seed=args.seed,
            h=_parse_vector(args.h) if args.h else None,
            bandwidth=args.bandwidth,
            kernel=args.kernel,
            h1_rel_tol=args.h1_rel_tol,
            threads=_threads(args),
        )
    except ValueError as exc:
        raise CliError(str(exc)) from None
    report = run_axial_symmetry_test(data, config)
    _write_json(args.output, report.to_dict())
    if args.plot_dir:
        from .figures import plot_test_report

        plot_test_report(report, args.plot_dir)
    decision = "reject axial symmetry" if report.reject else "no evidence against axial symmetry"
    print(f"global p-value {report.global_p:.6g} at alpha {config.alpha:g}: {decision} "
          f"(n={report.n}, d={report.d}, report: {args.output})")
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        spec = GeneratorSpec(
            kind=args.kind,
            n=args.n,
            seed=args.seed,
            mean=_parse_vector(args.mean) if args.mean else (),
            variances=_parse_vector(args.variances),
            angle=args.angle,
            k=args.k,
            skew=args.skew,
            axis=_parse_vector(args.axis),
        )
        data = gen(spec)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    write_csv_sample(args.out, data)
    print(f"wrote {data.shape[0]} rows x {data.shape[1]} columns to {args.out}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        generator = GeneratorSpec(
            kind=args.kind,
            n=args.n,
            mean=_parse_vector(args.mean) if args.mean else (),
            variances=_parse_vector(args.variances),
            angle=args.angle,
            k=args.k,
            skew=args.skew,
            axis=_parse_vector(args.axis),
        )
        config = TestConfig(
            alpha=args.alpha,
            bootstrap=args.bootstrap,
            kernel=args.kernel,
            bandwidth=args.bandwidth,
            h1_rel_tol=args.h1_rel_tol,
        )
        spec = StudySpec(
            generator=generator,
            config=config,
            repetitions=args.reps,
            master_seed=args.seed,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from None
    result = run_study(spec, threads=_threads(args))

    payload = {
        "generator": {
            "kind": generator.kind, "n": generator.n, "mean": list(generator.mean),
            "variances": list(generator.variances), "angle": generator.angle,
            "k": generator.k, "skew": generator.skew, "axis": list(generator.axis),
        },
        "alpha": config.alpha,
        "bootstrap": config.bootstrap,
        "master_seed": args.seed,
        "result": result.to_dict(),
    }
    if args.json:
        _write_json(args.json, payload)
    if args.csv:
        new_file = not os.path.exists(args.csv)
        with open(args.csv, "a", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            if new_file:
                writer.writerow([
                    "kind", "n", "alpha", "bootstrap", "reps", "master_seed",
                    "rejection_rate", "wilson_low", "wilson_high",
                ])
            writer.writerow([
                generator.kind, generator.n, config.alpha, config.bootstrap,
                result.repetitions, args.seed,
                format(result.rejection_rate, ".17g"),
                format(result.wilson_low, ".17g"),
                format(result.wilson_high, ".17g"),
            ])
    if args.plot_dir:
        from .figures import plot_study_result

        plot_study_result(result, f"{generator.kind}, n={generator.n}, alpha={config.alpha:g}", args.plot_dir)
    print(f"rejection rate {result.rejection_rate:.4f} "
          f"[{result.wilson_low:.4f}, {result.wilson_high:.4f}] "
          f"over {result.repetitions} repetitions ({generator.kind}, n={generator.n})")
    return EXIT_OK


def _add_generator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", required=True, choices=KINDS, help="data source")
    p.add_argument("--n", type=int, required=True, help="sample size")
    p.add_argument("--mean", default=None, help="comma-separated mean vector")
    p.add_argument("--variances", default="4,1", help="strictly decreasing diagonal variances")
    p.add_argument("--angle", type=float, default=0.0, help="rotation angle (radians)")
    p.add_argument("--k", type=int, default=3, help="polygon vertex count")
    p.add_argument("--skew", type=float, default=2.0, help="skew_product scale contrast")
    p.add_argument("--axis", default="1,0", help="mirror axis for mirrored_mixture")


def _add_test_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=0.05, help="test level")
    p.add_argument("--bootstrap", type=int, default=500, help="bootstrap replicates B")
    p.add_argument("--bandwidth", type=float, default=None, help="explicit smoothing bandwidth")
    p.add_argument("--kernel", choices=("gaussian", "bump"), default="gaussian")
    p.add_argument("--h1-rel-tol", type=float, default=1e-6, dest="h1_rel_tol",
                   help="relative eigengap below which a simple-spectrum warning is recorded")
    p.add_argument("--threads", type=int, default=None,
                   help="worker count (0 = auto; falls back to AXISYM_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="axisym",
                                     description="Test of axial symmetry about an unspecified direction")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="run the test on a CSV dataset")
    p.add_argument("--input", required=True, help="CSV file, rows = observations")
    p.add_argument("--output", default="report.json", help="JSON report path")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--h", default=None, help="explicit projection direction (comma-separated)")
    p.add_argument("--plot-dir", default=None, help="directory for report figures")
    _add_test_flags(p)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("gen", help="generate synthetic data as CSV")
    _add_generator_flags(p)
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--out", default="data.csv", help="output CSV path")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("simulate", help="Monte Carlo level/power study")
    _add_generator_flags(p)
    p.add_argument("--reps", type=int, required=True, help="number of repetitions")
    p.add_argument("--seed", type=int, default=0, help="study master seed")
    p.add_argument("--json", default=None, help="JSON summary path")
    p.add_argument("--csv", default=None, help="CSV summary path (appends one row)")
    p.add_argument("--plot-dir", default=None, help="directory for study figures")
    _add_test_flags(p)
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, RuntimeError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

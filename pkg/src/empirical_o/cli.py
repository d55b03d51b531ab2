"""Command-line front end: run experiments, refit the bundled dataset,
or fit any measurement CSV, writing tables, verdicts and plot data.

Exit codes: 0 success, 1 runtime failure (including a failed fixture
integrity check), 2 configuration or input-file error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .distributions import DistributionSpec, parse_spec
from .experiment import (
    ExperimentPlan,
    MeasurementCsvError,
    MeasurementTable,
    read_measurement_csv,
    run_experiment,
    write_measurement_csv,
    write_wide_view,
)
from .fitting import (
    CLASSES,
    FIT_MODES,
    fit_report,
    resolve_classes,
    select_bound,
    write_plot_data,
    write_verdicts_csv,
)
from .fixtures import FixtureIntegrityError, check_fixture_integrity, load_fixture_table1

__all__ = ["main", "build_parser"]

DEFAULT_DIST_TEXTS = (
    "binomial:m=100,p=0.5",
    "poisson:lambda=1",
    "duniform:k=50",
    "cuniform:theta=1",
    "exponential:theta=1",
    "normal:mean=0,sd=1",
)


class CliInputError(Exception):
    """Bad configuration or input data; maps to exit code 2."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="empirical-o",
        description=(
            "Estimate empirical complexity bounds for quicksort over random "
            "inputs: sweep n, repeat trials, fit candidate classes, select "
            "the best-supported bound."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_fit_flags(p):
        p.add_argument(
            "--classes",
            nargs="+",
            default=["nlogn", "n2"],
            choices=sorted(CLASSES),
            help="candidate complexity classes (default: nlogn n2)",
        )
        p.add_argument(
            "--fit-mode",
            default="intercept",
            choices=FIT_MODES,
            help="least-squares model: with intercept, or through the origin",
        )
        p.add_argument(
            "--out-dir",
            default="out",
            help="directory for CSV outputs (default: ./out)",
        )

    run = sub.add_parser("run", help="run the experiment and fit the resulting curves")
    run.add_argument(
        "--dist",
        action="append",
        metavar="SPEC",
        help=(
            "distribution spec, repeatable, e.g. 'poisson:lambda=1' "
            "(default: the six stock distributions)"
        ),
    )
    run.add_argument("--metric", default="time", choices=("time", "comparisons"))
    run.add_argument("--n-min", type=int, default=5000)
    run.add_argument("--n-max", type=int, default=50000)
    run.add_argument("--n-step", type=int, default=5000)
    run.add_argument("--trials", type=int, default=10)
    run.add_argument("--seed", type=int, default=1)
    run.add_argument(
        "--warmup",
        type=int,
        default=None,
        help="discarded sorts per cell before trials (default: 1 for time, 0 for comparisons)",
    )
    add_fit_flags(run)

    refit = sub.add_parser(
        "refit-fixture", help="refit the bundled reference dataset and report verdicts"
    )
    add_fit_flags(refit)

    fit_cmd = sub.add_parser("fit", help="fit a measurement CSV produced by 'run'")
    fit_cmd.add_argument("csv_path", help="measurement CSV in the canonical long form")
    add_fit_flags(fit_cmd)

    return parser


def _curve(table: MeasurementTable, spec: DistributionSpec) -> tuple[list[int], list[float]]:
    pairs = sorted(
        (r.n, r.mean) for r in table.rows if r.spec.canonical() == spec.canonical()
    )
    ns = [n for n, _ in pairs]
    if len(set(ns)) != len(ns):
        dupes = sorted({n for n in ns if ns.count(n) > 1})
        raise CliInputError(
            f"duplicate rows for {spec.canonical()} at n={dupes}"
        )
    if len(ns) < 3:
        raise CliInputError(
            f"{spec.canonical()}: fit requires >= 3 sizes, got {len(ns)}"
        )
    return ns, [m for _, m in pairs]


def _fit_and_report(table: MeasurementTable, classes, mode: str, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    verdicts = []
    for spec in table.specs:
        ns, means = _curve(table, spec)
        verdict = select_bound(ns, means, classes, mode=mode)
        verdicts.append((spec, verdict))
        write_plot_data(fit_report(verdict, ns, means), spec, out_dir)
    write_verdicts_csv(verdicts, out_dir / "verdicts.csv")
    for spec, verdict in verdicts:
        evidence = ", ".join(
            f"{fr.complexity.token}={fr.r_squared:.6f}" for fr in verdict.per_class
        )
        print(f"{spec.canonical()}: {verdict.notation}   (R^2: {evidence})")


def _print_table(table: MeasurementTable) -> None:
    specs = table.specs
    ns = sorted({r.n for r in table.rows})
    cells = {(r.n, r.spec.canonical()): r.mean for r in table.rows}

    def fmt(v: float) -> str:
        return f"{v:.4f}" if table.metric == "time" else str(v)

    headers = ["n", "n_log10_n"] + [s.canonical() for s in specs]
    lines = [headers]
    for n in ns:
        lines.append(
            [str(n), f"{n * math.log10(n):.2f}"]
            + [fmt(cells[(n, s.canonical())]) for s in specs]
        )
    widths = [max(len(row[i]) for row in lines) for i in range(len(headers))]
    print(f"mean {table.metric} per cell ({table.trials} trials)")
    for row in lines:
        print("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))


def _cmd_run(args) -> int:
    dist_texts = args.dist if args.dist else list(DEFAULT_DIST_TEXTS)
    try:
        specs = tuple(parse_spec(t) for t in dist_texts)
        grid = tuple(range(args.n_min, args.n_max + 1, args.n_step))
        if len(grid) < 3:
            raise ValueError(
                f"n grid {args.n_min}..{args.n_max} step {args.n_step} has "
                f"{len(grid)} points; fitting needs at least 3"
            )
        plan = ExperimentPlan(
            n_grid=grid,
            trials=args.trials,
            seed=args.seed,
            metric=args.metric,
            distributions=specs,
            warmup=args.warmup,
        )
        classes = resolve_classes(args.classes)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc

    table = run_experiment(plan)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_measurement_csv(table, out_dir / "means.csv")
    write_wide_view(table, out_dir / "sds.csv", value="sd")
    _print_table(table)
    _fit_and_report(table, classes, args.fit_mode, out_dir)
    return 0


def _cmd_refit_fixture(args) -> int:
    check_fixture_integrity()
    table = load_fixture_table1()
    try:
        classes = resolve_classes(args.classes)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    _fit_and_report(table, classes, args.fit_mode, Path(args.out_dir))
    return 0


def _cmd_fit(args) -> int:
    try:
        table = read_measurement_csv(args.csv_path)
    except FileNotFoundError:
        raise CliInputError(f"no such file: {args.csv_path}") from None
    except MeasurementCsvError as exc:
        raise CliInputError(f"{args.csv_path}: {exc}") from exc
    try:
        classes = resolve_classes(args.classes)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    _fit_and_report(table, classes, args.fit_mode, Path(args.out_dir))
    return 0


_COMMANDS = {"run": _cmd_run, "refit-fixture": _cmd_refit_fixture, "fit": _cmd_fit}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FixtureIntegrityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime failure
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

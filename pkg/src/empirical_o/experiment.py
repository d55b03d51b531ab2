"""Designed experiment: sweep n, repeat trials, aggregate mean and SD per cell.

A cell is one (n, distribution) pair. Every trial generates a fresh input
from a seed derived injectively from (plan seed, spec, n, trial index), so
cells are reproducible independently of execution order. With the
``comparisons`` metric the whole table is a pure function of the plan;
with the ``time`` metric, cells run strictly sequentially (at most one
timed sort in flight) and generation is excluded from the timed region.
"""

from __future__ import annotations

import io
import math
import platform
import statistics
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .distributions import (
    Binomial,
    ContinuousUniform,
    DiscreteUniform,
    DistributionSpec,
    Exponential,
    Poisson,
    StdNormal,
    parse_spec,
    spec_entropy,
)
from .quicksort import clock_resolution, quicksort, timed_sort

__all__ = [
    "DEFAULT_DISTRIBUTIONS",
    "DEFAULT_GRID",
    "ExperimentPlan",
    "CellResult",
    "MeasurementTable",
    "ExperimentError",
    "MeasurementCsvError",
    "aggregate",
    "default_plan",
    "trial_rng",
    "run_experiment",
    "format_real",
    "write_measurement_csv",
    "read_measurement_csv",
    "write_wide_view",
]

METRICS = ("time", "comparisons")

DEFAULT_GRID = tuple(range(5000, 50001, 5000))

DEFAULT_DISTRIBUTIONS: tuple[DistributionSpec, ...] = (
    Binomial(100, 0.5),
    Poisson(1.0),
    DiscreteUniform(50),
    ContinuousUniform(1.0),
    Exponential(1.0),
    StdNormal(0.0, 1.0),
)

CSV_HEADER = ("metric", "n", "distribution", "mean", "sd", "trials")


class ExperimentError(RuntimeError):
    """A cell could not be completed (e.g. allocation failure)."""


class MeasurementCsvError(ValueError):
    """Malformed measurement CSV; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ExperimentPlan:
    """Grid of sizes, trial count, seed, metric and input distributions.

    ``warmup`` is the number of discarded sorts per cell before the timed
    trials; None selects the metric default (1 for time, 0 for
    comparisons).
    """

    n_grid: tuple[int, ...] = DEFAULT_GRID
    trials: int = 10
    seed: int = 1
    metric: str = "time"
    distributions: tuple[DistributionSpec, ...] = DEFAULT_DISTRIBUTIONS
    warmup: Optional[int] = None

    def __post_init__(self):
        grid = tuple(int(n) for n in self.n_grid)
        if not grid or any(n < 1 for n in grid):
            raise ValueError("n_grid must be a nonempty list of sizes >= 1")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("n_grid must be strictly ascending")
        object.__setattr__(self, "n_grid", grid)
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")
        dists = tuple(self.distributions)
        if not dists:
            raise ValueError("distributions must be nonempty")
        object.__setattr__(self, "distributions", dists)
        if self.warmup is not None and self.warmup < 0:
            raise ValueError("warmup must be nonnegative")

    @property
    def effective_warmup(self) -> int:
        if self.warmup is not None:
            return self.warmup
        return 1 if self.metric == "time" else 0


def default_plan(metric: str = "time", seed: int = 1, trials: int = 10) -> ExperimentPlan:
    """The stock design: n = 5000..50000 step 5000, six distributions."""
    return ExperimentPlan(metric=metric, seed=seed, trials=trials)


@dataclass(frozen=True)
class CellResult:
    n: int
    spec: DistributionSpec
    mean: float
    sd: float
    trial_values: Optional[tuple[float, ...]] = None


@dataclass(frozen=True)
class MeasurementTable:
    """Rows of (n, distribution, mean, sd) for one metric, plus metadata."""

    metric: str
    rows: tuple[CellResult, ...]
    trials: int
    metadata: dict = field(default_factory=dict)

    def column(self, spec: DistributionSpec) -> tuple[tuple[int, ...], tuple[float, ...]]:
        """The (ns, means) curve for one distribution, in row order."""
        wanted = spec.canonical()
        pairs = [(r.n, r.mean) for r in self.rows if r.spec.canonical() == wanted]
        if not pairs:
            raise KeyError(f"no rows for distribution {wanted}")
        ns, means = zip(*pairs)
        return ns, means

    @property
    def specs(self) -> tuple[DistributionSpec, ...]:
        seen: dict[str, DistributionSpec] = {}
        for r in self.rows:
            seen.setdefault(r.spec.canonical(), r.spec)
        return tuple(seen.values())


def aggregate(trial_values: Sequence[float]) -> tuple[float, float]:
    """Arithmetic mean and sample SD (divisor count-1; 0 for one value)."""
    values = list(trial_values)
    if not values:
        raise ValueError("cannot aggregate an empty list of trial values")
    mean = statistics.fmean(values)
    sd = statistics.stdev(values) if len(values) > 1 else 0.0
    return mean, sd


def trial_rng(seed: int, spec: DistributionSpec, n: int, t: int) -> np.random.Generator:
    """Generator for trial t of cell (n, spec), independent of cell order."""
    ss = np.random.SeedSequence(entropy=[int(seed), spec_entropy(spec), int(n), int(t)])
    return np.random.Generator(np.random.PCG64(ss))


def _run_cell(plan: ExperimentPlan, n: int, spec: DistributionSpec) -> CellResult:
    timed = plan.metric == "time"
    try:
        for _ in range(plan.effective_warmup):
            warm = spec.sample(n, trial_rng(plan.seed, spec, n, 0))
            timed_sort(warm.keys)
        values = []
        for t in range(plan.trials):
            keys = spec.sample(n, trial_rng(plan.seed, spec, n, t)).keys
            outcome = timed_sort(keys) if timed else quicksort(keys)
            values.append(outcome.run.elapsed if timed else float(outcome.run.comparisons))
    except MemoryError as exc:
        raise ExperimentError(
            f"cell n={n} distribution={spec.canonical()}: allocation failure"
        ) from exc
    mean, sd = aggregate(values)
    return CellResult(n, spec, mean, sd, tuple(values))


def run_experiment(plan: ExperimentPlan) -> MeasurementTable:
    """Run every (n, distribution) cell of the plan, in grid order."""
    rows = []
    for n in plan.n_grid:
        for spec in plan.distributions:
            rows.append(_run_cell(plan, n, spec))
    metadata = {"seed": str(plan.seed)}
    if plan.metric == "time":
        # withheld for comparison tables, which are byte-identical across
        # runs and hosts by contract
        metadata["clock_resolution_s"] = repr(clock_resolution())
        metadata["host"] = platform.platform()
        metadata["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return MeasurementTable(plan.metric, tuple(rows), plan.trials, metadata)


# ---------------------------------------------------------------------------
# CSV serialization

def format_real(v: float) -> str:
    """Reals in measurement CSVs carry 6 significant digits."""
    return f"{v:.6g}"


def _quote(s: str) -> str:
    return f'"{s}"' if "," in s else s


def write_measurement_csv(table: MeasurementTable, path: Union[str, Path, io.TextIOBase]):
    """Write the canonical long-form CSV with a ``#`` metadata sidecar."""
    own = not isinstance(path, io.TextIOBase)
    fh = open(path, "w", encoding="ascii", newline="") if own else path
    try:
        for key, value in table.metadata.items():
            fh.write(f"# {key}: {value}\n")
        fh.write(",".join(CSV_HEADER) + "\n")
        for row in table.rows:
            fh.write(
                f"{table.metric},{row.n},{_quote(row.spec.canonical())},"
                f"{format_real(row.mean)},{format_real(row.sd)},{table.trials}\n"
            )
    finally:
        if own:
            fh.close()


def _split_csv_line(line: str) -> list[str]:
    # minimal quoted-field split; the only quoted field is the spec text
    fields, buf, quoted = [], [], False
    for ch in line:
        if ch == '"':
            quoted = not quoted
        elif ch == "," and not quoted:
            fields.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    fields.append("".join(buf))
    return fields


def read_measurement_csv(path: Union[str, Path]) -> MeasurementTable:
    """Read a canonical measurement CSV back into a MeasurementTable.

    Raises MeasurementCsvError with a 1-based line number on malformed
    input. Trial values are not stored in the CSV and come back as None.
    """
    metadata: dict[str, str] = {}
    rows: list[CellResult] = []
    metric: Optional[str] = None
    trials: Optional[int] = None
    header_seen = False
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition(":")
                metadata[key.strip()] = value.strip()
                continue
            if not header_seen:
                if tuple(line.split(",")) != CSV_HEADER:
                    raise MeasurementCsvError(
                        lineno, f"expected header {','.join(CSV_HEADER)!r}, got {line!r}"
                    )
                header_seen = True
                continue
            fields = _split_csv_line(line)
            if len(fields) != len(CSV_HEADER):
                raise MeasurementCsvError(
                    lineno, f"expected {len(CSV_HEADER)} fields, got {len(fields)}"
                )
            m, n_text, dist_text, mean_text, sd_text, trials_text = fields
            if m not in METRICS:
                raise MeasurementCsvError(lineno, f"unknown metric {m!r}")
            if metric is None:
                metric = m
            elif m != metric:
                raise MeasurementCsvError(lineno, f"mixed metrics {metric!r} and {m!r}")
            try:
                n = int(n_text)
                mean = float(mean_text)
                sd = float(sd_text)
                row_trials = int(trials_text)
                spec = parse_spec(dist_text)
            except ValueError as exc:
                raise MeasurementCsvError(lineno, str(exc)) from None
            if n < 1:
                raise MeasurementCsvError(lineno, f"size must be >= 1, got {n}")
            if sd < 0 or not math.isfinite(mean):
                raise MeasurementCsvError(lineno, "mean must be finite and sd >= 0")
            if row_trials < 1:
                raise MeasurementCsvError(lineno, f"trials must be >= 1, got {row_trials}")
            if trials is None:
                trials = row_trials
            elif row_trials != trials:
                raise MeasurementCsvError(lineno, "trials must match across rows")
            rows.append(CellResult(n, spec, mean, sd))
    if not header_seen:
        raise MeasurementCsvError(1, "missing header line")
    if not rows:
        raise MeasurementCsvError(1, "no measurement rows")
    return MeasurementTable(metric, tuple(rows), trials, metadata)


def write_wide_view(table: MeasurementTable, path: Union[str, Path], value: str = "sd"):
    """Write an (n x distribution) grid of means or SDs, one column per spec."""
    if value not in ("mean", "sd"):
        raise ValueError(f"value must be 'mean' or 'sd', got {value!r}")
    specs = table.specs
    cells: dict[tuple[int, str], float] = {}
    ns: list[int] = []
    for row in table.rows:
        if row.n not in ns:
            ns.append(row.n)
        cells[(row.n, row.spec.canonical())] = getattr(row, value)
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(",".join(["n"] + [_quote(s.canonical()) for s in specs]) + "\n")
        for n in ns:
            vals = [format_real(cells[(n, s.canonical())]) for s in specs]
            fh.write(",".join([str(n)] + vals) + "\n")

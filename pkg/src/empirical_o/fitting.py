"""Least-squares fitting of complexity classes and empirical-bound selection.

Each candidate class f is fit as y ~ a + b*f(n) by ordinary least squares
(exact normal-equation solution), or through the origin when requested.
The selected class maximizes R^2 = 1 - SS_res/SS_tot; near-ties (within
1e-9) break toward the slower-growing class, encoding big-O minimality.
R^2 is clamped to [0, 1] and defined as 1 when SS_tot is below 1e-30:
constant data is fit perfectly by any class with zero slope.

``EmpiricalComplexityRegressor`` wraps the same engine behind the
scikit-learn estimator API so curves can be fed from pipelines or any
(sizes, measurements) data.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence, Union

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError

from .distributions import DistributionSpec

__all__ = [
    "ComplexityClass",
    "CLASSES",
    "DEFAULT_CANDIDATES",
    "FIT_MODES",
    "FitResult",
    "EmpiricalVerdict",
    "FitReport",
    "DegenerateDesignError",
    "fit",
    "select_bound",
    "fit_report",
    "resolve_classes",
    "dist_slug",
    "write_plot_data",
    "write_verdicts_csv",
    "EmpiricalComplexityRegressor",
]

FIT_MODES = ("intercept", "origin")

_SS_TOT_FLOOR = 1e-30
_TIE_EPS = 1e-9


@dataclass(frozen=True)
class ComplexityClass:
    """A candidate model curve f(n), fit as y ~ a + b*f(n).

    ``token`` names the class in CLIs and file names, ``label`` in rendered
    verdicts. ``growth_rank`` orders classes from slower- to
    faster-growing for tie-breaking.
    """

    token: str
    label: str
    growth_rank: int
    evaluate: Callable[[np.ndarray], np.ndarray]

    def __repr__(self):
        return f"ComplexityClass({self.token!r})"


CONST = ComplexityClass("const", "1", 0, lambda n: np.ones_like(n, dtype=float))
LOG_N = ComplexityClass("logn", "log n", 1, np.log)
LINEAR = ComplexityClass("n", "n", 2, lambda n: np.asarray(n, dtype=float))
N_LOG_N = ComplexityClass("nlogn", "n log n", 3, lambda n: n * np.log(n))
N_POW_15 = ComplexityClass("n15", "n^1.5", 4, lambda n: np.asarray(n, dtype=float) ** 1.5)
N_SQUARED = ComplexityClass("n2", "n^2", 5, lambda n: np.asarray(n, dtype=float) ** 2)

CLASSES = {c.token: c for c in (CONST, LOG_N, LINEAR, N_LOG_N, N_POW_15, N_SQUARED)}

DEFAULT_CANDIDATES = (N_LOG_N, N_SQUARED)


class DegenerateDesignError(ValueError):
    """All regressor values f(n_i) are equal; no slope can be identified."""


@dataclass(frozen=True)
class FitResult:
    complexity: ComplexityClass
    intercept: float
    slope: float
    r_squared: float
    residuals: tuple[float, ...]


@dataclass(frozen=True)
class EmpiricalVerdict:
    """Per-class fit evidence plus the selected empirical bound."""

    selected: ComplexityClass
    per_class: tuple[FitResult, ...]
    notation: str

    def result_for(self, token: str) -> FitResult:
        for fr in self.per_class:
            if fr.complexity.token == token:
                return fr
        raise KeyError(f"no fit for class {token!r}")


def resolve_classes(candidates: Iterable[Union[str, ComplexityClass]]) -> tuple[ComplexityClass, ...]:
    resolved = []
    for c in candidates:
        if isinstance(c, ComplexityClass):
            resolved.append(c)
        elif isinstance(c, str):
            try:
                resolved.append(CLASSES[c.lower()])
            except KeyError:
                raise ValueError(
                    f"unknown complexity class {c!r}; known: {sorted(CLASSES)}"
                ) from None
        else:
            raise TypeError(f"candidate must be a token or ComplexityClass, got {c!r}")
    if not resolved:
        raise ValueError("candidate list must be nonempty")
    return tuple(resolved)


def _check_curve(ns, ys) -> tuple[np.ndarray, np.ndarray]:
    ns = np.asarray(ns, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if ns.ndim != 1 or ys.ndim != 1 or len(ns) != len(ys):
        raise ValueError("ns and ys must be one-dimensional and equally long")
    if len(ns) < 3:
        raise ValueError(f"fit requires at least 3 points, got {len(ns)}")
    if np.any(ns < 1):
        raise ValueError("sizes must be >= 1")
    if np.any(np.diff(ns) <= 0):
        raise ValueError("sizes must be strictly ascending")
    if not np.all(np.isfinite(ys)):
        raise ValueError("measurements must be finite")
    return ns, ys


def fit(ns, ys, complexity: ComplexityClass, *, mode: str = "intercept") -> FitResult:
    """Least-squares fit of one class; exact normal-equation solution.

    ``mode='intercept'`` fits y = a + b*f(n); ``mode='origin'`` forces a=0.
    The ``const`` class carries no slope by definition and is fit as
    intercept-only; any other class with all f(n_i) equal raises
    DegenerateDesignError.
    """
    if mode not in FIT_MODES:
        raise ValueError(f"mode must be one of {FIT_MODES}, got {mode!r}")
    ns, ys = _check_curve(ns, ys)
    f = np.asarray(complexity.evaluate(ns), dtype=float)

    if np.all(ys == ys[0]):
        # exactly constant data is fit perfectly by any class with b = 0
        # (averaging identical doubles can still round, so test elementwise)
        return FitResult(complexity, float(ys[0]), 0.0, 1.0, (0.0,) * len(ys))
    y_mean = float(ys.mean())
    ss_tot = float(((ys - y_mean) ** 2).sum())
    if ss_tot < _SS_TOT_FLOOR:
        return FitResult(complexity, y_mean, 0.0, 1.0, tuple(ys - y_mean))

    if mode == "intercept":
        if complexity.token == "const":
            a, b = y_mean, 0.0
        else:
            f_mean = f.mean()
            s_ff = float(((f - f_mean) ** 2).sum())
            if s_ff == 0.0:
                raise DegenerateDesignError(
                    f"class {complexity.label!r}: all f(n) values are equal on this grid"
                )
            b = float(((f - f_mean) * (ys - y_mean)).sum()) / s_ff
            a = y_mean - b * float(f_mean)
    else:
        s_f2 = float((f * f).sum())
        if s_f2 == 0.0:
            raise DegenerateDesignError(
                f"class {complexity.label!r}: f(n) is identically zero on this grid"
            )
        b = float((f * ys).sum()) / s_f2
        a = 0.0

    residuals = ys - a - b * f
    r2 = 1.0 - float((residuals**2).sum()) / ss_tot
    r2 = min(1.0, max(0.0, r2))
    return FitResult(complexity, float(a), float(b), r2, tuple(residuals))


def select_bound(
    ns,
    ys,
    candidates: Sequence[Union[str, ComplexityClass]] = DEFAULT_CANDIDATES,
    *,
    mode: str = "intercept",
) -> EmpiricalVerdict:
    """Fit all candidates and select the best-supported class.

    Highest R^2 wins; R^2 values within 1e-9 are treated as tied and the
    slower-growing class is kept.
    """
    classes = resolve_classes(candidates)
    results = tuple(fit(ns, ys, c, mode=mode) for c in classes)
    best = results[0]
    for fr in results[1:]:
        if fr.r_squared > best.r_squared + _TIE_EPS:
            best = fr
        elif (
            abs(fr.r_squared - best.r_squared) <= _TIE_EPS
            and fr.complexity.growth_rank < best.complexity.growth_rank
        ):
            best = fr
    notation = f"y_avg(n) = O_emp({best.complexity.label})"
    return EmpiricalVerdict(best.complexity, results, notation)


@dataclass(frozen=True)
class Panel:
    """Observed-vs-fitted triples for one candidate class."""

    complexity: ComplexityClass
    ns: tuple[int, ...]
    observed: tuple[float, ...]
    fitted: tuple[float, ...]


@dataclass(frozen=True)
class FitReport:
    verdict: EmpiricalVerdict
    panels: tuple[Panel, ...]


def fit_report(verdict: EmpiricalVerdict, ns, ys) -> FitReport:
    """Plot-data bundle: one observed-vs-fitted panel per fitted class."""
    ns, ys = _check_curve(ns, ys)
    panels = []
    for fr in verdict.per_class:
        f = np.asarray(fr.complexity.evaluate(ns), dtype=float)
        fitted = fr.intercept + fr.slope * f
        panels.append(
            Panel(
                fr.complexity,
                tuple(int(n) for n in ns),
                tuple(float(y) for y in ys),
                tuple(float(v) for v in fitted),
            )
        )
    return FitReport(verdict, tuple(panels))


# ---------------------------------------------------------------------------
# file formats

def dist_slug(spec: DistributionSpec) -> str:
    """Filename-safe form of a spec's canonical text."""
    return spec.canonical().replace(":", "-").replace(",", "-").replace("=", "")


def write_plot_data(report: FitReport, spec: DistributionSpec, out_dir: Union[str, Path]) -> list[Path]:
    """One ``<dist>_<class>.csv`` per panel, full float precision."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for panel in report.panels:
        path = out_dir / f"{dist_slug(spec)}_{panel.complexity.token}.csv"
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write("n,observed,fitted\n")
            for n, obs, fitv in zip(panel.ns, panel.observed, panel.fitted):
                fh.write(f"{n},{obs!r},{fitv!r}\n")
        written.append(path)
    return written


def write_verdicts_csv(
    verdicts: Sequence[tuple[DistributionSpec, EmpiricalVerdict]],
    path: Union[str, Path],
):
    """Verdict summary: one row per distribution, one R^2 column per class."""
    if not verdicts:
        raise ValueError("no verdicts to write")
    tokens = [fr.complexity.token for fr in verdicts[0][1].per_class]
    for _, v in verdicts:
        if [fr.complexity.token for fr in v.per_class] != tokens:
            raise ValueError("verdicts must share one candidate set")
    with open(path, "w", encoding="ascii", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["distribution", "selected_class"] + [f"r2_{t}" for t in tokens])
        for spec, v in verdicts:
            writer.writerow(
                [spec.canonical(), v.selected.token]
                + [f"{fr.r_squared:.12g}" for fr in v.per_class]
            )


# ---------------------------------------------------------------------------
# scikit-learn front end

class EmpiricalComplexityRegressor(BaseEstimator, RegressorMixin):
    """Estimator facade: fit measurement curves, select a complexity class.

    Parameters
    ----------
    candidates : sequence of class tokens or ComplexityClass, default ("nlogn", "n2")
        Models compared during fit.
    fit_mode : "intercept" or "origin", default "intercept"
        Whether the per-class regression carries an intercept.

    After ``fit(X, y)`` with X the input sizes (shape (m,) or (m, 1)) and
    y the per-size measurements, exposes ``selected_class_``, ``coef_``,
    ``intercept_``, ``r_squared_`` and the full ``verdict_``;
    ``predict(X)`` evaluates the selected fitted curve.
    """

    def __init__(self, candidates=("nlogn", "n2"), fit_mode="intercept"):
        self.candidates = candidates
        self.fit_mode = fit_mode

    def _validate_sizes(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 2 and X.shape[1] == 1:
            X = X[:, 0]
        if X.ndim != 1:
            raise ValueError(f"X must have shape (m,) or (m, 1), got {X.shape}")
        return X

    def fit(self, X, y):
        ns = self._validate_sizes(X)
        verdict = select_bound(ns, y, resolve_classes(self.candidates), mode=self.fit_mode)
        best = verdict.result_for(verdict.selected.token)
        self.verdict_ = verdict
        self.results_ = verdict.per_class
        self.selected_class_ = verdict.selected.token
        self.notation_ = verdict.notation
        self.coef_ = best.slope
        self.intercept_ = best.intercept
        self.r_squared_ = best.r_squared
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        if not hasattr(self, "verdict_"):
            raise NotFittedError(
                "this EmpiricalComplexityRegressor instance is not fitted yet"
            )
        ns = self._validate_sizes(X)
        f = np.asarray(self.verdict_.selected.evaluate(ns), dtype=float)
        return self.intercept_ + self.coef_ * f

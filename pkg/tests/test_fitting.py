import csv

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from empirical_o import (
    CLASSES,
    ComplexityClass,
    DegenerateDesignError,
    EmpiricalComplexityRegressor,
    fit,
    fit_report,
    load_fixture_table1,
    parse_spec,
    select_bound,
    write_plot_data,
    write_verdicts_csv,
)
from empirical_o.fitting import N_LOG_N, N_SQUARED, dist_slug

NS = np.array([500, 1000, 2000, 4000, 8000, 16000])

FIXTURE_VERDICTS = {
    "binomial": "n2",
    "poisson": "n2",
    "duniform": "n2",
    "cuniform": "nlogn",
    "exponential": "nlogn",
    "normal": "nlogn",
}


def fixture_curve(name):
    table = load_fixture_table1()
    for spec in table.specs:
        if spec.name == name:
            return table.column(spec)
    raise KeyError(name)


# ---------------------------------------------------------------------------
# exact recovery and basic fits

@pytest.mark.parametrize("token", sorted(CLASSES))
def test_exact_model_recovery(token):
    rng = np.random.default_rng(hash(token) % 2**32)
    a, b = rng.uniform(0.5, 5.0), rng.uniform(0.5, 5.0)
    cls = CLASSES[token]
    ys = a + b * np.asarray(cls.evaluate(NS.astype(float)), dtype=float)
    result = fit(NS, ys, cls)
    assert result.r_squared == pytest.approx(1.0, abs=1e-12)
    verdict = select_bound(NS, ys, sorted(CLASSES))
    assert verdict.selected.token == token


def test_exact_quadratic_coefficients():
    ys = 2.0 * NS.astype(float) ** 2
    result = fit(NS, ys, N_SQUARED)
    assert result.slope == pytest.approx(2.0, rel=1e-12)
    assert result.intercept == pytest.approx(0.0, abs=1e-6)
    assert result.r_squared == pytest.approx(1.0, abs=1e-12)


def test_constant_data_is_perfect_for_any_class():
    ys = np.full(len(NS), 7.0)
    for token in CLASSES:
        result = fit(NS, ys, CLASSES[token])
        assert result.slope == 0.0
        assert result.intercept == 7.0
        assert result.r_squared == 1.0
    # every class ties at R^2 = 1; slowest growth wins
    assert select_bound(NS, ys, sorted(CLASSES)).selected.token == "const"


def test_exact_nlogn_with_all_six_candidates():
    ys = 3.0 * NS * np.log(NS)
    verdict = select_bound(NS, ys, sorted(CLASSES))
    assert verdict.selected.token == "nlogn"
    assert verdict.result_for("nlogn").r_squared == pytest.approx(1.0, abs=1e-12)
    assert verdict.notation == "y_avg(n) = O_emp(n log n)"


def test_origin_mode_forces_zero_intercept():
    ys = 5.0 * NS.astype(float)
    result = fit(NS, ys, CLASSES["n"], mode="origin")
    assert result.intercept == 0.0
    assert result.slope == pytest.approx(5.0, rel=1e-12)
    assert result.r_squared == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# invariances

def test_selection_invariant_under_affine_rescaling():
    rng = np.random.default_rng(3)
    ys = NS ** 1.7 + rng.normal(0, 50, len(NS))
    base = {
        fr.complexity.token: fr.r_squared
        for fr in select_bound(NS, ys, sorted(CLASSES)).per_class
    }
    for c, d in [(2.5, 0.0), (0.01, 3.0), (1000.0, -5.0)]:
        scaled = select_bound(NS, c * ys + d, sorted(CLASSES))
        for fr in scaled.per_class:
            assert fr.r_squared == pytest.approx(base[fr.complexity.token], abs=1e-12)
        assert scaled.selected.token == select_bound(NS, ys, sorted(CLASSES)).selected.token


def test_log_base_change_leaves_r_squared_unchanged():
    rng = np.random.default_rng(4)
    ys = 0.002 * NS * np.log(NS) + rng.normal(0, 1.0, len(NS))
    variants = [
        ComplexityClass("nlogn2", "n log2 n", 3, lambda n: n * np.log2(n)),
        ComplexityClass("nlogn10", "n log10 n", 3, lambda n: n * np.log10(n)),
    ]
    reference = fit(NS, ys, N_LOG_N).r_squared
    for cls in variants:
        assert fit(NS, ys, cls).r_squared == pytest.approx(reference, abs=1e-12)


def test_ties_break_toward_slower_growth():
    fast_clone = ComplexityClass("n2fast", "n^2 (alt)", 99, lambda n: np.asarray(n, float) ** 2)
    ys = 2.0 * NS.astype(float) ** 2
    verdict = select_bound(NS, ys, [fast_clone, N_SQUARED])
    assert verdict.selected.token == "n2"


# ---------------------------------------------------------------------------
# fixture verdicts

def test_fixture_poisson_prefers_quadratic():
    ns, ys = fixture_curve("poisson")
    assert fit(ns, ys, N_SQUARED).r_squared > fit(ns, ys, N_LOG_N).r_squared


@pytest.mark.parametrize("name,expected", sorted(FIXTURE_VERDICTS.items()))
def test_fixture_verdicts(name, expected):
    ns, ys = fixture_curve(name)
    assert select_bound(ns, ys).selected.token == expected


# ---------------------------------------------------------------------------
# errors

def test_fit_requires_three_points():
    with pytest.raises(ValueError, match="3 points"):
        fit([1000, 2000], [1.0, 2.0], N_SQUARED)


def test_fit_rejects_mismatched_or_unordered_sizes():
    with pytest.raises(ValueError):
        fit([1000, 2000, 4000], [1.0, 2.0], N_SQUARED)
    with pytest.raises(ValueError):
        fit([1000, 4000, 2000], [1.0, 2.0, 3.0], N_SQUARED)
    with pytest.raises(ValueError):
        fit([0, 1000, 2000], [1.0, 2.0, 3.0], N_SQUARED)
    with pytest.raises(ValueError):
        fit([1000, 2000, 4000], [1.0, np.nan, 3.0], N_SQUARED)


def test_degenerate_design_names_the_class():
    flat = ComplexityClass("flat", "flatline", 9, lambda n: np.full(len(n), 4.0))
    with pytest.raises(DegenerateDesignError, match="flatline"):
        fit(NS, NS.astype(float), flat)
    zero = ComplexityClass("zero", "zero", 9, lambda n: np.zeros(len(n)))
    with pytest.raises(DegenerateDesignError, match="zero"):
        fit(NS, NS.astype(float), zero, mode="origin")


def test_select_bound_rejects_unknown_token_and_empty_list():
    with pytest.raises(ValueError, match="unknown complexity class"):
        select_bound(NS, NS.astype(float), ["cubic"])
    with pytest.raises(ValueError):
        select_bound(NS, NS.astype(float), [])


# ---------------------------------------------------------------------------
# report bundle and file formats

def test_report_exact_quadratic_panel_matches_observed():
    ys = 2.0 * NS.astype(float) ** 2
    verdict = select_bound(NS, ys)
    report = fit_report(verdict, NS, ys)
    panel = {p.complexity.token: p for p in report.panels}["n2"]
    assert np.allclose(panel.fitted, panel.observed, rtol=1e-12)


def test_report_fixture_poisson_residuals_favor_quadratic():
    ns, ys = fixture_curve("poisson")
    report = fit_report(select_bound(ns, ys), ns, ys)
    sse = {
        p.complexity.token: sum((o - f) ** 2 for o, f in zip(p.observed, p.fitted))
        for p in report.panels
    }
    assert sse["n2"] < sse["nlogn"]


def test_report_constant_data_gives_constant_panels():
    ys = np.full(len(NS), 7.0)
    report = fit_report(select_bound(NS, ys), NS, ys)
    for panel in report.panels:
        assert set(panel.fitted) == {7.0}


def test_plot_data_files_round_trip_full_precision(tmp_path):
    spec = parse_spec("poisson:lambda=1")
    ns, ys = fixture_curve("poisson")
    verdict = select_bound(ns, ys)
    paths = write_plot_data(fit_report(verdict, ns, ys), spec, tmp_path)
    assert sorted(p.name for p in paths) == [
        "poisson-lambda1_n2.csv",
        "poisson-lambda1_nlogn.csv",
    ]
    with open(paths[0]) as fh:
        rows = list(csv.DictReader(fh))
    assert [int(r["n"]) for r in rows] == list(ns)
    assert [float(r["observed"]) for r in rows] == list(ys)


def test_verdicts_csv_layout(tmp_path):
    table = load_fixture_table1()
    verdicts = []
    for spec in table.specs:
        ns, ys = table.column(spec)
        verdicts.append((spec, select_bound(ns, ys)))
    path = tmp_path / "verdicts.csv"
    write_verdicts_csv(verdicts, path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["distribution", "selected_class", "r2_nlogn", "r2_n2"]
    assert len(rows) == 7
    selected = {r[0].split(":")[0]: r[1] for r in rows[1:]}
    assert selected == FIXTURE_VERDICTS
    for row in rows[1:]:
        assert 0.0 <= float(row[2]) <= 1.0 and 0.0 <= float(row[3]) <= 1.0


def test_dist_slug_is_filename_safe():
    assert dist_slug(parse_spec("binomial:m=100,p=0.5")) == "binomial-m100-p0.5"


# ---------------------------------------------------------------------------
# scikit-learn estimator facade

def test_regressor_selects_and_predicts():
    ys = 1.5 + 0.003 * NS.astype(float) ** 2
    reg = EmpiricalComplexityRegressor().fit(NS, ys)
    assert reg.selected_class_ == "n2"
    assert reg.coef_ == pytest.approx(0.003, rel=1e-9)
    assert reg.intercept_ == pytest.approx(1.5, rel=1e-6)
    assert np.allclose(reg.predict(NS), ys, rtol=1e-9)
    assert reg.score(NS, ys) == pytest.approx(1.0, abs=1e-12)


def test_regressor_accepts_column_vector_input():
    ys = 2.0 * NS * np.log(NS)
    reg = EmpiricalComplexityRegressor(candidates=("nlogn", "n2")).fit(NS.reshape(-1, 1), ys)
    assert reg.selected_class_ == "nlogn"
    assert np.allclose(reg.predict(NS.reshape(-1, 1)), ys, rtol=1e-9)


def test_regressor_sklearn_conventions():
    reg = EmpiricalComplexityRegressor(candidates=("n", "n2"), fit_mode="origin")
    params = reg.get_params()
    assert params == {"candidates": ("n", "n2"), "fit_mode": "origin"}
    cloned = clone(reg)
    assert cloned.get_params() == params
    reg.set_params(fit_mode="intercept")
    assert reg.get_params()["fit_mode"] == "intercept"


def test_regressor_predict_before_fit_raises():
    with pytest.raises(NotFittedError):
        EmpiricalComplexityRegressor().predict(NS)

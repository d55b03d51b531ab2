import csv

import pytest

from empirical_o.cli import main

RUN_SMALL = [
    "run",
    "--metric", "comparisons",
    "--n-min", "500",
    "--n-max", "4000",
    "--n-step", "500",
    "--trials", "5",
    "--seed", "42",
]


def read_verdicts(out_dir):
    with open(out_dir / "verdicts.csv") as fh:
        return list(csv.DictReader(fh))


# ---------------------------------------------------------------------------
# refit-fixture

def test_refit_fixture_reproduces_all_six_verdicts(tmp_path, capsys):
    assert main(["refit-fixture", "--out-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out.count("O_emp") == 6
    rows = read_verdicts(tmp_path)
    assert len(rows) == 6
    selected = {r["distribution"]: r["selected_class"] for r in rows}
    assert selected == {
        "binomial:m=100,p=0.5": "n2",
        "poisson:lambda=1": "n2",
        "duniform:k=50": "n2",
        "cuniform:theta=1": "nlogn",
        "exponential:theta=1": "nlogn",
        "normal:mean=0,sd=1": "nlogn",
    }


def test_refit_fixture_single_candidate_trivially_selects_it(tmp_path):
    assert main(["refit-fixture", "--classes", "nlogn", "--out-dir", str(tmp_path)]) == 0
    rows = read_verdicts(tmp_path)
    assert [r["selected_class"] for r in rows] == ["nlogn"] * 6


def test_refit_fixture_writes_plot_data(tmp_path):
    assert main(["refit-fixture", "--out-dir", str(tmp_path)]) == 0
    names = {p.name for p in tmp_path.iterdir()}
    assert "poisson-lambda1_n2.csv" in names
    assert "cuniform-theta1_nlogn.csv" in names
    assert len(names) == 6 * 2 + 1  # six specs x two classes + verdicts.csv


# ---------------------------------------------------------------------------
# run

def test_run_is_byte_identical_under_fixed_seed(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    args = RUN_SMALL + ["--dist", "poisson:lambda=1", "--dist", "cuniform:theta=1"]
    assert main(args + ["--out-dir", str(a)]) == 0
    assert main(args + ["--out-dir", str(b)]) == 0
    for name in ("means.csv", "sds.csv", "verdicts.csv", "poisson-lambda1_n2.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_run_verdicts_match_tie_structure(tmp_path, capsys):
    args = RUN_SMALL + [
        "--dist", "poisson:lambda=1",
        "--dist", "cuniform:theta=1",
        "--out-dir", str(tmp_path),
    ]
    assert main(args) == 0
    selected = {r["distribution"]: r["selected_class"] for r in read_verdicts(tmp_path)}
    assert selected["poisson:lambda=1"] == "n2"
    assert selected["cuniform:theta=1"] == "nlogn"
    out = capsys.readouterr().out
    assert "n_log10_n" in out  # console table rendered
    assert "y_avg(n) = O_emp(n^2)" in out


def test_run_then_fit_round_trips_verdicts(tmp_path):
    run_dir, fit_dir = tmp_path / "run", tmp_path / "fit"
    args = RUN_SMALL + ["--dist", "poisson:lambda=1", "--dist", "cuniform:theta=1"]
    assert main(args + ["--out-dir", str(run_dir)]) == 0
    assert main(["fit", str(run_dir / "means.csv"), "--out-dir", str(fit_dir)]) == 0
    original = {r["distribution"]: r["selected_class"] for r in read_verdicts(run_dir)}
    refit = {r["distribution"]: r["selected_class"] for r in read_verdicts(fit_dir)}
    assert refit == original


def test_run_time_metric_smoke(tmp_path):
    args = [
        "run", "--metric", "time",
        "--n-min", "1024", "--n-max", "4096", "--n-step", "1024",
        "--trials", "2", "--seed", "7",
        "--dist", "cuniform:theta=1",
        "--out-dir", str(tmp_path),
    ]
    assert main(args) == 0
    with open(tmp_path / "means.csv") as fh:
        meta = [line for line in fh if line.startswith("#")]
    assert any("clock_resolution_s" in line for line in meta)


# ---------------------------------------------------------------------------
# config and input errors

def test_unknown_distribution_exits_2(tmp_path, capsys):
    assert main(RUN_SMALL + ["--dist", "zipf:s=2", "--out-dir", str(tmp_path)]) == 2
    assert "unknown distribution" in capsys.readouterr().err


def test_too_few_grid_points_exits_2(tmp_path, capsys):
    args = [
        "run", "--metric", "comparisons",
        "--n-min", "1000", "--n-max", "2000", "--n-step", "1000",
        "--out-dir", str(tmp_path),
    ]
    assert main(args) == 2
    assert "at least 3" in capsys.readouterr().err


def test_unknown_class_choice_is_an_argparse_error(tmp_path):
    with pytest.raises(SystemExit) as exc_info:
        main(["refit-fixture", "--classes", "cubic", "--out-dir", str(tmp_path)])
    assert exc_info.value.code == 2


def test_fit_missing_file_exits_2(tmp_path, capsys):
    assert main(["fit", str(tmp_path / "nope.csv"), "--out-dir", str(tmp_path)]) == 2
    assert "no such file" in capsys.readouterr().err


def test_fit_malformed_csv_reports_line_number(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text(
        "metric,n,distribution,mean,sd,trials\n"
        "comparisons,1000,poisson:lambda=1,not-a-number,0,3\n"
    )
    assert main(["fit", str(bad), "--out-dir", str(tmp_path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_fit_requires_three_sizes_per_distribution(tmp_path, capsys):
    short = tmp_path / "short.csv"
    short.write_text(
        "metric,n,distribution,mean,sd,trials\n"
        "comparisons,1000,poisson:lambda=1,10.0,0,3\n"
        "comparisons,2000,poisson:lambda=1,40.0,0,3\n"
    )
    assert main(["fit", str(short), "--out-dir", str(tmp_path)]) == 2
    assert ">= 3 sizes" in capsys.readouterr().err


def test_fit_rejects_duplicate_cells(tmp_path, capsys):
    dup = tmp_path / "dup.csv"
    dup.write_text(
        "metric,n,distribution,mean,sd,trials\n"
        "comparisons,1000,poisson:lambda=1,10.0,0,3\n"
        "comparisons,1000,poisson:lambda=1,11.0,0,3\n"
        "comparisons,2000,poisson:lambda=1,40.0,0,3\n"
    )
    assert main(["fit", str(dup), "--out-dir", str(tmp_path)]) == 2
    assert "duplicate" in capsys.readouterr().err


def test_fit_synthetic_quadratic_selects_n2(tmp_path):
    synth = tmp_path / "synth.csv"
    lines = ["metric,n,distribution,mean,sd,trials"]
    for n in (1000, 2000, 4000, 8000):
        lines.append(f"comparisons,{n},duniform:k=50,{float(n * n)!r},0,1")
    synth.write_text("\n".join(lines) + "\n")
    assert main(["fit", str(synth), "--out-dir", str(tmp_path)]) == 0
    rows = read_verdicts(tmp_path)
    assert rows[0]["selected_class"] == "n2"

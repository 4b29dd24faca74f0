# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: test_cli
    Author: czh
    Create Date: 2021/10/23
--------------------------------------
    Change Activity:
        2021/10/27: config file precedence
======================================
"""
import json

import numpy as np
import pandas as pd
import pytest

from WeakDMD.bench.problems import parse_grid, sample_trajectory, toy_oscillator_spec
from WeakDMD.core.errors import ConfigError, DuplicateTime, ParseError
from WeakDMD.utils.data_loader import load_snapshots_csv
from experiments.config import RunConfig, get_argparse
from experiments.main import run_command

FIT_FLAGS = ["--window", "0:10", "--trial-counts", "60", "--test-counts", "30", "--overlaps", "1.22",
             "--p", "3", "--energy", "1.0"]
SHORT_FLAGS = ["--window", "0:5", "--trial-counts", "40", "--test-counts", "20", "--overlaps", "1.22",
               "--p", "3", "--energy", "1.0"]


@pytest.fixture(scope="module")
def toy_csv(tmp_path_factory):
    out = tmp_path_factory.mktemp("gen")
    code = run_command(["gen", "--problem", "toy", "--grid", "nonuniform:3000", "--span", "0:10", "--seed", "7",
                        "--output", str(out)])
    assert code == 0
    return out / "snapshots.csv"


def _last_line(text):
    return text.strip().splitlines()[-1]


def test_no_arguments_is_usage_error(capsys):
    assert run_command([]) == 2
    assert "usage" in capsys.readouterr().err


def test_unknown_command_is_usage_error():
    assert run_command(["transform"]) == 2


def test_missing_input_is_usage_error():
    assert run_command(["fit"]) == 2


def test_generated_csv_round_trips_exactly(toy_csv):
    loaded = load_snapshots_csv(toy_csv)
    expected = sample_trajectory(toy_oscillator_spec(), parse_grid("nonuniform:3000", 0.0, 10.0, seed=7))
    np.testing.assert_array_equal(loaded.t, expected.t)
    np.testing.assert_array_equal(loaded.x, expected.x)


def test_eigs_recovers_toy_spectrum(toy_csv, tmp_path, capsys):
    assert run_command(["eigs", str(toy_csv), *FIT_FLAGS, "--output", str(tmp_path)]) == 0
    assert "index,re,im" in capsys.readouterr().out
    frame = pd.read_csv(tmp_path / "spectrum.csv")
    assert list(frame.columns) == ["index", "re", "im"]
    dominant = complex(frame.loc[0, "re"], frame.loc[0, "im"])
    assert abs(dominant - complex(-0.05, 3.5)) <= 0.05 * 3.5


def test_eigs_is_deterministic(toy_csv, tmp_path):
    assert run_command(["eigs", str(toy_csv), *FIT_FLAGS, "--output", str(tmp_path / "a")]) == 0
    assert run_command(["eigs", str(toy_csv), *FIT_FLAGS, "--output", str(tmp_path / "b")]) == 0
    assert (tmp_path / "a" / "spectrum.csv").read_text() == (tmp_path / "b" / "spectrum.csv").read_text()


def test_fit_writes_outputs(toy_csv, tmp_path):
    assert run_command(["fit", str(toy_csv), *FIT_FLAGS, "--output", str(tmp_path)]) == 0
    summary = json.loads((tmp_path / "model_summary.json").read_text())
    assert summary["n_states"] == 2
    assert summary["r"] == 2
    modes = pd.read_csv(tmp_path / "modes.csv")
    assert list(modes.columns) == ["state", "mode", "re", "im"]
    assert len(modes) == 4
    assert len(pd.read_csv(tmp_path / "spectrum.csv")) == 2


def test_forecast_against_truth(toy_csv, tmp_path):
    code = run_command(["forecast", str(toy_csv), *SHORT_FLAGS, "--dt", "0.01", "--steps", "100",
                        "--truth", str(toy_csv), "--error-range", "0:100", "--output", str(tmp_path)])
    assert code == 0
    states = pd.read_csv(tmp_path / "forecast.csv")
    assert list(states.columns) == ["t", "x0", "x1"]
    assert len(states) == 100
    assert states["t"].iloc[0] == pytest.approx(5.01)
    errors = pd.read_csv(tmp_path / "forecast_error.csv")
    assert len(errors) == 100
    summary = json.loads((tmp_path / "forecast_error_summary.json").read_text())
    assert summary["mean_error"] < 0.25


def test_forecast_beyond_truth_range(toy_csv, tmp_path, capsys):
    code = run_command(["forecast", str(toy_csv), *FIT_FLAGS, "--dt", "0.01", "--steps", "10",
                        "--truth", str(toy_csv), "--output", str(tmp_path)])
    assert code == 1
    assert _last_line(capsys.readouterr().err).startswith("error: GridMismatch: ")


def test_reconstruct_with_extrapolation(toy_csv, tmp_path):
    code = run_command(["reconstruct", str(toy_csv), *SHORT_FLAGS, "--points", "50", "--extrapolate", "5.5",
                        "--output", str(tmp_path)])
    assert code == 0
    frame = pd.read_csv(tmp_path / "reconstruction.csv")
    assert list(frame.columns) == ["t", "kind", "x0", "x1"]
    assert (frame["kind"] == "reconstruction").sum() == 50
    assert 50 <= (frame["kind"] == "forecast").sum() <= 51


def test_sweep_writes_table_and_summaries(toy_csv, tmp_path):
    log_dir = tmp_path / "runs"
    code = run_command(["sweep", str(toy_csv), *FIT_FLAGS, "--test-sizes", "8,16", "--truth-problem", "toy",
                        "--log-dir", str(log_dir), "--output", str(tmp_path)])
    assert code == 0
    table = pd.read_csv(tmp_path / "sweep.csv")
    assert list(table.columns) == ["test_size", "index", "re", "im", "error"]
    assert len(table) == 4
    assert any(log_dir.iterdir())


def test_oracle_command(tmp_path, capsys):
    assert run_command(["oracle", "--t2", "1,20", "--output", str(tmp_path)]) == 0
    assert "t2,index,re,im" in capsys.readouterr().out
    frame = pd.read_csv(tmp_path / "oracle.csv")
    assert len(frame) == 4
    np.testing.assert_allclose(frame["re"], -0.05, atol=1e-6)
    np.testing.assert_allclose(frame["im"].abs(), 3.5, atol=1e-6)


def test_missing_file(tmp_path, capsys):
    missing = tmp_path / "missing.csv"
    assert run_command(["fit", str(missing), "--output", str(tmp_path)]) == 1
    assert _last_line(capsys.readouterr().err) == f"error: FileNotFound: {missing}"


def test_duplicate_time_reported_on_one_line(tmp_path, capsys):
    path = tmp_path / "dup.csv"
    path.write_text("0,1.0\n0.5,2.0\n0.5,3.0\n1.0,4.0\n")
    assert run_command(["eigs", str(path), "--output", str(tmp_path)]) == 1
    assert _last_line(capsys.readouterr().err).startswith("error: DuplicateTime: ")


def test_load_two_row_file(tmp_path):
    path = tmp_path / "two.csv"
    path.write_text("0,1,0\n0.5,0.9,0.1\n")
    snapshots = load_snapshots_csv(path)
    assert (snapshots.n_states, snapshots.n_times) == (2, 2)
    np.testing.assert_array_equal(snapshots.x, [[1.0, 0.9], [0.0, 0.1]])


def test_load_sorts_rows_and_skips_header(tmp_path):
    path = tmp_path / "unsorted.csv"
    path.write_text("t,x0\n1.0,2.0\n0.0,1.0\n0.5,1.5\n")
    snapshots = load_snapshots_csv(path)
    np.testing.assert_array_equal(snapshots.t, [0.0, 0.5, 1.0])
    np.testing.assert_array_equal(snapshots.x, [[1.0, 1.5, 2.0]])


def test_load_state_rows(tmp_path):
    path = tmp_path / "states.csv"
    path.write_text("t,0,1,2\nx0,1,2,3\nx1,4,5,6\n")
    snapshots = load_snapshots_csv(path, layout="state-rows")
    np.testing.assert_array_equal(snapshots.t, [0.0, 1.0, 2.0])
    np.testing.assert_array_equal(snapshots.x, [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])


def test_load_reports_bad_field_location(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("t,x0\n0,1\n1,abc\n")
    with pytest.raises(ParseError, match="row 3, column 2"):
        load_snapshots_csv(path)


def test_load_rejects_duplicate_times(tmp_path):
    path = tmp_path / "dup.csv"
    path.write_text("0,1\n0,2\n")
    with pytest.raises(DuplicateTime):
        load_snapshots_csv(path)


def test_flags_override_config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# toy run\nenergy = 0.9\ntrial.counts = 10,20  # two tiers\nforecast.space = full\n")
    args = get_argparse(["fit", "data.csv", "--config", str(path), "--energy", "0.95"])
    config = RunConfig.from_args(args)
    assert config.energy == 0.95
    assert config.trial["counts"] == [10, 20]
    assert config.forecast["space"] == "full"
    assert config.test["counts"] == [20]


def test_config_file_rejects_unknown_key(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("energy = 0.9\ntrial.size = 10\n")
    with pytest.raises(ConfigError, match=":2:"):
        RunConfig().load_file(path)


def test_unknown_config_key_exits_with_category(tmp_path, capsys):
    path = tmp_path / "run.cfg"
    path.write_text("bogus = 1\n")
    assert run_command(["oracle", "--config", str(path), "--output", str(tmp_path)]) == 1
    assert _last_line(capsys.readouterr().err).startswith("error: ConfigError: ")

# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: test_metrics
    Author: czh
    Create Date: 2021/10/21
--------------------------------------
    Change Activity:
======================================
"""
import numpy as np
import pytest

from WeakDMD.core.errors import GridMismatch, ZeroNorm
from WeakDMD.core.types import validate_snapshots
from WeakDMD.metrics.metric import SpectrumScore, eigenvalue_error, forecast_error, mean_forecast_error

T = [0.0, 1.0]


def test_eigenvalue_error():
    assert eigenvalue_error(complex(-0.05, 3.5), complex(-0.0625, 3.5)) == pytest.approx(0.0125)
    assert eigenvalue_error(0.0, 3 + 4j) == pytest.approx(5.0)


def test_forecast_error_values():
    truth = validate_snapshots([[3.0, 1.0], [4.0, 0.0]], T)
    np.testing.assert_allclose(forecast_error(truth, truth), [0.0, 0.0])
    np.testing.assert_allclose(forecast_error(truth, validate_snapshots(np.zeros((2, 2)), T)), [1.0, 1.0])
    predicted = validate_snapshots([[3.0, 1.0], [0.0, 0.0]], T)
    np.testing.assert_allclose(forecast_error(truth, predicted), [0.8, 0.0])


def test_forecast_error_needs_matching_grids():
    truth = validate_snapshots([[1.0, 1.0]], T)
    with pytest.raises(GridMismatch):
        forecast_error(truth, validate_snapshots([[1.0, 1.0]], [0.0, 2.0]))
    with pytest.raises(GridMismatch):
        forecast_error(truth, validate_snapshots(np.ones((2, 2)), T))


def test_forecast_error_zero_truth():
    truth = validate_snapshots([[1.0, 0.0]], T)
    with pytest.raises(ZeroNorm):
        forecast_error(truth, truth)


def test_mean_forecast_error_range():
    errors = [1.0, 2.0, 3.0, 4.0]
    assert mean_forecast_error(errors) == pytest.approx(2.5)
    assert mean_forecast_error(errors, 1, 3) == pytest.approx(2.5)
    assert mean_forecast_error(errors, 3) == pytest.approx(4.0)
    with pytest.raises(IndexError):
        mean_forecast_error(errors, 2, 2)


def test_spectrum_score_accumulates():
    score = SpectrumScore([1.0, 2.0])
    np.testing.assert_allclose(score.update([1.1, 2.0]), [0.1, 0.0])
    row = score.update([1.3])
    assert row[0] == pytest.approx(0.3)
    assert np.isnan(row[1])
    info = score.result()
    assert info[0]["mean"] == pytest.approx(0.2)
    assert info[0]["count"] == 2
    assert info[1]["count"] == 1
    score.reset()
    assert score.result() == {}

# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: test_baseline
    Author: czh
    Create Date: 2021/10/21
--------------------------------------
    Change Activity:
======================================
"""
import numpy as np
import pytest

from WeakDMD.bench.problems import (TOY_EIGENVALUES, nonuniform_grid, sample_trajectory, toy_oscillator_spec,
                                    uniform_grid)
from WeakDMD.core.errors import NonUniformGrid, RankTooLarge
from WeakDMD.core.types import validate_snapshots
from WeakDMD.models.baseline import fit_exact_dmd


def test_single_exponential_rate():
    t = np.linspace(0.0, 1.0, 11)
    model = fit_exact_dmd(validate_snapshots(np.exp(2.0 * t), t), 1)
    assert model.spectrum_continuous[0] == pytest.approx(2.0, abs=1e-8)
    assert model.spectrum_discrete[0] == pytest.approx(np.exp(0.2), abs=1e-10)
    assert model.dt == pytest.approx(0.1)


def test_toy_oscillator_recovered_exactly():
    snapshots = sample_trajectory(toy_oscillator_spec(), uniform_grid(0.0, 100.0, 10001))
    model = fit_exact_dmd(snapshots, 2)
    np.testing.assert_allclose(model.spectrum_continuous.eigenvalues, TOY_EIGENVALUES, atol=1e-6)
    np.testing.assert_allclose(np.exp(model.spectrum_continuous.eigenvalues * model.dt),
                               model.spectrum_discrete, atol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(model.modes, axis=0), 1.0)


def test_refuses_nonuniform_grid():
    t = np.array([0.0, 0.1, 0.3, 0.4])
    with pytest.raises(NonUniformGrid):
        fit_exact_dmd(validate_snapshots(np.exp(-t), t), 1)


def test_refuses_two_segment_grid():
    grid = nonuniform_grid(0.0, 100.0, 20000)
    spacing = np.diff(grid.t)
    assert spacing.max() >= 10.0 * spacing.min()
    with pytest.raises(NonUniformGrid):
        fit_exact_dmd(sample_trajectory(toy_oscillator_spec(), grid), 2)


@pytest.mark.parametrize("rank", [0, 3, 2.0])
def test_rank_bounds(rank):
    t = np.linspace(0.0, 1.0, 6)
    snapshots = validate_snapshots(np.vstack([np.exp(-t), np.exp(-2.0 * t)]), t)
    with pytest.raises(RankTooLarge):
        fit_exact_dmd(snapshots, rank)


def test_rank_limited_by_snapshot_count():
    t = np.array([0.0, 1.0])
    snapshots = validate_snapshots(np.eye(3)[:, :2], t)
    with pytest.raises(RankTooLarge):
        fit_exact_dmd(snapshots, 2)


def test_negative_discrete_eigenvalue_uses_principal_branch():
    t = np.arange(6.0)
    model = fit_exact_dmd(validate_snapshots((-0.5) ** t, t), 1)
    value = model.spectrum_continuous[0]
    assert value.real == pytest.approx(np.log(0.5))
    assert abs(value.imag) == pytest.approx(np.pi)

# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: test_core
    Author: czh
    Create Date: 2021/10/20
--------------------------------------
    Change Activity:
======================================
"""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from WeakDMD.core.errors import (InvalidWindow, NonFiniteData, NonMonotoneTime, ShapeMismatch,
                                 WeakDmdError)
from WeakDMD.core.types import ComplexSpectrum, TimeGrid, Window, validate_snapshots


def test_validate_snapshots_accepts_well_formed_input():
    snapshots = validate_snapshots([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]], [0.0, 1.0, 2.0])
    assert snapshots.n_states == 2
    assert snapshots.n_times == 3
    np.testing.assert_array_equal(snapshots.t, [0.0, 1.0, 2.0])


def test_validate_snapshots_rejects_repeated_time():
    with pytest.raises(NonMonotoneTime):
        validate_snapshots([[1.0, 2.0, 3.0]], [0.0, 1.0, 1.0])


def test_validate_snapshots_rejects_column_mismatch():
    with pytest.raises(ShapeMismatch):
        validate_snapshots(np.ones((2, 3)), [0.0, 1.0])


def test_monotonicity_is_checked_before_shape():
    with pytest.raises(NonMonotoneTime):
        validate_snapshots(np.ones((2, 5)), [0.0, 2.0, 1.0])


def test_validate_snapshots_rejects_non_finite():
    with pytest.raises(NonFiniteData):
        validate_snapshots([[1.0, np.nan, 3.0]], [0.0, 1.0, 2.0])
    with pytest.raises(NonFiniteData):
        validate_snapshots([[1.0, 2.0]], [0.0, np.inf])


def test_single_state_vector_becomes_one_row():
    snapshots = validate_snapshots([1.0, 2.0, 3.0], [0.0, 0.5, 2.0])
    assert snapshots.x.shape == (1, 3)


def test_grid_needs_two_samples():
    with pytest.raises(ShapeMismatch):
        TimeGrid([0.0])


def test_snapshots_do_not_alias_input():
    x = np.arange(6.0).reshape(2, 3)
    t = np.array([0.0, 0.1, 0.3])
    snapshots = validate_snapshots(x, t)
    np.testing.assert_array_equal(snapshots.x, x)
    x[0, 0] = 100.0
    t[0] = -5.0
    assert snapshots.x[0, 0] == 0.0
    assert snapshots.t[0] == 0.0
    with pytest.raises(ValueError):
        snapshots.x[0, 0] = 1.0


def test_errors_carry_category():
    err = NonMonotoneTime("t[2] does not exceed t[1]")
    assert isinstance(err, WeakDmdError)
    assert isinstance(err, ValueError)
    assert err.category == "NonMonotoneTime"
    assert str(err) == "t[2] does not exceed t[1]"


def test_window_bounds():
    with pytest.raises(InvalidWindow):
        Window(1.0, 1.0)
    with pytest.raises(InvalidWindow):
        Window(2.0, 1.0)
    window = Window.parse("0:10")
    assert (window.t1, window.t2) == (0.0, 10.0)
    assert window.contains(10.0)
    assert not window.contains(10.5)
    with pytest.raises(InvalidWindow):
        Window.parse("0-10")


def test_window_must_lie_inside_samples():
    grid = TimeGrid([0.0, 1.0, 2.0])
    Window(0.0, 2.0).check_inside(grid)
    with pytest.raises(InvalidWindow):
        Window(-0.5, 1.0).check_inside(grid)


def test_uniform_grid_detection():
    assert TimeGrid(np.linspace(0.0, 1.0, 101)).is_uniform()
    assert not TimeGrid([0.0, 0.1, 0.3]).is_uniform()


def test_spectrum_order_real_part_descending():
    spectrum = ComplexSpectrum([-1.0, 2.0, 0.5 - 1j, 0.5 + 1j])
    np.testing.assert_array_equal(spectrum.eigenvalues, [2.0, 0.5 + 1j, 0.5 - 1j, -1.0])
    assert spectrum.dominant == 2.0


def test_conjugate_pair_lists_positive_imaginary_first():
    spectrum = ComplexSpectrum([-0.05 - 3.5j, -0.05 + 3.5j])
    assert spectrum[0].imag > 0
    assert spectrum[1] == np.conj(spectrum[0])


def test_conjugate_closure():
    assert ComplexSpectrum([1 + 1j, 1 - 1j, 2.0]).is_conjugate_closed()
    assert not ComplexSpectrum([1 + 1j, 2.0]).is_conjugate_closed()


def test_conjugate_closure_tolerance():
    assert ComplexSpectrum([1 + 1j, 1 - (1 + 1e-11) * 1j]).is_conjugate_closed()
    assert not ComplexSpectrum([1 + 1j, 1 - (1 + 1e-9) * 1j]).is_conjugate_closed()


complex_values = st.lists(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
                          min_size=1, max_size=12)


@settings(max_examples=200, deadline=None)
@given(values=complex_values)
def test_spectrum_sort_is_idempotent(values):
    once = ComplexSpectrum(values)
    twice = ComplexSpectrum(once.eigenvalues)
    np.testing.assert_array_equal(once.eigenvalues, twice.eigenvalues)


@settings(max_examples=200, deadline=None)
@given(values=complex_values)
def test_spectrum_sort_is_pairwise_ordered(values):
    spectrum = ComplexSpectrum(values)
    tol = 1e-10 * max(1.0, max(abs(v) for v in values))
    for left, right in zip(spectrum.eigenvalues, spectrum.eigenvalues[1:]):
        assert left.real >= right.real - tol
        if np.round(left.real / tol) == np.round(right.real / tol):
            assert left.imag >= right.imag

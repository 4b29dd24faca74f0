# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: metric
    Author: czh
    Create Date: 2021/10/16
--------------------------------------
    Change Activity:
======================================
"""
import numpy as np

from WeakDMD.core.errors import GridMismatch, ZeroNorm


def eigenvalue_error(lambda_true, lambda_est):
    """
    |λ - λ̃|, the modulus of the complex difference
    """
    return float(abs(complex(lambda_true) - complex(lambda_est)))


def forecast_error(truth, predicted):
    """
    Relative 2-norm error per time: ‖U(t) - Ũ(t)‖ / ‖U(t)‖.
    :param truth: SnapshotSet
    :param predicted: SnapshotSet on the same grid
    :return: length-N array
    """
    if truth.grid != predicted.grid or truth.n_states != predicted.n_states:
        raise GridMismatch(f"cannot compare {truth!r} with {predicted!r}")
    norms = np.linalg.norm(truth.x, axis=0)
    if np.any(norms == 0):
        n = int(np.argmax(norms == 0))
        raise ZeroNorm(f"truth is identically zero at t={truth.t[n]!r}")
    return np.linalg.norm(truth.x - predicted.x, axis=0) / norms


def mean_forecast_error(errors, start=0, stop=None):
    """
    平均预测误差, 取下标区间 [start, stop)
    """
    errors = np.asarray(errors, dtype=float)[start:stop]
    if errors.size == 0:
        raise IndexError(f"empty index range [{start}, {stop})")
    return float(errors.mean())


class SpectrumScore(object):
    """
    Running eigenvalue error per eigen index, accumulated over repeated fits.
    Example:
        score = SpectrumScore(true_spectrum)
        score.update(model.spectrum)
        score.result()
    """

    def __init__(self, reference):
        self.reference = np.asarray(list(reference), dtype=complex)
        self.errors = []
        self.reset()

    def reset(self):
        self.errors = []

    def update(self, estimate):
        estimate = np.asarray(list(estimate), dtype=complex)
        n = min(estimate.size, self.reference.size)
        row = np.full(self.reference.size, np.nan)
        row[:n] = [eigenvalue_error(t, e) for t, e in zip(self.reference[:n], estimate[:n])]
        self.errors.append(row)
        return row

    def result(self):
        if not self.errors:
            return {}
        table = np.vstack(self.errors)
        info = {}
        for k in range(self.reference.size):
            column = table[:, k]
            column = column[~np.isnan(column)]
            if column.size == 0:
                continue
            info[k] = {"mean": round(float(column.mean()), 6), "median": round(float(np.median(column)), 6),
                       "max": round(float(column.max()), 6), "count": int(column.size)}
        return info

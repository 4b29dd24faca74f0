# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: sweep
    Author: czh
    Create Date: 2021/10/18
--------------------------------------
    Change Activity:
        2021/10/26: noise robustness comparison against exact DMD
======================================
"""
import logging
from collections import namedtuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from WeakDMD.basis.bump import BasisLayout
from WeakDMD.bench.problems import add_noise, sample_trajectory
from WeakDMD.core.errors import ConfigError
from WeakDMD.metrics.metric import SpectrumScore, eigenvalue_error
from WeakDMD.models.baseline import fit_exact_dmd
from WeakDMD.models.wdmd import fit

logger = logging.getLogger(__name__)

SweepRow = namedtuple("SweepRow", ["test_size", "spectrum", "errors"])
CompareResult = namedtuple("CompareResult", ["table", "weak_median", "exact_median"])


def convergence_sweep(snapshots, trial_layout, test_sizes, window=None, energy=0.99999, truth=None,
                      test_overlap=None, test_p=None, writer=None, **fit_kwargs):
    """
    Fit once per test-space size with everything else fixed.
    :param test_sizes: strictly increasing test-basis counts
    :param truth: optional reference eigenvalues; errors are matched by spectrum index
    :param writer: optional tensorboardX SummaryWriter receiving Sweep/error_k scalars
    :return: list of SweepRow
    """
    test_sizes = [int(k) for k in test_sizes]
    if not test_sizes:
        raise ConfigError("sweep needs at least one test size")
    if any(b <= a for a, b in zip(test_sizes, test_sizes[1:])):
        raise ConfigError(f"test sizes must be strictly increasing, got {test_sizes}")
    window = window or trial_layout.window
    test_overlap = trial_layout.overlaps[0] if test_overlap is None else test_overlap
    test_p = trial_layout.p if test_p is None else test_p
    score = SpectrumScore(truth) if truth is not None else None
    rows = []
    for size in tqdm(test_sizes, desc="Sweep"):
        test_layout = BasisLayout([size], [test_overlap], test_p, window, trial_layout.overlap_mode)
        model = fit(snapshots, trial_layout, test_layout, window=window, energy=energy, **fit_kwargs)
        errors = score.update(model.spectrum) if score is not None else None
        rows.append(SweepRow(size, model.spectrum, errors))
        if writer is not None and errors is not None:
            for k, err in enumerate(errors):
                if not np.isnan(err):
                    writer.add_scalar(f"Sweep/error_{k + 1}", err, size)
    if score is not None:
        logger.info("sweep errors per eigenvalue: %s", score.result())
    return rows


def sweep_table(rows):
    records = []
    for row in rows:
        for index, value in enumerate(row.spectrum):
            error = row.errors[index] if row.errors is not None and index < len(row.errors) else np.nan
            records.append({"test_size": row.test_size, "index": index, "re": value.real, "im": value.imag,
                            "error": error})
    return pd.DataFrame.from_records(records, columns=["test_size", "index", "re", "im", "error"])


def compare_with_exact_dmd(spec, grid, noise_template, seeds, trial_layout, test_layout, energy=0.99999,
                           rank=None, **fit_kwargs):
    """
    Weak-DMD and exact DMD on identical noisy data, one draw per seed.
    Errors are measured on the dominant eigenvalue of the generator.
    :return: CompareResult(table with seed/weak_error/exact_error, weak median, exact median)
    """
    clean = sample_trajectory(spec, grid)
    reference = spec.spectrum().dominant
    rank = spec.n_states if rank is None else rank
    records = []
    for seed in tqdm(list(seeds), desc="Compare"):
        noisy = add_noise(clean, noise_template.with_seed(seed))
        weak = fit(noisy, trial_layout, test_layout, energy=energy, **fit_kwargs)
        exact = fit_exact_dmd(noisy, rank)
        records.append({"seed": int(seed),
                        "weak_error": eigenvalue_error(reference, weak.spectrum.dominant),
                        "exact_error": eigenvalue_error(reference, exact.spectrum_continuous.dominant)})
    table = pd.DataFrame.from_records(records, columns=["seed", "weak_error", "exact_error"])
    result = CompareResult(table, float(table["weak_error"].median()), float(table["exact_error"].median()))
    logger.info("median dominant-eigenvalue error: weak-DMD %.6g, exact DMD %.6g",
                result.weak_median, result.exact_median)
    return result

# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: baseline
    Author: czh
    Create Date: 2021/10/16
--------------------------------------
    Change Activity:
======================================
"""
import logging
import numbers

import numpy as np
import scipy.linalg

from WeakDMD.core.errors import NonUniformGrid, RankTooLarge
from WeakDMD.core.types import ComplexSpectrum
from WeakDMD.models.wdmd import eigendecompose, normalize_modes

logger = logging.getLogger(__name__)

UNIFORM_RTOL = 1e-9


class ExactDmdModel(object):
    """
    标准 exact DMD, 只适用于等间距快照
    spectrum_discrete is an array ordered like spectrum_continuous
    """

    def __init__(self, spectrum_discrete, spectrum_continuous, modes, dt, rank, a_tilde=None):
        self.spectrum_discrete = spectrum_discrete
        self.spectrum_continuous = spectrum_continuous
        self.modes = modes
        self.dt = dt
        self.rank = rank
        self.a_tilde = a_tilde

    def __repr__(self):
        return f"ExactDmdModel(rank={self.rank}, dt={self.dt!r}, dominant={self.spectrum_continuous.dominant:.6g})"


def fit_exact_dmd(snapshots, rank):
    """
    Exact DMD of X2 ≈ A X1 with a rank-r SVD of X1.
    :param snapshots: SnapshotSet on an equispaced grid
    :param rank: SVD truncation rank, at most min(M, N-1)
    :return: ExactDmdModel, continuous eigenvalues log(μ)/dt on the principal branch
    """
    if not snapshots.grid.is_uniform(UNIFORM_RTOL):
        raise NonUniformGrid(f"exact DMD needs equispaced snapshots (relative tolerance {UNIFORM_RTOL})")
    limit = min(snapshots.n_states, snapshots.n_times - 1)
    if not isinstance(rank, numbers.Integral) or rank < 1 or rank > limit:
        raise RankTooLarge(f"rank {rank!r} outside [1, {limit}] for {snapshots.n_states} states "
                           f"and {snapshots.n_times} snapshots")
    dt = float(np.mean(snapshots.grid.spacing))
    X1, X2 = snapshots.x[:, :-1], snapshots.x[:, 1:]
    U, s, Vh = scipy.linalg.svd(X1, full_matrices=False)
    U, s, V = U[:, :rank], s[:rank], Vh[:rank].conj().T
    a_tilde = U.conj().T @ X2 @ V / s[None, :]
    discrete, W = eigendecompose(a_tilde)
    mu = discrete.eigenvalues
    modes = normalize_modes(X2 @ V @ np.diag(1.0 / s) @ W)
    continuous = np.log(mu.astype(complex)) / dt
    order = ComplexSpectrum.sort_order(continuous)
    logger.info(f"exact DMD: rank {rank}, dt {dt:.6g}, dominant eigenvalue {continuous[order][0]:.8g}")
    return ExactDmdModel(mu[order], ComplexSpectrum(continuous), modes[:, order], dt, rank,
                         a_tilde=a_tilde)

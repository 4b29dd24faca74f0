# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: projection
    Author: czh
    Create Date: 2021/10/14
--------------------------------------
    Change Activity:
======================================
"""
import logging
from collections import namedtuple

import numpy as np
import scipy.linalg

from WeakDMD.basis.bump import basis_inner_products, bump_eval
from WeakDMD.core.errors import OutOfWindow, ShapeMismatch
from WeakDMD.tools.quadrature import samples_inside, windowed_trapezoid

logger = logging.getLogger(__name__)

CoefficientSolution = namedtuple("CoefficientSolution", ["c", "rank", "rank_deficient"])


class GramMatrix(object):
    """
    G_ij = ∫ ψ_i ψ_j over the window
    """

    def __init__(self, G):
        G = np.asarray(G, dtype=float)
        if G.ndim != 2 or G.shape[0] != G.shape[1]:
            raise ShapeMismatch(f"Gram matrix must be square, got shape {G.shape}")
        self.G = G

    def __len__(self):
        return self.G.shape[0]

    @property
    def shape(self):
        return self.G.shape

    def condition_number(self):
        s = scipy.linalg.svdvals(self.G)
        return float(np.inf) if s[-1] == 0 else float(s[0] / s[-1])


def data_inner_products(snapshots, basis, window):
    """
    a_jm = ∫ ψ_j x_m over [t1, t2] ∩ support(ψ_j), trapezoid on the sample grid.
    :return: J x M matrix
    """
    samples_inside(snapshots.t, window.t1, window.t2)
    out = np.zeros((len(basis), snapshots.n_states))
    for j, member in enumerate(basis):
        lower, upper = max(member.a, window.t1), min(member.b, window.t2)
        if upper <= lower:
            continue
        out[j] = windowed_trapezoid(snapshots.t, snapshots.x, lower, upper,
                                    weight=lambda nodes, m=member: bump_eval(m, nodes))
    return out


def gram_matrix(basis, window=None, n_nodes=0):
    G = basis_inner_products(basis, basis, window or basis.window, n_nodes=n_nodes)
    return GramMatrix(0.5 * (G + G.T))


def solve_trial_coefficients(G, a, rcond=1e-10):
    """
    Minimum-norm least squares solution of G c = a through an SVD pseudo-inverse.
    Singular values at or below rcond * s_max are discarded.
    :param G: GramMatrix or J x J array
    :param a: J x M right-hand side
    :return: CoefficientSolution(c, rank, rank_deficient)
    """
    G = G.G if isinstance(G, GramMatrix) else np.asarray(G, dtype=float)
    a = np.asarray(a, dtype=float)
    squeeze = a.ndim == 1
    a = a[:, None] if squeeze else a
    if G.shape[0] != a.shape[0]:
        raise ShapeMismatch(f"Gram matrix is {G.shape} but the right-hand side has {a.shape[0]} rows")
    U, s, Vt = scipy.linalg.svd(G)
    keep = s > rcond * s[0] if s.size and s[0] > 0 else np.zeros(s.size, dtype=bool)
    rank = int(np.count_nonzero(keep))
    c = Vt[keep].T @ ((U[:, keep].T @ a) / s[keep, None])
    rank_deficient = rank < G.shape[0]
    if rank_deficient:
        logger.warning(f"Gram matrix is rank deficient: effective rank {rank} of {G.shape[0]}")
    return CoefficientSolution(c[:, 0] if squeeze else c, rank, rank_deficient)


class TrialProjection(object):
    """
    数据在试探空间上的连续表示 x(t) = Σ c_j ψ_j(t)
    """

    def __init__(self, basis, c, window, residual_rms, gram=None, rank=None):
        c = np.asarray(c, dtype=float)
        if c.ndim != 2 or c.shape[0] != len(basis):
            raise ShapeMismatch(f"coefficients must be {len(basis)} x M, got shape {c.shape}")
        self.basis = basis
        self.c = c
        self.window = window
        self.residual_rms = np.asarray(residual_rms, dtype=float)
        self.gram = gram
        self.rank = len(basis) if rank is None else rank

    def __repr__(self):
        return f"TrialProjection(J={self.n_basis}, M={self.n_states}, window={self.window!r})"

    @property
    def n_basis(self):
        return self.c.shape[0]

    @property
    def n_states(self):
        return self.c.shape[1]

    @property
    def rank_deficient(self):
        return self.rank < self.n_basis

    def evaluate(self, t):
        """
        Σ c_j ψ_j(t) without the window check, M x n
        """
        return self.c.T @ self.basis.evaluate(t)


def reconstruct(projection, t):
    """
    Evaluate the trial expansion at t. A scalar t gives a length-M vector, an array of
    times gives an M x n matrix.
    """
    scalar = np.ndim(t) == 0
    times = np.atleast_1d(np.asarray(t, dtype=float))
    outside = ~projection.window.contains(times)
    if np.any(outside):
        raise OutOfWindow(f"t={times[outside][0]!r} is outside the window "
                          f"[{projection.window.t1}, {projection.window.t2}]")
    values = projection.evaluate(times)
    return values[:, 0] if scalar else values


def residual_rms(projection, snapshots):
    inside = projection.window.contains(snapshots.t)
    residual = projection.evaluate(snapshots.t[inside]) - snapshots.x[:, inside]
    return np.sqrt(np.mean(residual ** 2, axis=1))


def project(snapshots, basis, window=None, rcond=1e-10, n_nodes=0):
    """
    Data inner products, Gram matrix and coefficient solve in one call.
    :return: TrialProjection
    """
    window = window or basis.window
    a = data_inner_products(snapshots, basis, window)
    gram = gram_matrix(basis, window, n_nodes=n_nodes)
    solution = solve_trial_coefficients(gram, a, rcond=rcond)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f"Gram matrix of {len(gram)} trial functions has condition number "
                     f"{gram.condition_number():.3g}")
    projection = TrialProjection(basis, solution.c, window, np.zeros(snapshots.n_states),
                                 gram=gram, rank=solution.rank)
    projection.residual_rms = residual_rms(projection, snapshots)
    logger.info(f"projected {snapshots.n_states} states onto {len(basis)} trial functions "
                f"(rank {solution.rank}), residual rms {np.array2string(projection.residual_rms, precision=4)}")
    return projection

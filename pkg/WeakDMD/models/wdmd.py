# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: wdmd
    Author: czh
    Create Date: 2021/10/15
--------------------------------------
    Change Activity:
        2021/10/22: reduced-space forecast as the default
======================================
"""
import logging
import numbers

import numpy as np
import scipy.linalg

from WeakDMD.basis.bump import basis_inner_products, build_basis_set
from WeakDMD.core.errors import (ConfigError, EigFailure, NonFiniteData, ShapeMismatch, SingularStep,
                                 WindowMismatch, ZeroMatrix)
from WeakDMD.core.types import ComplexSpectrum
from WeakDMD.models.projection import project, reconstruct

logger = logging.getLogger(__name__)

ENERGY_SLACK = 1e-12
STEP_RCOND = 1e-14
LARGE_STATE_COUNT = 2000
RESIDUAL_FLAG_RATIO = 0.1


class WeakPair(object):
    """
    Y+ 和 Y-, 每一列对应一个测试基函数
    """

    def __init__(self, y_plus, y_minus, test_basis, trial):
        if y_plus.shape != y_minus.shape:
            raise ShapeMismatch(f"Y+ is {y_plus.shape} but Y- is {y_minus.shape}")
        self.y_plus = y_plus
        self.y_minus = y_minus
        self.test_basis = test_basis
        self.trial = trial

    @property
    def shape(self):
        return self.y_minus.shape


def assemble_weak_pair(trial, test_basis, n_nodes=0):
    """
    Y-_i = Σ_j c_j <φ_i, ψ_j>
    Y+_i = φ_i(t2) f(t2) - φ_i(t1) f(t1) - Σ_j c_j <φ_i', ψ_j>,  f = Σ_j c_j ψ_j
    """
    window = trial.window
    if test_basis.window != window:
        raise WindowMismatch(f"trial window {window!r} differs from test window {test_basis.window!r}")
    values = basis_inner_products(test_basis, trial.basis, window, n_nodes=n_nodes)
    slopes = basis_inner_products(test_basis, trial.basis, window, derivative_left=True, n_nodes=n_nodes)
    y_minus = (values @ trial.c).T
    ends = np.array([window.t1, window.t2])
    f = trial.evaluate(ends)
    phi = test_basis.evaluate(ends)
    boundary = np.outer(f[:, 1], phi[:, 1]) - np.outer(f[:, 0], phi[:, 0])
    y_plus = boundary - (slopes @ trial.c).T
    return WeakPair(y_plus, y_minus, test_basis, trial)


class SvdTruncation(object):
    def __init__(self, L, S, R, energy, singular_values=None):
        self.L = L
        self.S = S
        self.R = R
        self.energy = energy
        self.singular_values = S if singular_values is None else singular_values

    @property
    def r(self):
        return self.S.size

    def reconstruct(self):
        return (self.L * self.S) @ self.R.conj().T


def energy_rank(singular_values, energy, squared=False):
    """
    Smallest r whose leading singular values hold at least `energy` of the total.
    The sum of the values themselves is used unless squared=True.
    """
    s = np.asarray(singular_values, dtype=float)
    weights = s ** 2 if squared else s
    fractions = np.cumsum(weights) / weights.sum()
    r = int(np.searchsorted(fractions, energy - ENERGY_SLACK) + 1)
    return min(r, int(np.count_nonzero(s > 0)))


def truncate_svd(y_minus, energy, squared=False):
    if not 0.0 < energy <= 1.0:
        raise ConfigError(f"energy must lie in (0, 1], got {energy!r}")
    L, s, Rh = scipy.linalg.svd(np.asarray(y_minus), full_matrices=False)
    if s.size == 0 or s[0] <= 0.0:
        raise ZeroMatrix("every singular value of Y- is zero")
    r = energy_rank(s, energy, squared=squared)
    logger.info(f"SVD of Y- {np.shape(y_minus)}: keeping r={r} of {s.size} singular values "
                f"(energy {energy}{', squared' if squared else ''})")
    return SvdTruncation(L[:, :r], s[:r], Rh[:r].conj().T, energy, singular_values=s)


def reduced_operator(y_plus, svd):
    return svd.L.conj().T @ y_plus @ svd.R / svd.S[None, :]


def eigendecompose(a_tilde):
    """
    Eigenpairs of Ã in spectrum order, eigenvectors normalized to unit 2-norm.
    :return: (ComplexSpectrum, W)
    """
    a_tilde = np.asarray(a_tilde)
    if not np.all(np.isfinite(a_tilde)):
        raise NonFiniteData("reduced operator contains non-finite entries")
    try:
        values, vectors = scipy.linalg.eig(a_tilde)
    except np.linalg.LinAlgError as e:
        raise EigFailure(str(e))
    order = ComplexSpectrum.sort_order(values)
    values, vectors = values[order], vectors[:, order]
    vectors = vectors / np.linalg.norm(vectors, axis=0, keepdims=True)
    spectrum = ComplexSpectrum(values)
    if np.isrealobj(a_tilde) and not spectrum.is_conjugate_closed():
        logger.warning("spectrum of a real operator is not closed under conjugation")
    return spectrum, vectors


def normalize_modes(modes):
    """
    Unit 2-norm columns, phase fixed so the largest-magnitude entry is real positive.
    """
    modes = np.array(modes, dtype=complex)
    for k in range(modes.shape[1]):
        column = modes[:, k]
        norm = np.linalg.norm(column)
        if norm == 0:
            continue
        pivot = column[np.argmax(np.abs(column))]
        modes[:, k] = column * (np.conj(pivot) / abs(pivot)) / norm
    return modes


def raw_modes(y_plus, svd, W):
    return y_plus @ svd.R @ np.diag(1.0 / svd.S) @ W


def spatial_modes(y_plus, svd, W):
    return normalize_modes(raw_modes(y_plus, svd, W))


class WdmdModel(object):
    """
    Fitted weak-DMD model: reduced operator, spectrum and spatial modes, together with
    the trial projection used to reconstruct inside the window.
    """

    def __init__(self, a_tilde, spectrum, eigvecs, modes, svd, trial, window, weak_pair=None, unscaled_modes=None):
        self.a_tilde = a_tilde
        self.spectrum = spectrum
        self.eigvecs = eigvecs
        self.modes = modes
        self.svd = svd
        self.trial = trial
        self.window = window
        self.weak_pair = weak_pair
        self.unscaled_modes = modes if unscaled_modes is None else unscaled_modes

    def __repr__(self):
        return f"WdmdModel(M={self.n_states}, r={self.r}, dominant={self.spectrum.dominant:.6g})"

    @property
    def r(self):
        return self.svd.r

    @property
    def n_states(self):
        return self.svd.L.shape[0]

    @property
    def n_test(self):
        return self.svd.R.shape[0]

    def reconstruct(self, t):
        return reconstruct(self.trial, t)

    def modes_scaled(self):
        """
        Modes Y+ R S^-1 W divided by the 2-norm of the dominant one, for plotting
        """
        scale = np.linalg.norm(self.unscaled_modes[:, 0])
        return self.unscaled_modes / scale if scale > 0 else self.unscaled_modes

    def eigen_residuals(self):
        """
        ‖Ã w_k - λ_k w_k‖ for every eigenpair
        """
        return np.linalg.norm(self.a_tilde @ self.eigvecs - self.eigvecs * self.spectrum.eigenvalues[None, :], axis=0)

    def summary(self):
        return {
            "n_states": int(self.n_states),
            "n_trial": int(self.trial.n_basis),
            "n_test": int(self.n_test),
            "r": int(self.r),
            "energy": float(self.svd.energy),
            "trial_rank": int(self.trial.rank),
            "singular_values": [float(s) for s in self.svd.singular_values],
            "spectrum": [[re, im] for _, re, im in self.spectrum.to_rows()],
            "residual_rms": [float(v) for v in self.trial.residual_rms],
            "window": [self.window.t1, self.window.t2],
        }


def full_space_operator(model):
    """
    Ã_f = L Ã L^H
    """
    if model.n_states > LARGE_STATE_COUNT:
        logger.warning(f"forming a dense {model.n_states} x {model.n_states} full-space operator")
    L = model.svd.L
    return L @ model.a_tilde @ L.conj().T


def _step_factor(operator, dt):
    step = np.eye(operator.shape[0]) - dt * operator
    cond = np.linalg.cond(step)
    if not np.isfinite(cond) or 1.0 / cond < STEP_RCOND:
        raise SingularStep(f"I - dt*A is numerically singular for dt={dt} (condition {cond:.3g})")
    return scipy.linalg.lu_factor(step)


def forecast(model, y_start, dt, steps, space="reduced"):
    """
    Implicit Euler steps (I - dt Ã) z_{n+1} = z_n.
    :param y_start: state at the start time, length M
    :param space: "reduced" steps in the r-dimensional coordinates z = L^H y, "full" steps
                  with Ã_f on the full state
    :return: M x steps matrix with the states after steps 1..steps
    """
    if not dt > 0:
        raise ConfigError(f"forecast dt must be positive, got {dt!r}")
    if not isinstance(steps, numbers.Integral) or steps < 1:
        raise ConfigError(f"forecast steps must be a positive integer, got {steps!r}")
    if space not in ("reduced", "full"):
        raise ConfigError(f"forecast space must be 'reduced' or 'full', got {space!r}")
    y_start = np.asarray(y_start).ravel()
    if y_start.size != model.n_states:
        raise ShapeMismatch(f"start state has {y_start.size} entries, model has {model.n_states} states")
    L = model.svd.L
    if space == "reduced":
        lu = _step_factor(model.a_tilde, dt)
        state = L.conj().T @ y_start
        lift = L
    else:
        lu = _step_factor(full_space_operator(model), dt)
        state = y_start
        lift = None
    out = np.zeros((model.n_states, steps), dtype=np.result_type(L, model.a_tilde, y_start))
    for n in range(steps):
        state = scipy.linalg.lu_solve(lu, state)
        out[:, n] = state if lift is None else lift @ state
    return out


def fit(snapshots, trial_layout, test_layout, window=None, energy=0.99999, energy_squared=False,
        rcond=1e-10, n_nodes=0):
    """
    End-to-end weak-DMD fit.
    :param snapshots: SnapshotSet
    :param trial_layout: BasisLayout of the trial functions ψ
    :param test_layout: BasisLayout of the test functions φ
    :param window: Window, defaults to the trial layout window
    :param energy: fraction of singular-value energy kept in the SVD of Y-
    :return: WdmdModel
    """
    window = window or trial_layout.window
    for name, layout in (("trial", trial_layout), ("test", test_layout)):
        if layout.window != window:
            raise WindowMismatch(f"{name} layout window {layout.window!r} differs from {window!r}")
    window.check_inside(snapshots.grid)
    trial_basis = build_basis_set(trial_layout)
    test_basis = build_basis_set(test_layout)
    trial = project(snapshots, trial_basis, window, rcond=rcond, n_nodes=n_nodes)
    _log_residuals(trial, snapshots)
    pair = assemble_weak_pair(trial, test_basis, n_nodes=n_nodes)
    svd = truncate_svd(pair.y_minus, energy, squared=energy_squared)
    a_tilde = reduced_operator(pair.y_plus, svd)
    spectrum, W = eigendecompose(a_tilde)
    unscaled = raw_modes(pair.y_plus, svd, W)
    model = WdmdModel(a_tilde, spectrum, W, normalize_modes(unscaled), svd, trial, window,
                      weak_pair=pair, unscaled_modes=unscaled)
    logger.info(f"weak-DMD fit: J={len(trial_basis)}, I={len(test_basis)}, r={model.r}, "
                f"dominant eigenvalue {spectrum.dominant:.8g}")
    return model


def _log_residuals(trial, snapshots):
    inside = trial.window.contains(snapshots.t)
    channel_rms = np.sqrt(np.mean(snapshots.x[:, inside] ** 2, axis=1))
    for m, (res, ref) in enumerate(zip(trial.residual_rms, channel_rms)):
        if ref > 0 and res > RESIDUAL_FLAG_RATIO * ref:
            logger.warning(f"state {m}: projection residual rms {res:.4g} exceeds "
                           f"{RESIDUAL_FLAG_RATIO:.0%} of the channel rms {ref:.4g}")

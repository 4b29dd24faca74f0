# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: problems
    Author: czh
    Create Date: 2021/10/17
--------------------------------------
    Change Activity:
        2021/10/25: prescribed-spectrum generators and additive noise
======================================
"""
import logging

import numpy as np
import scipy.linalg

from WeakDMD.core.errors import ConfigError, NonDiagonalizable, ShapeMismatch
from WeakDMD.core.types import ComplexSpectrum, SnapshotSet, TimeGrid

logger = logging.getLogger(__name__)

TOY_OMEGA_SQUARED = 169.0 * 29.0 / 400.0
TOY_ALPHA = 0.1
TOY_EIGENVALUES = (complex(-0.05, 3.5), complex(-0.05, -3.5))

STIFF_PAIR_SPECTRA = {
    "supercritical": (0.007565, -0.270383),
    "subcritical": (-0.002244, -0.27054),
}
STIFF_PAIR_MODES = ((1.0, 1.0), (0.5, -1.0))

MAX_EIGVEC_COND = 1e12
IMAG_RESIDUE_TOL = 1e-10


class LinearSystemSpec(object):
    """
    线性系统 dy/dt = A y, y(0) = y0
    """

    def __init__(self, A, y0, label=""):
        A = np.array(A, dtype=float)
        y0 = np.array(y0, dtype=float).ravel()
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ShapeMismatch(f"generator must be square, got shape {A.shape}")
        if y0.size != A.shape[0]:
            raise ShapeMismatch(f"initial condition has {y0.size} entries, generator is {A.shape}")
        self.A = A
        self.y0 = y0
        self.label = label

    def __repr__(self):
        return f"LinearSystemSpec(label={self.label!r}, M={self.n_states})"

    @property
    def n_states(self):
        return self.A.shape[0]

    def spectrum(self):
        return ComplexSpectrum(scipy.linalg.eigvals(self.A))

    @classmethod
    def from_spectrum(cls, eigenvalues, modes=None, y0=None, label="prescribed"):
        """
        Real generator with a prescribed spectrum.

        Real eigenvalues become 1 x 1 blocks and each conjugate pair σ ± iω becomes the
        block [[σ, ω], [-ω, σ]], in spectrum order. `modes` (a real invertible M x M matrix)
        changes basis as A = V B V^-1.
        """
        spectrum = ComplexSpectrum(eigenvalues)
        scale = max(1.0, float(np.max(np.abs(spectrum.eigenvalues))))
        blocks, pending = [], list(spectrum.eigenvalues)
        while pending:
            value = pending.pop(0)
            if abs(value.imag) <= IMAG_RESIDUE_TOL * scale:
                blocks.append(np.array([[value.real]]))
                continue
            gaps = [abs(v - np.conj(value)) for v in pending]
            if not gaps or min(gaps) > 1e-8 * scale:
                raise ConfigError(f"eigenvalue {value} has no conjugate partner")
            pending.pop(int(np.argmin(gaps)))
            blocks.append(np.array([[value.real, abs(value.imag)], [-abs(value.imag), value.real]]))
        B = scipy.linalg.block_diag(*blocks)
        if modes is not None:
            V = np.asarray(modes, dtype=float)
            if V.shape != B.shape:
                raise ShapeMismatch(f"modes must be {B.shape}, got {V.shape}")
            B = V @ B @ np.linalg.inv(V)
        y0 = np.ones(B.shape[0]) if y0 is None else y0
        return cls(B, y0, label=label)


def toy_oscillator_spec():
    A = [[0.0, 1.0], [-TOY_OMEGA_SQUARED, -TOY_ALPHA]]
    return LinearSystemSpec(A, [1.0, 0.0], label="toy")


def toy_closed_form(t, omega_squared=TOY_OMEGA_SQUARED, alpha=TOY_ALPHA):
    """
    Closed-form solution of the damped oscillator with y0(0)=1, y1(0)=0.

    With h = sqrt(α² - 4ω²)/2 (complex square root):
        y0 = e^{-αt/2} (cosh(ht) + α/(2h) sinh(ht))
        y1 = -(ω²/h) e^{-αt/2} sinh(ht)
    :return: 2 x n matrix
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    h = np.sqrt(complex(alpha ** 2 - 4.0 * omega_squared)) / 2.0
    decay = np.exp(-0.5 * alpha * t)
    y0 = decay * (np.cosh(h * t) + alpha / (2.0 * h) * np.sinh(h * t))
    y1 = -(omega_squared / h) * decay * np.sinh(h * t)
    return np.vstack([y0.real, y1.real])


def stiff_pair_spec(kind="supercritical"):
    """
    Two-mode surrogate with one slow mode near zero and one fast decaying mode.
    """
    if kind not in STIFF_PAIR_SPECTRA:
        raise ConfigError(f"unknown stiff pair {kind!r}, expected one of {sorted(STIFF_PAIR_SPECTRA)}")
    V = np.array(STIFF_PAIR_MODES)
    return LinearSystemSpec.from_spectrum(STIFF_PAIR_SPECTRA[kind], modes=V, y0=V @ np.ones(2), label=kind)


PROBLEMS = {
    "toy": toy_oscillator_spec,
    "supercritical": lambda: stiff_pair_spec("supercritical"),
    "subcritical": lambda: stiff_pair_spec("subcritical"),
}


def get_problem(name):
    if name not in PROBLEMS:
        raise ConfigError(f"unknown problem {name!r}, expected one of {sorted(PROBLEMS)}")
    return PROBLEMS[name]()


class NoiseSpec(object):
    """
    Gaussian measurement noise g ~ N(0, sigma²).
    mode="relative": x (1 + relative_magnitude g); mode="absolute": x + relative_magnitude g
    """

    def __init__(self, sigma, relative_magnitude, seed=0, mode="relative"):
        if sigma < 0 or relative_magnitude < 0:
            raise ConfigError(f"noise scales must be non-negative, got sigma={sigma}, "
                              f"relative_magnitude={relative_magnitude}")
        if mode not in ("relative", "absolute"):
            raise ConfigError(f"noise mode must be 'relative' or 'absolute', got {mode!r}")
        self.sigma = float(sigma)
        self.relative_magnitude = float(relative_magnitude)
        self.seed = int(seed)
        self.mode = mode

    def __repr__(self):
        return (f"NoiseSpec(sigma={self.sigma}, relative_magnitude={self.relative_magnitude}, "
                f"seed={self.seed}, mode={self.mode!r})")

    def with_seed(self, seed):
        return NoiseSpec(self.sigma, self.relative_magnitude, seed, self.mode)


def sample_trajectory(spec, grid):
    """
    y(t_n) = V e^{Λ t_n} V^-1 y0
    :param grid: TimeGrid or sequence of times
    :return: SnapshotSet
    """
    grid = grid if isinstance(grid, TimeGrid) else TimeGrid(grid)
    values, V = scipy.linalg.eig(spec.A)
    cond = np.linalg.cond(V)
    if not np.isfinite(cond) or cond > MAX_EIGVEC_COND:
        raise NonDiagonalizable(f"eigenvector matrix of {spec.label or 'generator'} has condition {cond:.3g}")
    weights = np.linalg.solve(V, spec.y0.astype(complex))
    y = V @ (np.exp(np.outer(values, grid.t)) * weights[:, None])
    residue = float(np.max(np.abs(y.imag))) if y.size else 0.0
    if residue > IMAG_RESIDUE_TOL * max(1.0, float(np.max(np.abs(y.real)))):
        raise NonDiagonalizable(f"trajectory keeps an imaginary residue of {residue:.3g}")
    return SnapshotSet(grid, y.real)


def add_noise(snapshots, noise):
    rng = np.random.default_rng(noise.seed)
    g = rng.normal(0.0, noise.sigma, size=snapshots.x.shape)
    if noise.mode == "relative":
        x = snapshots.x * (1.0 + noise.relative_magnitude * g)
    else:
        x = snapshots.x + noise.relative_magnitude * g
    return snapshots.with_values(x)


def uniform_grid(t_start, t_end, n):
    return TimeGrid(np.linspace(t_start, t_end, int(n)))


def nonuniform_grid(t_start, t_end, n, ratio=10.0):
    """
    两段等间距网格: 前半段比后半段至少密 ratio 倍, 共 n 个点
    """
    n = int(n)
    n_dense = int(np.ceil((ratio * n + 1.0) / (1.0 + ratio)))
    n_dense = min(max(n_dense, 2), n - 1)
    mid = 0.5 * (t_start + t_end)
    dense = np.linspace(t_start, mid, n_dense)
    sparse = np.linspace(mid, t_end, n - n_dense + 1)[1:]
    return TimeGrid(np.concatenate((dense, sparse)))


def random_grid(t_start, t_end, n, seed=0):
    rng = np.random.default_rng(seed)
    inner = np.sort(rng.uniform(t_start, t_end, size=int(n) - 2))
    return TimeGrid(np.unique(np.concatenate(([t_start], inner, [t_end]))))


def parse_grid(text, t_start, t_end, seed=0):
    """
    "uniform:N", "nonuniform:N" or "random:N" -> TimeGrid over [t_start, t_end]
    """
    kind, _, count = text.partition(":")
    try:
        n = int(count)
    except ValueError:
        raise ConfigError(f"grid must look like KIND:N, got {text!r}")
    if n < 3:
        raise ConfigError(f"grid needs at least 3 points, got {n}")
    if kind == "uniform":
        return uniform_grid(t_start, t_end, n)
    if kind == "nonuniform":
        return nonuniform_grid(t_start, t_end, n)
    if kind == "random":
        return random_grid(t_start, t_end, n, seed=seed)
    raise ConfigError(f"unknown grid kind {kind!r}, expected uniform, nonuniform or random")

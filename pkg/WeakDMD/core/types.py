# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: types
    Author: czh
    Create Date: 2021/10/12
--------------------------------------
    Change Activity:
======================================
"""
import json
import logging

import numpy as np

from WeakDMD.core.errors import NonMonotoneTime, ShapeMismatch, NonFiniteData, InvalidWindow

logger = logging.getLogger(__name__)

CONJUGATE_RTOL = 1e-10


def _frozen(array, dtype=float):
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


class TimeGrid(object):
    """
    严格递增的采样时间，不要求等间距
    """

    def __init__(self, t):
        t = np.asarray(t, dtype=float)
        if t.ndim != 1:
            raise ShapeMismatch(f"time grid must be one dimensional, got shape {t.shape}")
        if t.size < 2:
            raise ShapeMismatch(f"time grid needs at least two samples, got {t.size}")
        if not np.all(np.isfinite(t)):
            raise NonFiniteData("time grid contains non-finite values")
        steps = np.diff(t)
        if np.any(steps <= 0):
            bad = int(np.argmax(steps <= 0))
            raise NonMonotoneTime(f"t[{bad + 1}]={t[bad + 1]!r} does not exceed t[{bad}]={t[bad]!r}")
        self.t = _frozen(t)

    def __len__(self):
        return self.t.size

    def __eq__(self, other):
        return isinstance(other, TimeGrid) and len(self) == len(other) and bool(np.all(self.t == other.t))

    def __hash__(self):
        return hash(self.t.tobytes())

    @property
    def start(self):
        return float(self.t[0])

    @property
    def end(self):
        return float(self.t[-1])

    @property
    def spacing(self):
        return np.diff(self.t)

    def is_uniform(self, rtol=1e-9):
        steps = self.spacing
        mean = steps.mean()
        return bool(np.max(np.abs(steps - mean)) <= rtol * mean)


class Window(object):
    """
    Closed time interval [t1, t2] over which every inner product of the pipeline is taken.
    """

    def __init__(self, t1, t2):
        t1, t2 = float(t1), float(t2)
        if not (np.isfinite(t1) and np.isfinite(t2)):
            raise InvalidWindow(f"window bounds must be finite, got [{t1}, {t2}]")
        if not t1 < t2:
            raise InvalidWindow(f"window needs t1 < t2, got [{t1}, {t2}]")
        self.t1 = t1
        self.t2 = t2

    def __repr__(self):
        return f"Window({self.t1!r}, {self.t2!r})"

    def __eq__(self, other):
        return isinstance(other, Window) and self.t1 == other.t1 and self.t2 == other.t2

    def __hash__(self):
        return hash((self.t1, self.t2))

    @property
    def length(self):
        return self.t2 - self.t1

    @property
    def midpoint(self):
        return 0.5 * (self.t1 + self.t2)

    def contains(self, t):
        t = np.asarray(t, dtype=float)
        return (t >= self.t1) & (t <= self.t2)

    def check_inside(self, grid):
        if self.t1 < grid.start or self.t2 > grid.end:
            raise InvalidWindow(f"window [{self.t1}, {self.t2}] is not inside the sampled range "
                                f"[{grid.start}, {grid.end}]")
        return self

    @classmethod
    def parse(cls, text):
        """
        "T1:T2" -> Window
        """
        try:
            t1, t2 = (float(v) for v in text.split(":"))
        except ValueError:
            raise InvalidWindow(f"window must look like T1:T2, got {text!r}")
        return cls(t1, t2)


class SnapshotSet(object):
    """
    M个状态变量在N个时间点上的测量值, x的形状为 M x N
    """

    def __init__(self, grid, x):
        x = np.asarray(x, dtype=float)
        if x.ndim != 2:
            raise ShapeMismatch(f"snapshot matrix must be two dimensional, got shape {x.shape}")
        if x.shape[1] != len(grid):
            raise ShapeMismatch(f"snapshot matrix has {x.shape[1]} columns but the grid has {len(grid)} times")
        if not np.all(np.isfinite(x)):
            raise NonFiniteData("snapshot matrix contains non-finite values")
        self.grid = grid
        self.x = _frozen(x)

    def __repr__(self):
        return f"SnapshotSet(M={self.n_states}, N={self.n_times}, t=[{self.grid.start}, {self.grid.end}])"

    @property
    def t(self):
        return self.grid.t

    @property
    def n_states(self):
        return self.x.shape[0]

    @property
    def n_times(self):
        return self.x.shape[1]

    def full_window(self):
        return Window(self.grid.start, self.grid.end)

    def with_values(self, x):
        return SnapshotSet(self.grid, x)


def validate_snapshots(x, t):
    """
    Build a validated SnapshotSet from raw arrays.
    :param x: M x N matrix (a one dimensional array is read as a single state)
    :param t: N sample times
    :return: SnapshotSet
    """
    grid = TimeGrid(t)
    x = np.array(x, dtype=float, copy=True)
    if x.ndim == 1:
        x = x[None, :]
    return SnapshotSet(grid, x)


class ComplexSpectrum(object):
    """
    Continuous-time eigenvalues sorted by descending real part, ties broken by descending
    imaginary part. Real parts that agree to CONJUGATE_RTOL relative count as ties, so a
    conjugate pair is always listed with the positive imaginary part first.
    """

    def __init__(self, eigenvalues):
        values = np.asarray(eigenvalues, dtype=complex).ravel()
        self.eigenvalues = _frozen(values[self.sort_order(values)], dtype=complex)

    @staticmethod
    def sort_order(values):
        values = np.asarray(values, dtype=complex).ravel()
        if values.size == 0:
            return np.arange(0)
        tol = CONJUGATE_RTOL * max(1.0, float(np.max(np.abs(values))))
        real_key = np.round(values.real / tol)
        return np.lexsort((-values.imag, -real_key))

    def __len__(self):
        return self.eigenvalues.size

    def __iter__(self):
        return iter(self.eigenvalues)

    def __getitem__(self, item):
        return self.eigenvalues[item]

    def __repr__(self):
        inner = ", ".join(f"{v.real:.6g}{v.imag:+.6g}i" for v in self.eigenvalues)
        return f"ComplexSpectrum([{inner}])"

    @property
    def dominant(self):
        return complex(self.eigenvalues[0])

    def is_conjugate_closed(self, rtol=CONJUGATE_RTOL):
        """
        Every non-real eigenvalue has a mate equal to its conjugate within rtol relative.
        """
        values = self.eigenvalues
        scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
        unused = list(range(values.size))
        while unused:
            k = unused.pop(0)
            v = values[k]
            if abs(v.imag) <= rtol * scale:
                continue
            gaps = [abs(values[j] - np.conj(v)) for j in unused]
            if not gaps or min(gaps) > rtol * scale:
                return False
            unused.pop(int(np.argmin(gaps)))
        return True

    def to_rows(self):
        return [(k, float(v.real), float(v.imag)) for k, v in enumerate(self.eigenvalues)]

    def to_json_string(self):
        return json.dumps([[re, im] for _, re, im in self.to_rows()]) + "\n"

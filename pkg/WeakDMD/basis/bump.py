# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: bump
    Author: czh
    Create Date: 2021/10/13
--------------------------------------
    Change Activity:
        2021/10/20: overlap measured against the support width as an alternative mode
======================================
"""
import logging
import numbers

import numpy as np

from WeakDMD.core.errors import EmptyLayout, InvalidLayout
from WeakDMD.core.types import Window
from WeakDMD.tools.quadrature import exact_node_count, mapped_nodes

logger = logging.getLogger(__name__)

OVERLAP_MODES = ("spacing", "width")


def _bump_values(a, b, p, t):
    # (4u(1-u))^p with u the position inside the support, equal to C (t-a)^p (b-t)^p
    t = np.asarray(t, dtype=float)
    width = b - a
    u = np.clip((t - a) / width, 0.0, 1.0)
    inside = (t > a) & (t < b)
    return np.where(inside, (4.0 * u * (1.0 - u)) ** p, 0.0)


def _bump_slopes(a, b, p, t):
    t = np.asarray(t, dtype=float)
    width = b - a
    u = np.clip((t - a) / width, 0.0, 1.0)
    inside = (t > a) & (t < b)
    core = (4.0 * u * (1.0 - u)) ** (p - 1)
    return np.where(inside, p * core * 4.0 * (1.0 - 2.0 * u) / width, 0.0)


class BumpBasis(object):
    """
    紧支撑多项式基函数 C (t-a)^p (b-t)^p, 支撑区间外为 0
    """

    def __init__(self, a, b, p):
        a, b = float(a), float(b)
        if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
            raise InvalidLayout(f"bump support needs a < b, got [{a}, {b}]")
        if not isinstance(p, numbers.Integral) or p < 1:
            raise InvalidLayout(f"bump exponent must be an integer >= 1, got {p!r}")
        self.a = a
        self.b = b
        self.p = int(p)

    def __repr__(self):
        return f"BumpBasis(a={self.a!r}, b={self.b!r}, p={self.p})"

    def __eq__(self, other):
        return isinstance(other, BumpBasis) and (self.a, self.b, self.p) == (other.a, other.b, other.p)

    def __hash__(self):
        return hash((self.a, self.b, self.p))

    @property
    def C(self):
        return (2.0 / (self.b - self.a)) ** (2 * self.p)

    @property
    def center(self):
        return 0.5 * (self.a + self.b)

    @property
    def half_width(self):
        return 0.5 * (self.b - self.a)


def bump_eval(basis, t):
    """
    Value of the bump at t (scalar or array); exactly 0 outside the open support.
    """
    out = _bump_values(basis.a, basis.b, basis.p, t)
    return float(out) if np.ndim(out) == 0 else out


def bump_deriv(basis, t):
    out = _bump_slopes(basis.a, basis.b, basis.p, t)
    return float(out) if np.ndim(out) == 0 else out


class BasisLayout(object):
    """
    Tiered placement of bumps over a window.

    Each tier (count k, overlap v) puts k centers on a uniform grid over [t1, t2]. With
    overlap_mode="spacing" the half-width is d/2 (1+v) for center spacing d, so neighbours
    share a fraction v of the spacing. With overlap_mode="width" the half-width is
    d / (2 (1-v)), so neighbours share a fraction v of their support width.
    """

    def __init__(self, counts, overlaps, p, window, overlap_mode="spacing"):
        counts = [counts] if isinstance(counts, numbers.Integral) else list(counts)
        overlaps = [overlaps] if isinstance(overlaps, numbers.Real) else list(overlaps)
        if not counts:
            raise EmptyLayout("layout has no tiers")
        if len(overlaps) == 1 and len(counts) > 1:
            overlaps = overlaps * len(counts)
        if len(overlaps) != len(counts):
            raise InvalidLayout(f"{len(counts)} counts but {len(overlaps)} overlaps")
        for k in counts:
            if not isinstance(k, numbers.Integral) or k < 0:
                raise InvalidLayout(f"tier counts must be non-negative integers, got {k!r}")
        if sum(counts) == 0:
            raise EmptyLayout("layout places no basis functions")
        if overlap_mode not in OVERLAP_MODES:
            raise InvalidLayout(f"overlap_mode must be one of {OVERLAP_MODES}, got {overlap_mode!r}")
        upper = 2.0 if overlap_mode == "spacing" else 1.0
        for v in overlaps:
            if not np.isfinite(v) or not 0.0 <= v < upper:
                raise InvalidLayout(f"overlap fraction {v!r} outside [0, {upper}) for mode {overlap_mode}")
        if not isinstance(p, numbers.Integral) or p < 1:
            raise InvalidLayout(f"bump exponent must be an integer >= 1, got {p!r}")
        if not isinstance(window, Window):
            raise InvalidLayout(f"layout window must be a Window, got {type(window).__name__}")
        self.counts = tuple(int(k) for k in counts)
        self.overlaps = tuple(float(v) for v in overlaps)
        self.p = int(p)
        self.window = window
        self.overlap_mode = overlap_mode

    def __repr__(self):
        return (f"BasisLayout(counts={list(self.counts)}, overlaps={list(self.overlaps)}, p={self.p}, "
                f"window={self.window!r}, overlap_mode={self.overlap_mode!r})")

    @property
    def size(self):
        return sum(self.counts)

    def tier_geometry(self, count, overlap):
        """
        centers and half-width of a single tier
        """
        t1, t2 = self.window.t1, self.window.t2
        if count == 1:
            centers = np.array([self.window.midpoint])
            spacing = t2 - t1
        else:
            centers = np.linspace(t1, t2, count)
            spacing = (t2 - t1) / (count - 1)
        if self.overlap_mode == "spacing":
            half = 0.5 * spacing * (1.0 + overlap)
        else:
            half = 0.5 * spacing / (1.0 - overlap)
        return centers, half


class BasisSet(object):
    """
    Ordered bump family sharing one exponent p and one window.
    """

    def __init__(self, members, window):
        members = tuple(members)
        if not members:
            raise EmptyLayout("basis set needs at least one member")
        exponents = {m.p for m in members}
        if len(exponents) != 1:
            raise InvalidLayout(f"basis set members must share one exponent, got {sorted(exponents)}")
        self.members = members
        self.window = window
        self.p = members[0].p
        self.a = np.array([m.a for m in members])
        self.b = np.array([m.b for m in members])
        self.a.setflags(write=False)
        self.b.setflags(write=False)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, item):
        return self.members[item]

    def __eq__(self, other):
        return isinstance(other, BasisSet) and self.members == other.members and self.window == other.window

    def __hash__(self):
        return hash((self.members, self.window))

    def __repr__(self):
        return f"BasisSet(J={len(self)}, p={self.p}, window={self.window!r})"

    def evaluate(self, t):
        """
        :param t: times, shape (n,)
        :return: matrix J x n of member values
        """
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return _bump_values(self.a[:, None], self.b[:, None], self.p, t[None, :])

    def derivative(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return _bump_slopes(self.a[:, None], self.b[:, None], self.p, t[None, :])


def build_basis_set(layout):
    members = []
    for tier, (count, overlap) in enumerate(zip(layout.counts, layout.overlaps)):
        if count == 0:
            continue
        centers, half = layout.tier_geometry(count, overlap)
        logger.debug(f"tier {tier}: {count} bumps, half-width {half:.6g}, "
                     f"supports [{centers[0] - half:.6g}, {centers[-1] + half:.6g}]")
        members.extend(BumpBasis(c - half, c + half, layout.p) for c in centers)
    return BasisSet(members, layout.window)


def basis_inner_products(left, right, window=None, derivative_left=False, n_nodes=0):
    """
    Matrix of integrals over the window of left_i(t) * right_j(t).

    Each entry is integrated with Gauss-Legendre on the intersection of both supports
    with the window; the node count defaults to the smallest one exact for the
    polynomial integrand.
    :param left: BasisSet of size I
    :param right: BasisSet of size J
    :param window: integration window, defaults to left.window
    :param derivative_left: use left_i'(t) in place of left_i(t)
    :param n_nodes: quadrature nodes; values below the exactness threshold are raised to it
    :return: I x J matrix
    """
    window = window or left.window
    degree = 2 * left.p + 2 * right.p - (1 if derivative_left else 0)
    n_nodes = max(int(n_nodes), exact_node_count(degree))
    lower = np.maximum(np.maximum(left.a[:, None], right.a[None, :]), window.t1)
    upper = np.minimum(np.minimum(left.b[:, None], right.b[None, :]), window.t2)
    nodes, weights = mapped_nodes(lower, upper, n_nodes)
    a_l, b_l = left.a[:, None, None], left.b[:, None, None]
    a_r, b_r = right.a[None, :, None], right.b[None, :, None]
    if derivative_left:
        left_values = _bump_slopes(a_l, b_l, left.p, nodes)
    else:
        left_values = _bump_values(a_l, b_l, left.p, nodes)
    right_values = _bump_values(a_r, b_r, right.p, nodes)
    return np.sum(weights * left_values * right_values, axis=-1)

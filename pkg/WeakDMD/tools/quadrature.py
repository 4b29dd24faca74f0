# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: quadrature
    Author: czh
    Create Date: 2021/10/13
--------------------------------------
    Change Activity:
======================================
"""
from functools import lru_cache

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import roots_legendre

from WeakDMD.core.errors import EmptyWindow


@lru_cache(maxsize=32)
def _legendre_rule(n_nodes):
    nodes, weights = roots_legendre(n_nodes)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre_rule(n_nodes):
    """
    Gauss-Legendre nodes and weights on [-1, 1], exact for polynomials of degree 2n-1.
    """
    if n_nodes < 1:
        raise ValueError(f"n_nodes must be positive, got {n_nodes}")
    return _legendre_rule(int(n_nodes))


def exact_node_count(degree):
    """
    最少的节点数, 使得 degree 次多项式被精确积分
    """
    return max(1, -(-(int(degree) + 1) // 2))


def mapped_nodes(lower, upper, n_nodes):
    """
    Nodes and weights mapped onto a batch of intervals.
    :param lower: interval starts, any shape S
    :param upper: interval ends, shape S; empty intervals (upper <= lower) get zero weights
    :return: nodes of shape S + (n,), weights of shape S + (n,)
    """
    x, w = gauss_legendre_rule(n_nodes)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    half = np.clip(0.5 * (upper - lower), 0.0, None)
    mid = 0.5 * (upper + lower)
    nodes = mid[..., None] + half[..., None] * x
    weights = half[..., None] * w
    return nodes, weights


def windowed_samples(t, y, lower, upper):
    """
    Restrict sampled data to [lower, upper], inserting both ends as extra nodes with the
    data linearly interpolated there.
    :param t: sample times, strictly increasing, length N
    :param y: samples, shape (K, N)
    :return: nodes (n,), values (K, n)
    """
    t = np.asarray(t, dtype=float)
    y = np.atleast_2d(np.asarray(y, dtype=float))
    inner = (t > lower) & (t < upper)
    nodes = np.concatenate(([lower], t[inner], [upper]))
    ends = np.stack([np.interp([lower, upper], t, row) for row in y])
    values = np.concatenate((ends[:, :1], y[:, inner], ends[:, 1:]), axis=1)
    return nodes, values


def windowed_trapezoid(t, y, lower, upper, weight=None):
    """
    Composite trapezoid of sampled data over [lower, upper], so the integration domain is
    exactly [lower, upper] wherever the samples sit.
    :param weight: optional callable evaluated on the nodes and multiplied into the data
    :return: length-K vector (float when y is one dimensional)
    """
    squeeze = np.ndim(y) == 1
    if upper <= lower:
        out = np.zeros(1 if squeeze else np.shape(y)[0])
    else:
        nodes, values = windowed_samples(t, y, lower, upper)
        if weight is not None:
            values = values * weight(nodes)
        out = trapezoid(values, nodes, axis=1)
    return float(out[0]) if squeeze else out


def samples_inside(t, lower, upper):
    t = np.asarray(t, dtype=float)
    count = int(np.count_nonzero((t >= lower) & (t <= upper)))
    if count == 0:
        raise EmptyWindow(f"no samples fall inside [{lower}, {upper}]")
    return count

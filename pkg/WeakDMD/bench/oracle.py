# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: oracle
    Author: czh
    Create Date: 2021/10/18
--------------------------------------
    Change Activity:
======================================
"""
import logging

import numpy as np
from scipy.integrate import quad

from WeakDMD.bench.problems import TOY_ALPHA, TOY_OMEGA_SQUARED, toy_closed_form
from WeakDMD.core.errors import InvalidWindow, SingularYMinus
from WeakDMD.models.wdmd import eigendecompose

logger = logging.getLogger(__name__)

QUAD_TOL = 1e-12
QUAD_LIMIT = 1000
MAX_Y_MINUS_COND = 1e14


def _toy_state(k, t):
    return float(toy_closed_form(t)[k, 0])


def _toy_slope(k, t):
    y0, y1 = toy_closed_form(t)[:, 0]
    return float(y1) if k == 0 else float(-TOY_OMEGA_SQUARED * y0 - TOY_ALPHA * y1)


def exact_basis_oracle(t2, t1=0.0):
    """
    Weak pair of the damped oscillator with its own exact solutions y0, y1 as both test
    and trial functions, integrated adaptively over [t1, t2]:
        Y-_mi = ∫ y_i y_m
        Y+_mi = y_i(t2) y_m(t2) - y_i(t1) y_m(t1) - ∫ y_i' y_m
    and Ã = Y+ (Y-)^-1.
    :return: ComplexSpectrum of Ã
    """
    if not t2 > t1:
        raise InvalidWindow(f"oracle window needs t1 < t2, got [{t1}, {t2}]")
    ends = toy_closed_form([t1, t2])
    y_minus = np.zeros((2, 2))
    y_plus = np.zeros((2, 2))
    for m in range(2):
        for i in range(2):
            y_minus[m, i], _ = quad(lambda t: _toy_state(i, t) * _toy_state(m, t), t1, t2,
                                    epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=QUAD_LIMIT)
            slope, _ = quad(lambda t: _toy_slope(i, t) * _toy_state(m, t), t1, t2,
                            epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=QUAD_LIMIT)
            y_plus[m, i] = ends[i, 1] * ends[m, 1] - ends[i, 0] * ends[m, 0] - slope
    cond = np.linalg.cond(y_minus)
    if not np.isfinite(cond) or cond > MAX_Y_MINUS_COND:
        raise SingularYMinus(f"Y- is singular on [{t1}, {t2}] (condition {cond:.3g})")
    a_tilde = np.linalg.solve(y_minus.T, y_plus.T).T
    spectrum, _ = eigendecompose(a_tilde)
    logger.info(f"oracle t2={t2}: {spectrum!r}")
    return spectrum

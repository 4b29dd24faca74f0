# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: errors
    Author: czh
    Create Date: 2021/10/12
--------------------------------------
    Change Activity:
======================================
"""


class WeakDmdError(ValueError):
    """
    所有领域错误的基类
    `category` is the machine-parsable name printed by the command line.
    """
    category = "WeakDmdError"

    def __init__(self, message=""):
        super(WeakDmdError, self).__init__(message)
        self.message = message

    def __str__(self):
        return self.message


class NonMonotoneTime(WeakDmdError):
    """Sample times are not strictly increasing."""
    category = "NonMonotoneTime"


class ShapeMismatch(WeakDmdError):
    """Array shapes disagree with each other."""
    category = "ShapeMismatch"


class NonFiniteData(WeakDmdError):
    """Input contains nan or inf."""
    category = "NonFiniteData"


class InvalidWindow(WeakDmdError):
    """Window is empty or outside the sampled range."""
    category = "InvalidWindow"


class EmptyLayout(WeakDmdError):
    """Basis layout produces no members."""
    category = "EmptyLayout"


class InvalidLayout(WeakDmdError):
    """Basis layout parameters are malformed."""
    category = "InvalidLayout"


class EmptyWindow(WeakDmdError):
    """No samples fall inside the window."""
    category = "EmptyWindow"


class OutOfWindow(WeakDmdError):
    """Reconstruction requested outside the window."""
    category = "OutOfWindow"


class WindowMismatch(WeakDmdError):
    """Trial and test sets were built on different windows."""
    category = "WindowMismatch"


class ZeroMatrix(WeakDmdError):
    """All singular values are zero."""
    category = "ZeroMatrix"


class EigFailure(WeakDmdError):
    """Eigenvalue iteration did not converge."""
    category = "EigFailure"


class SingularStep(WeakDmdError):
    """Implicit step matrix is numerically singular."""
    category = "SingularStep"


class NonUniformGrid(WeakDmdError):
    """Snapshot times are not equispaced."""
    category = "NonUniformGrid"


class RankTooLarge(WeakDmdError):
    """Requested rank exceeds the data dimensions."""
    category = "RankTooLarge"


class NonDiagonalizable(WeakDmdError):
    """Generator is not diagonalizable to tolerance."""
    category = "NonDiagonalizable"


class GridMismatch(WeakDmdError):
    """Compared snapshot sets use different time grids."""
    category = "GridMismatch"


class ZeroNorm(WeakDmdError):
    """Reference snapshot column is identically zero."""
    category = "ZeroNorm"


class SingularYMinus(WeakDmdError):
    """Weak snapshot matrix cannot be inverted."""
    category = "SingularYMinus"


class ParseError(WeakDmdError):
    """Malformed numeric field in an input file."""
    category = "ParseError"


class DuplicateTime(WeakDmdError):
    """Two snapshot rows share the same time."""
    category = "DuplicateTime"


class ConfigError(WeakDmdError):
    """Unknown or malformed configuration entry."""
    category = "ConfigError"

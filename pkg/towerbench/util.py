####################################################################
###     _____                     ____                  _        ###
###    |_   _|____      _____ _ _| __ )  ___ _ __   ___| |__     ###
###      | |/ _ \ \ /\ / / _ \ '__|  _ \ / _ \ '_ \ / __| '_ \   ###
###      | | (_) \ V  V /  __/ |  | |_) |  __/ | | | (__| | | |  ###
###      |_|\___/ \_/\_/ \___|_|  |____/ \___|_| |_|\___|_| |_|  ###
###                                                              ###
###--------------------------------------------------------------###
###                                                              ###
### This file is part of the TowerBench package for numerical    ###
### checks of bubble-tower constructions for the fractional      ###
### Laplacian.                                                   ###
###                                                              ###
### Copyright (c) 2026 by the TowerBench developers.             ###
###                                                              ###
###--------------------------------------------------------------###
###                                                              ###
### For license info, please see the README and LICENSE files    ###
### in the main directory.                                       ###
###                                                              ###
###--------------------------------------------------------------###

"""
Small helpers shared by the TowerBench modules.

"""

import numpy as np


#powers below this magnitude are flushed to zero
UNDERFLOW = 1e-300


class NumericalError(Exception):
    """Base class of every error raised by a TowerBench computation."""
    pass


def as_points(y, dim=None):
    """
    Coerce a point, or a stack of points, to a float array of shape (P, N).

    Args:
        * y: array-like of shape (N,) or (P, N).
        * dim: If given, the required point dimension N.

    Returns:
        A tuple (points, single) where 'single' tells whether one point
        was given, so results can be squeezed back with squeeze().

    """
    arr = np.asarray(y, dtype=float)
    single = arr.ndim == 1
    arr = np.atleast_2d(arr)
    if arr.ndim != 2:
        raise ValueError('points must be a vector or a 2-d stack of vectors')
    if dim is not None and arr.shape[1] != dim:
        raise ValueError('expected points of dimension {0}, got {1}'.format(dim, arr.shape[1]))
    return arr, single


def squeeze(values, single):
    """Undo as_points(): return a scalar (or row) for a single point."""
    if single:
        values = values[0]
        if np.ndim(values) == 0:
            return float(values)
    return values


def log_power(base, exponent):
    """
    Evaluate base**exponent for positive bases in log space.

    Bases, and results, below UNDERFLOW are flushed to 0.

    >>> float(log_power(4.0, 0.5))
    2.0

    """
    base = np.asarray(base, dtype=float)
    out = np.where(base > UNDERFLOW,
                   np.exp(exponent * np.log(np.maximum(base, UNDERFLOW))),
                   0.0)
    return np.where(out < UNDERFLOW, 0.0, out)


def chunks(count, size):
    """
    Iterate over slices covering range(count) in pieces of at most 'size'.

    >>> [(s.start, s.stop) for s in chunks(5, 2)]
    [(0, 2), (2, 4), (4, 5)]

    """
    for start in range(0, count, size):
        yield slice(start, min(start + size, count))


def loglog_slope(x, y):
    """
    Least-squares slope and intercept of log(y) against log(x).

    >>> round(loglog_slope([1, 10, 100], [2, 20, 200])[0], 12)
    1.0

    """
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    slope, intercept = np.polyfit(lx, ly, 1)
    return float(slope), float(intercept)


def power_excess(values, exponent):
    """
    (sum_j v_j)^exponent - sum_j v_j^exponent for a stack of nonnegative
    values of shape (m, P), without cancellation where one term dominates.

    >>> float(power_excess([[1.0], [1.0]], 2.0)[0])
    2.0

    """
    values = np.asarray(values, dtype=float)
    top = np.expand_dims(np.argmax(values, axis=0), 0)
    head = np.take_along_axis(values, top, axis=0)[0]
    others = np.ones(values.shape, dtype=bool)
    np.put_along_axis(others, top, False, axis=0)
    # summing the non-maximal entries keeps the small terms exact
    rest = np.sum(np.where(others, values, 0.0), axis=0)
    live = head > UNDERFLOW
    ratio = rest / np.where(live, head, 1.0)
    out = log_power(head, exponent) * np.expm1(exponent * np.log1p(ratio))
    out = out - np.sum(np.where(others, log_power(values, exponent), 0.0), axis=0)
    return np.where(live, out, 0.0)

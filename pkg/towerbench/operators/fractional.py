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
The fractional Laplacian: the exact identity on bubbles and a quadrature
of the singular integral for general functions.

In spherical coordinates about y the symmetrized singular integral is

    (-Delta)^s f(y) = -c_{N,s} |S^{N-1}| int_0^inf r^{-1-2s} D(r) dr,

with D(r) the spherical mean of f over |z - y| = r minus f(y). D(r) is
O(r^2) at the origin, so no principal value is needed.

"""

import logging
import math
from collections import namedtuple

import numpy as np
from scipy import special

from towerbench import util
from towerbench.util import NumericalError
from towerbench.problem import operator_constant, sphere_area
from towerbench.bubble import bubble_value
from towerbench.profiles import RadialSum, spherical_means
from towerbench.quadrature import DEFAULT_SPEC, gauss_jacobi, log_panels


logger = logging.getLogger(__name__)

#a tail decaying slower than this fraction of N - 2s is flagged
TAIL_TOLERANCE = 0.95

#tail means below this fraction of |f(y)| are treated as zero
NEGLIGIBLE = 1e-14


class EvaluationError(NumericalError):
    """The function returned non-finite samples."""
    pass


FracLapResult = namedtuple('FracLapResult', 'value tail tail_ok')


def frac_lap_exact_bubble(p, b, y):
    """(-Delta)^s U_{x,lambda}(y) = U_{x,lambda}(y)^{(N+2s)/(N-2s)}."""
    return bubble_value(p, b, y) ** p.critical_power


def frac_lap_exact_gaussian(s, center, profile, y):
    """
    (-Delta)^s of a GaussianProfile about 'center', in closed form:

        a k^{2s} 4^s Gamma(N/2 + s) / Gamma(N/2) M(N/2 + s, N/2, -k^2 |y - c|^2)

    with M the confluent hypergeometric function, a = profile.amp and
    k = profile.scale. Accepts a single point or an array of points.

    """
    pts, single = util.as_points(y)
    N = pts.shape[1]
    k2 = profile.scale ** 2
    z = k2 * np.sum((pts - np.asarray(center, dtype=float)) ** 2, axis=1)
    front = profile.amp * (4.0 * k2) ** s * np.exp(
        special.gammaln(0.5 * N + s) - special.gammaln(0.5 * N))
    return util.squeeze(front * special.hyp1f1(0.5 * N + s, 0.5 * N, -z), single)


def _length_(f):
    return getattr(f, 'length', 1.0)


def _extent_(f, y):
    if isinstance(f, RadialSum):
        return f.extent(y)
    return 0.0


def decay_rate(m_half, m_full):
    """Power-law exponent p with M(R) = M(R/2) 2^{-p}."""
    if m_half <= 0 or m_full <= 0:
        return 0.0
    return math.log(m_half / m_full) / math.log(2.0)


def frac_lap_quadrature(f, y, s, q=None):
    """
    (-Delta)^s f(y) by quadrature of the symmetrized singular integral.

    The radial integral is split into a near panel [0, r0 l] with the
    Gauss-Jacobi weight r^{1-2s} applied to D(r)/r^2, geometric panels up
    to R l plus the extent of f, and an analytic tail that integrates
    f(y) exactly and the spherical mean as a power law fitted on [R/2, R].
    Here l is the length scale of f (1 for plain callables).

    The nodes are laid out relative to y, so shifting f and y together
    changes the result only through rounding in the point differences,
    about 1e-10 relative for the default quadrature, not to machine
    precision.

    Args:
        * f: a RadialSum, or a vectorized callable on points of shape (P, N).
        * y: the evaluation point.
        * s: fractional order in (0, 1).
        * q: QuadratureSpec.

    Returns:
        FracLapResult(value, tail, tail_ok), where 'tail' is the tail's
        contribution and 'tail_ok' is False when the fitted decay of f is
        slower than 0.95 (N - 2s).

    """
    q = q or DEFAULT_SPEC
    y = np.asarray(y, dtype=float)
    N = len(y)
    length = _length_(f)
    center = float(np.atleast_1d(f(y[None, :]))[0])
    if not np.isfinite(center):
        raise EvaluationError('f({0}) is not finite'.format(y.tolist()))

    near_r, near_w = gauss_jacobi(q.radial_nodes, 0.0, 1.0 - 2.0 * s,
                                  0.0, q.inner_split * length)
    lo = q.inner_split * length
    hi = q.truncation_radius * length + _extent_(f, y)
    mid_r, mid_w = log_panels(lo, hi, q.panel_density, q.radial_nodes)
    radii = np.concatenate([near_r, mid_r, [0.5 * hi, hi]])
    means = spherical_means(f, y, radii, q)
    if not np.all(np.isfinite(means)):
        raise EvaluationError('non-finite spherical means of f about {0}'.format(y.tolist()))

    diff = means - center
    k = len(near_r)
    near = np.sum(near_w * diff[:k] / near_r ** 2)
    mid = np.sum(mid_w * mid_r ** (-1.0 - 2.0 * s) * diff[k:k + len(mid_r)])

    m_half, m_full = means[-2], means[-1]
    tail = -center * hi ** (-2.0 * s) / (2.0 * s)
    rate = decay_rate(abs(m_half), abs(m_full))
    negligible = abs(m_full) <= NEGLIGIBLE * max(abs(center), util.UNDERFLOW)
    if q.tail_order >= 1:
        tail += m_full * hi ** (-2.0 * s) / (2.0 * s + max(rate, 0.0))
    tail_ok = bool(negligible or rate >= TAIL_TOLERANCE * (N - 2.0 * s))
    if not tail_ok:
        logger.warning('slow decay of f at radius %g: fitted exponent %.3f < %.3f',
                       hi, rate, TAIL_TOLERANCE * (N - 2.0 * s))

    scale = -operator_constant(N, s) * sphere_area(N)
    return FracLapResult(scale * (near + mid + tail), scale * tail, tail_ok)


def frac_lap_values(f, points, s, q=None):
    """frac_lap_quadrature at each row of 'points'; returns an array."""
    pts, _ = util.as_points(points)
    return np.array([frac_lap_quadrature(f, y, s, q).value for y in pts])

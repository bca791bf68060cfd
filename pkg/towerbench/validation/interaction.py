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
Sampled checks of the two interaction estimates used by the weighted
norms:

* the splitting of a product of two decaying weights,

      g(y) = (1 + |y - x_j|)^-alpha (1 + |y - x_k|)^-beta
           <= C |x_k - x_j|^-delta ((1 + |y - x_k|)^-(alpha+beta-delta)
                                    + (1 + |y - x_j|)^-(alpha+beta-delta)),

* the convolution bound

      int |y - z|^-(N-2s) (1 + |z|)^-(2s+delta) dz <= C (1 + |y|)^-delta.

The constants C are not known in closed form; the functions here return
the ratios whose suprema they bound.

"""

import logging
from collections import namedtuple

import numpy as np
from scipy import special

from towerbench import util
from towerbench.util import NumericalError
from towerbench.problem import sphere_area
from towerbench.profiles import DistanceProfile, zonal_means
from towerbench.quadrature import DEFAULT_SPEC, gauss_jacobi, split_panels


logger = logging.getLogger(__name__)

#largest weight exponent of the random draws in sampled_b1_sup()
MAX_DRAW_EXPONENT = 3.0


class DegeneratePairError(NumericalError, ValueError):
    """The two centers coincide."""
    pass


class ParameterRangeError(NumericalError, ValueError):
    """An exponent is outside the range where the estimate holds."""
    pass


DecayFit = namedtuple('DecayFit', 'slope intercept radii values')


def lemma_b1_ratio(alpha, beta, delta, xj, xk, y):
    """
    g(y) divided by the splitting bound without its constant.

    Args:
        * alpha, beta: weight exponents, both >= 1.
        * delta: 0 < delta <= min(alpha, beta).
        * xj, xk: distinct centers.
        * y: a point or an array of points.

    The ratio is below 2^delta everywhere.

    >>> round(lemma_b1_ratio(1.0, 1.0, 1.0, [0.0, 0.0], [2.0, 0.0], [1.0, 0.0]), 12)
    0.5

    """
    if alpha < 1 or beta < 1:
        raise ParameterRangeError('need alpha, beta >= 1, got {0}, {1}'.format(alpha, beta))
    if not 0 < delta <= min(alpha, beta):
        raise ParameterRangeError('need 0 < delta <= min(alpha, beta), got {0}'.format(delta))
    xj = np.asarray(xj, dtype=float)
    xk = np.asarray(xk, dtype=float)
    sep = float(np.linalg.norm(xk - xj))
    if sep == 0.0:
        raise DegeneratePairError('the centers x_j and x_k coincide')
    pts, single = util.as_points(y, len(xj))
    aj = 1.0 + np.linalg.norm(pts - xj, axis=1)
    ak = 1.0 + np.linalg.norm(pts - xk, axis=1)
    g = aj ** -alpha * ak ** -beta
    e = alpha + beta - delta
    bound = sep ** -delta * (ak ** -e + aj ** -e)
    return util.squeeze(g / bound, single)


def sampled_b1_sup(N=5, draws=50, samples=200, seed=0):
    """
    The largest lemma_b1_ratio() over random admissible exponents, pairs
    and sample points.

    Exponents are drawn from [1, 3]; each pair's sample points mix the
    neighbourhoods of both centers, the segment between them and a far
    shell.

    """
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(draws):
        alpha, beta = rng.uniform(1.0, MAX_DRAW_EXPONENT, 2)
        delta = rng.uniform(0.0, min(alpha, beta))
        delta = max(delta, 1e-3)
        xj = rng.standard_normal(N) * 10.0
        xk = xj + rng.standard_normal(N) * 10.0 ** rng.uniform(-1.0, 2.0)
        sep = np.linalg.norm(xk - xj)
        quarter = samples // 4
        near = np.concatenate([xj + rng.standard_normal((quarter, N)),
                               xk + rng.standard_normal((quarter, N))])
        seg = xj + rng.uniform(0.0, 1.0, (quarter, 1)) * (xk - xj)
        dirs = rng.standard_normal((samples - 3 * quarter, N))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        far = xj + dirs * sep * 10.0 ** rng.uniform(0.0, 3.0, (len(dirs), 1))
        pts = np.concatenate([near, seg, far])
        best = max(best, float(np.max(lemma_b1_ratio(alpha, beta, delta, xj, xk, pts))))
    logger.debug('sampled splitting-bound sup over %d draws: %.6g', draws, best)
    return best


def _check_b2_range_(N, s, delta):
    if not 0 < delta < N - 2.0 * s:
        raise ParameterRangeError('need 0 < delta < N - 2s = {0}, got {1}'.format(N - 2.0 * s, delta))


def convolution_integral(N, s, delta, d, q=None):
    """
    int |y - z|^-(N-2s) (1 + |z|)^-(2s+delta) dz for |y| = d.

    In spherical coordinates about y this is |S^{N-1}| int r^{2s-1} M(r) dr
    with M the spherical mean of (1 + |z|)^-(2s+delta); the near panel
    carries r^{2s-1} in a Gauss-Jacobi rule and the tail beyond R is
    M(R) (1 + R)^{2s+delta} B(2s, delta) I_{1/(1+R)}(delta, 2s).

    """
    q = q or DEFAULT_SPEC
    _check_b2_range_(N, s, delta)
    k = 2.0 * s + delta
    profile = DistanceProfile(1.0, k)
    n = q.angular_nodes
    lo = q.inner_split
    hi = q.truncation_radius * (1.0 + d)
    near_r, near_w = gauss_jacobi(q.radial_nodes, 0.0, 2.0 * s - 1.0, 0.0, lo)
    mid_r, mid_w = split_panels(lo, hi, [d], q.panel_density, q.radial_nodes)
    total = np.sum(near_w * zonal_means(profile, d, near_r, N, n))
    total += np.sum(mid_w * mid_r ** (2.0 * s - 1.0) * zonal_means(profile, d, mid_r, N, n))
    if q.tail_order >= 1:
        mean_hi = float(zonal_means(profile, d, [hi], N, n)[0])
        total += (mean_hi * (1.0 + hi) ** k * special.beta(2.0 * s, delta)
                  * special.betainc(delta, 2.0 * s, 1.0 / (1.0 + hi)))
    return sphere_area(N) * total


def lemma_b2_ratio(N, s, delta, y, q=None):
    """
    The convolution integral at y divided by (1 + |y|)^-delta.

    The ratio depends on y only through |y|. At y = 0 it equals
    |S^{N-1}| B(2s, delta).

    """
    d = float(np.linalg.norm(np.asarray(y, dtype=float)))
    return convolution_integral(N, s, delta, d, q) * (1.0 + d) ** delta


def sampled_b2_sup(N, s, delta, radii=(0.0, 1.0, 10.0, 100.0, 1e3), q=None):
    """The largest lemma_b2_ratio() over points at the given distances from 0."""
    _check_b2_range_(N, s, delta)
    values = [lemma_b2_ratio(N, s, delta, np.eye(N)[0] * r, q) for r in radii]
    return float(max(values))


def convolution_decay_exponent(N, s, delta, radii=(1e2, 3e2, 1e3), q=None):
    """
    Log-log slope of the convolution integral against 1 + |y|.

    The bound predicts a slope of at most -delta; the measured slope is
    a record of the decay gain, not a check.

    """
    radii = np.asarray(radii, dtype=float)
    values = np.array([convolution_integral(N, s, delta, r, q) for r in radii])
    slope, intercept = util.loglog_slope(1.0 + radii, values)
    logger.info('convolution decay N=%d s=%.4g delta=%.4g: slope %.6g', N, s, delta, slope)
    return DecayFit(slope, intercept, tuple(radii), tuple(values))

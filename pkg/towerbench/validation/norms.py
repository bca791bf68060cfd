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
The weighted sup-norms

    ||u||_*  = sup lambda^{-(N-2s)/2} |u(y)| / sum_j (1 + lambda |y - x_j|)^{-((N-2s)/2 + tau)}
    ||f||_** = sup lambda^{-(N+2s)/2} |f(y)| / sum_j (1 + lambda |y - x_j|)^{-((N+2s)/2 + tau)}

approximated by maxima over a stratified sample grid. A grid maximum
never exceeds the true supremum.

"""

import logging
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.stats import qmc

from towerbench import util
from towerbench.util import NumericalError
from towerbench.bubble import tower_centers
from towerbench.problem import bubble_constant


logger = logging.getLogger(__name__)

DEFAULT_SHELLS = 8
DEFAULT_DIRECTIONS = 32
DEFAULT_REACH = 20.0
DEFAULT_FAR_POINTS = 10000
DEFAULT_FAR_EXTENT = 10.0

#innermost shell radius, in units of 1/lambda
INNER_SHELL = 0.25

CHUNK = 4096


class EmptyGridError(NumericalError):
    pass


NormReport = namedtuple('NormReport', 'value argmax size seed')


class SampleGrid(object):
    """
    A finite point set standing in for R^N.

    Attributes:
        * points: array of shape (P, N).
        * seed: seed of the random directions and of the far-field
          sequence, or None for grids built from explicit points.

    """
    def __init__(self, points, seed=None, recipe=None):
        points = np.asarray(points, dtype=float)
        if points.size == 0:
            points = points.reshape(0, points.shape[-1] if points.ndim == 2 else 0)
        self.points = np.atleast_2d(points)
        self.seed = seed
        self.recipe = recipe


    @classmethod
    def standard(cls, p, cfg, shells=DEFAULT_SHELLS, directions=DEFAULT_DIRECTIONS,
                 reach=DEFAULT_REACH, far_points=DEFAULT_FAR_POINTS,
                 far_extent=DEFAULT_FAR_EXTENT, seed=0):
        """
        The stratified grid of a tower: every center, 'shells' geometric
        shells from 0.25/lambda to reach/lambda about each center with
        'directions' random unit directions each, and 'far_points'
        scrambled Halton points in the cube of half-width far_extent*rbar
        about (0, 0, ybar).

        """
        N = p.N
        lam = cfg.lam
        rng = np.random.default_rng(seed)
        centers = tower_centers(cfg)
        dirs = rng.standard_normal((directions, N))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        radii = np.geomspace(INNER_SHELL, reach, shells) / lam
        local = (radii[:, None, None] * dirs[None, :, :]).reshape(-1, N)
        parts = [centers] + [c + local for c in centers]
        if far_points > 0:
            unit = qmc.Halton(d=N, scramble=True, seed=seed).random(far_points)
            middle = np.concatenate([[0.0, 0.0], np.asarray(cfg.ybar, dtype=float)])
            half = far_extent * cfg.rbar
            parts.append(middle + half * (2.0 * unit - 1.0))
        recipe = dict(p=p, cfg=cfg, shells=shells, directions=directions, reach=reach,
                      far_points=far_points, far_extent=far_extent, seed=seed)
        return cls(np.concatenate(parts), seed, recipe)


    @classmethod
    def from_points(cls, points, seed=None):
        return cls(points, seed)


    @classmethod
    def annulus(cls, center, inner, outer, count, seed=0):
        """'count' points with radius uniform in [inner, outer] about center."""
        center = np.asarray(center, dtype=float)
        rng = np.random.default_rng(seed)
        dirs = rng.standard_normal((count, len(center)))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        radii = rng.uniform(inner, outer, count)
        return cls(center + radii[:, None] * dirs, seed)


    def union(self, other):
        if len(self) == 0:
            return SampleGrid(other.points, other.seed)
        if len(other) == 0:
            return SampleGrid(self.points, self.seed)
        return SampleGrid(np.concatenate([self.points, other.points]), self.seed)


    def refine(self):
        """
        A superset of this grid: the points of a standard grid with doubled
        counts and a shifted seed are added to the existing ones.

        """
        if self.recipe is None:
            raise EmptyGridError('only standard grids can be refined')
        r = dict(self.recipe)
        extra = SampleGrid.standard(r['p'], r['cfg'], 2 * r['shells'], 2 * r['directions'],
                                    r['reach'], 2 * r['far_points'], r['far_extent'],
                                    r['seed'] + 1)
        merged = self.union(extra)
        merged.recipe = extra.recipe
        return merged


    def __len__(self):
        return len(self.points)


    def __repr__(self):
        return 'SampleGrid({0} points, seed={1})'.format(len(self), self.seed)


#############################################################
# norms
#############################################################

def _evaluate_(f, points, threads):
    slices = list(util.chunks(len(points), CHUNK))

    def call(sl):
        return np.asarray(f(points[sl]), dtype=float).reshape(-1)

    if threads > 1 and len(slices) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(call, slices))
    else:
        parts = [call(sl) for sl in slices]
    return np.concatenate(parts)


def norm_weight(p, cfg, points, exponent):
    """sum_j (1 + lambda |y - x_j|)^{-exponent}."""
    total = np.zeros(len(points))
    for c in tower_centers(cfg):
        dist = np.sqrt(np.sum((points - c) ** 2, axis=1))
        total += (1.0 + cfg.lam * dist) ** (-exponent)
    return total


def _weighted_max_(f, p, cfg, grid, exponent, prefactor, threads):
    if len(grid) == 0:
        raise EmptyGridError('cannot take a maximum over an empty grid')
    points = grid.points
    values = _evaluate_(f, points, threads)
    if not np.all(np.isfinite(values)):
        raise NumericalError('function is not finite on the grid')
    ratio = prefactor * np.abs(values) / norm_weight(p, cfg, points, exponent)
    idx = int(np.argmax(ratio))
    return NormReport(float(ratio[idx]), points[idx].copy(), len(grid), grid.seed)


def norm_star(u, p, cfg, grid, threads=1):
    """
    ||u||_* over the grid.

    Args:
        * u: vectorized callable, points (P, N) to values (P,).
        * p: ProblemParams.
        * cfg: TowerConfig.
        * grid: SampleGrid.
        * threads: worker threads for the evaluation of u.

    Returns:
        NormReport(value, argmax, size, seed).

    """
    a = p.decay
    return _weighted_max_(u, p, cfg, grid, a / 2.0 + p.tau, cfg.lam ** (-a / 2.0), threads)


def norm_starstar(f, p, cfg, grid, threads=1):
    """||f||_** over the grid; see norm_star()."""
    b = p.N + 2.0 * p.s
    return _weighted_max_(f, p, cfg, grid, b / 2.0 + p.tau, cfg.lam ** (-b / 2.0), threads)


def single_bubble_norm(p, kind='star', samples=20001, reach=1e3):
    """
    The supremum of the norm ratio of one bubble, from its radial profile

        star:     C (1 + rho)^{a/2 + tau} / (1 + rho^2)^{a/2}
        starstar: C^{2*-1} (1 + rho)^{b/2 + tau} / (1 + rho^2)^{b/2}

    with a = N - 2s, b = N + 2s and rho = lambda |y - x_1|, maximized on a
    dense geometric sample of rho.

    """
    if kind == 'star':
        k, amp = p.decay / 2.0, bubble_constant(p.N, p.s)
    elif kind == 'starstar':
        k, amp = (p.N + 2.0 * p.s) / 2.0, bubble_constant(p.N, p.s) ** p.critical_power
    else:
        raise ValueError('unknown norm {0!r}'.format(kind))
    rho = np.concatenate([[0.0], np.geomspace(1e-4, reach, samples)])
    ratio = amp * (1.0 + rho) ** (k + p.tau) / (1.0 + rho * rho) ** k
    return float(ratio.max())

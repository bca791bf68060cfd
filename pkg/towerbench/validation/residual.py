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
The approximation error of the tower,

    l(y) = K(y) Z(y)^{2*-1+sign eps} - sum_j U_j(y)^{2*-1},

its split into the perturbation, interaction and weight parts

    J1 = K (Z^{2*-1+sign eps} - Z^{2*-1})
    J2 = K (Z^{2*-1} - sum_j U_j^{2*-1})
    J3 = (K - 1) sum_j U_j^{2*-1},

and the sweep of ||l||_** over eps.

"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np

from towerbench import util
from towerbench.bubble import TowerConfig, bubble_profile, tower_centers
from towerbench.results import ResultTable, tabulated
from towerbench.reduction.scaling import (DEFAULT_L0, DEFAULT_L1, clamp_lambda, lambda_from_t,
                                          m_from_eps, offset_bound)
from towerbench.problem import ProblemError
from towerbench.validation.norms import (DEFAULT_DIRECTIONS, DEFAULT_FAR_EXTENT, DEFAULT_FAR_POINTS,
                                         DEFAULT_REACH, DEFAULT_SHELLS, SampleGrid, norm_starstar)


logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ('eps', 'm', 'lambda', 'norm_total', 'norm_J1', 'norm_J2', 'norm_J3', 'slope')

#size limit of the per-point cache
CACHE_SIZE = 100000


class ResidualField(object):
    """
    The error l of the tower cfg for the problem p and weight K.

    Single-point evaluations are cached by point.

    """
    def __init__(self, p, cfg, K):
        if cfg.dim != p.N:
            raise ProblemError('tower dimension {0} does not match N={1}'.format(cfg.dim, p.N))
        self.p = p
        self.cfg = cfg
        self.K = K
        self.cache = {}
        self._centers_ = tower_centers(cfg)
        self._profile_ = bubble_profile(p, cfg.lam)


    def bubbles(self, pts):
        """The stack of bubble values, shape (m, P)."""
        return np.array([self._profile_(np.sum((pts - c) ** 2, axis=1)) for c in self._centers_])


    def _split_(self, pts):
        p = self.p
        U = self.bubbles(pts)
        Z = np.sum(U, axis=0)
        K = np.asarray(self.K(pts), dtype=float).reshape(-1)
        excess = np.asarray(self.K.excess(pts), dtype=float).reshape(-1)
        crit = p.critical_power
        z_crit = util.log_power(Z, crit)
        shift = p.exponent_sign * p.eps
        J1 = K * z_crit * np.expm1(shift * np.log(np.maximum(Z, util.UNDERFLOW)))
        J1 = np.where(Z > util.UNDERFLOW, J1, 0.0)
        J2 = K * util.power_excess(U, crit)
        J3 = excess * np.sum(util.log_power(U, crit), axis=0)
        return J1, J2, J3


    def split(self, y):
        """(J1, J2, J3) at a point or an array of points."""
        pts, single = util.as_points(y, self.p.N)
        if single:
            key = tuple(pts[0])
            if key not in self.cache:
                if len(self.cache) >= CACHE_SIZE:
                    self.cache.clear()
                self.cache[key] = tuple(float(v[0]) for v in self._split_(pts))
            return self.cache[key]
        return self._split_(pts)


    def __call__(self, y):
        pts, single = util.as_points(y, self.p.N)
        if single:
            return float(sum(self.split(pts[0])))
        J1, J2, J3 = self._split_(pts)
        return J1 + J2 + J3


def residual_eval(rf, y):
    """l at y: K Z^{2*-1+sign eps} - sum_j U_j^{2*-1}."""
    return rf(y)


def residual_split(rf, y):
    """(J1, J2, J3) at y; they sum to residual_eval(rf, y)."""
    return rf.split(y)


def _term_(rf, index):
    def f(pts):
        return rf.split(pts)[index]
    return f


def _default_center_(K, N):
    v0 = getattr(K, 'v0', None)
    if v0 is None:
        v0 = np.concatenate([[1.0], np.zeros(N - 2)])
    return np.asarray(v0, dtype=float)


def _sweep_entry_(p, K, eps, L0, L1, t, offset, iota, grid_args, seed):
    pe = replace(p, eps=eps)
    m = m_from_eps(pe, eps)
    lam, clamped = clamp_lambda(pe, lambda_from_t(pe, t, m), eps, L0, L1)
    bound = offset_bound(pe, eps, iota)
    if np.linalg.norm(offset) > bound:
        raise ProblemError('tower offset {0:.6g} exceeds eps^((1+iota)/(N-2s)) = {1:.6g} at eps={2}'.format(
            np.linalg.norm(offset), bound, eps))
    v = _default_center_(K, p.N) + offset
    cfg = TowerConfig(m, float(v[0]), tuple(v[1:]), lam)
    grid = SampleGrid.standard(pe, cfg, seed=seed, **grid_args)
    rf = ResidualField(pe, cfg, K)
    norms = [norm_starstar(rf, pe, cfg, grid).value]
    norms.extend(norm_starstar(_term_(rf, i), pe, cfg, grid).value for i in range(3))
    logger.info('eps=%g m=%d lambda=%.6g ||l||_**=%.6g', eps, m, lam, norms[0])
    return [eps, m, lam] + norms, clamped


@tabulated
def residual_norm_sweep(p, K, eps_list, L0=DEFAULT_L0, L1=DEFAULT_L1, t=1.0, offset=None,
                        iota=0.0, shells=DEFAULT_SHELLS, directions=DEFAULT_DIRECTIONS,
                        reach=DEFAULT_REACH, far_points=DEFAULT_FAR_POINTS,
                        far_extent=DEFAULT_FAR_EXTENT, seed=0, threads=1):
    """
    ||l||_** and the norms of J1, J2, J3 over a decreasing list of eps.

    For each eps, m = floor(eps^{-(N-2s-2)/(N-2s)^2}) and lambda = t
    m^{(N-2s)/(N-2s-2)}, clamped into [L0, L1] eps^{-1/(N-2s)}; the tower
    sits at the critical point of K moved by 'offset'. The 'slope' column
    is the least-squares slope of log ||l||_** against log eps over the
    rows so far, empty on the first row.

    Args:
        * p: ProblemParams; its eps is replaced by each sweep value.
        * K: WeightField (or ConstantWeight).
        * eps_list: strictly decreasing positive values.
        * L0, L1: the lambda window.
        * t: the scaled lambda.
        * offset: displacement of (rbar, ybar'') from (r0, y0''), of norm at
          most eps^{(1+iota)/(N-2s)} for every eps.
        * iota: the exponent gain in the offset bound.
        * shells, directions, reach, far_points, far_extent, seed: the
          sample grid, see SampleGrid.standard().
        * threads: sweep entries evaluated concurrently.

    Returns:
        A ResultTable; its properties hold the final 'slope' and the list
        of eps whose lambda was 'clamped'.

    """
    eps_list = [float(e) for e in eps_list]
    if not eps_list:
        raise ProblemError('eps_list is empty')
    if any(e <= 0 for e in eps_list):
        raise ProblemError('eps_list entries must be positive, got {0}'.format(eps_list))
    if any(b >= a for a, b in zip(eps_list[:-1], eps_list[1:])):
        raise ProblemError('eps_list must be strictly decreasing, got {0}'.format(eps_list))
    offset = np.zeros(p.N - 1) if offset is None else np.asarray(offset, dtype=float)
    if offset.shape != (p.N - 1,):
        raise ProblemError('offset must have length N-1={0}'.format(p.N - 1))
    grid_args = dict(shells=shells, directions=directions, reach=reach,
                     far_points=far_points, far_extent=far_extent)

    def entry(eps):
        return _sweep_entry_(p, K, eps, L0, L1, t, offset, iota, grid_args, seed)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            entries = list(pool.map(entry, eps_list))
    else:
        entries = [entry(e) for e in eps_list]

    rows = []
    for i, (row, _) in enumerate(entries):
        if i == 0:
            slope = None
        else:
            eps = [r[0] for r in rows] + [row[0]]
            norms = [r[3] for r in rows] + [row[3]]
            slope = util.loglog_slope(eps, norms)[0]
        rows.append(row + [slope])
    clamped = [row[0] for row, c in entries if c]
    final = rows[-1][-1]
    if final is not None:
        floor = 1.0 / p.decay
        if final < floor - 0.05:
            logger.warning('residual slope %.4g is below the floor 1/(N-2s) - 0.05 = %.4g',
                           final, floor - 0.05)
    return ResultTable(rows, SWEEP_COLUMNS, properties=dict(slope=final, clamped=clamped))

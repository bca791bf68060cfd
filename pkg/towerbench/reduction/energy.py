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
The reduced energy of the tower,

    I(Z) = 1/2 int Z (-Delta)^s Z - 1/q int K Z^q,    q = 2*_s + sign eps,

and its derivative in lambda compared with the two-term expansion in
B1 and B2.

The Dirichlet part uses the bubble identity (-Delta)^s U_j = U_j^{2*-1},
so it is the sum of the pair integrals int U_j^{2*-1} U_k. The potential
part splits Z^q = sum_j U_j^q + (Z^q - sum_j U_j^q): the first sum is
closed form, the remainder and the weight excess (K - 1) Z^q are
integrated by quadrature about x_1 against the partition of unity
w_1 = U_1^2 / sum_j U_j^2. All bubbles are equivalent under the ring's
rotations, so the quadrature about x_1 is multiplied by m.

"""

import logging
import math
from collections import namedtuple

import numpy as np

from towerbench import util
from towerbench.util import NumericalError
from towerbench.bubble import bubble_profile, tower_centers
from towerbench.quadrature import DEFAULT_SPEC, gauss_jacobi, log_panels, sphere_rule
from towerbench.reduction.integrals import critical_energy, pair_integral_scaled, power_integral
from towerbench.reduction.constants import constant_B1, constant_B2


logger = logging.getLogger(__name__)

#relative step of the lambda finite difference
ENERGY_STEP = 1e-4

#largest tolerated disagreement between steps h and 2h
STEP_TOLERANCE = 0.5

#inner and outer radii of the quadrature about x_1, in units of 1/lambda
INNER_RADIUS = 1e-3
OUTER_MARGIN = 10.0

CHUNK = 8192


class StepSizeError(NumericalError):
    """Finite-difference noise swamps the derivative."""
    pass


EnergyBreakdown = namedtuple('EnergyBreakdown',
                             'dirichlet potential total pairs A identity_check')
DerivativeReport = namedtuple('DerivativeReport',
                              'fd model ratio remainder remainder_per_bubble '
                              'remainder_scaled step_h step_2h')


def pair_matrix(p, cfg, q=None):
    """
    The m x m matrix int U_j^{2*-1} U_k; the diagonal is the constant A.

    Entries depend only on |j - k| mod m, so one row is computed.

    """
    q = q or DEFAULT_SPEC
    m = cfg.m
    centers = tower_centers(cfg)
    row = np.empty(m)
    row[0] = critical_energy(p)
    cache = {}
    for k in range(1, m):
        key = min(k, m - k)
        if key not in cache:
            dist = float(np.linalg.norm(centers[0] - centers[key]))
            cache[key] = pair_integral_scaled(p, cfg.lam, dist, q)
        row[k] = cache[key]
    return np.array([np.roll(row, j) for j in range(m)])


class TowerQuadrature(object):
    """
    Quadrature nodes about x_1 for integrals against the partition w_1.

    The radial nodes are fixed in units of 1/ref_lam so that energies at
    nearby scales share one rule and differ smoothly.

    """
    def __init__(self, cfg, q=None, ref_lam=None):
        q = q or DEFAULT_SPEC
        self.q = q
        ref_lam = cfg.lam if ref_lam is None else ref_lam
        N = cfg.dim
        lo = INNER_RADIUS
        reach = 4.0 * (cfg.rbar + float(np.linalg.norm(cfg.ybar)))
        hi = reach * ref_lam + OUTER_MARGIN
        near_r, near_w = gauss_jacobi(q.radial_nodes, 0.0, N - 1.0, 0.0, lo)
        mid_r, mid_w = log_panels(lo, hi, q.panel_density, q.radial_nodes)
        # scaled radii rho = lambda r; weights carry rho^{N-1}
        self.rho = np.concatenate([near_r, mid_r])
        self.rho_w = np.concatenate([near_w, mid_w * mid_r ** (N - 1.0)])
        axis = np.zeros(N)
        axis[1] = 1.0
        self.dirs, self.dir_w = sphere_rule(N, q.angular_nodes, q.sphere_nodes, axis)


    def integrate(self, p, cfg, integrand):
        """
        int w_1 F over R^N, where integrand(U, points) receives the stack of
        bubble values (m, P) and the points (P, N) and returns F.

        """
        lam = cfg.lam
        N = cfg.dim
        profile = bubble_profile(p, lam)
        centers = tower_centers(cfg)
        total = 0.0
        per = max(1, CHUNK // len(self.dirs))
        for sl in util.chunks(len(self.rho), per):
            r = self.rho[sl] / lam
            pts = (centers[0][None, None, :] + r[:, None, None] * self.dirs[None, :, :]).reshape(-1, N)
            U = np.array([profile(np.sum((pts - c) ** 2, axis=1)) for c in centers])
            weight = U[0] ** 2 / np.sum(U ** 2, axis=0)
            values = (weight * integrand(U, pts)).reshape(len(r), len(self.dirs))
            total += np.sum(self.rho_w[sl] * values.dot(self.dir_w))
        return total * lam ** (-N)


def potential_excess(p, cfg, K, power, tq):
    """
    int w_1 (K Z^q - sum_j U_j^q): the weight excess and the bubble
    interaction part of the potential, about x_1.

    """
    def integrand(U, pts):
        zq = util.log_power(np.sum(U, axis=0), power)
        return K.excess(pts) * zq + util.power_excess(U, power)

    return tq.integrate(p, cfg, integrand)


def dirichlet_identity(p, cfg, tq):
    """m int w_1 Z sum_j U_j^{2*-1}, which must equal the sum of all pair integrals."""

    def integrand(U, pts):
        return np.sum(U, axis=0) * np.sum(util.log_power(U, p.critical_power), axis=0)

    return cfg.m * tq.integrate(p, cfg, integrand)


def energy(p, cfg, K, eps=None, q=None, tq=None, check=False):
    """
    The energy I(Z) of the tower.

    Args:
        * p: ProblemParams.
        * cfg: TowerConfig.
        * K: WeightField or ConstantWeight.
        * eps: perturbation; defaults to p.eps.
        * q: QuadratureSpec.
        * tq: a TowerQuadrature to reuse.
        * check: also compute the direct quadrature of the Dirichlet part.

    Returns:
        EnergyBreakdown(dirichlet, potential, total, pairs, A,
        identity_check), where 'pairs' is the unhalved pair matrix and
        dirichlet is half its sum.

    """
    q = q or DEFAULT_SPEC
    eps = p.eps if eps is None else eps
    power = p.two_star + p.exponent_sign * eps
    tq = tq or TowerQuadrature(cfg, q)
    pairs = pair_matrix(p, cfg, q)
    dirichlet = 0.5 * pairs.sum()
    excess = potential_excess(p, cfg, K, power, tq)
    potential = (cfg.m / power) * (power_integral(p, power, cfg.lam) + excess)
    identity = dirichlet_identity(p, cfg, tq) if check else None
    return EnergyBreakdown(dirichlet, potential, dirichlet - potential, pairs,
                           critical_energy(p), identity)


def _reduced_energy_(p, cfg, K, power, q, tq):
    """Off-diagonal Dirichlet part minus the quadrature part of the potential."""
    pairs = pair_matrix(p, cfg, q)
    off = 0.5 * (pairs.sum() - np.trace(pairs))
    return off - (cfg.m / power) * potential_excess(p, cfg, K, power, tq)


def energy_model(p, cfg, B1, B2):
    """m (-B1/lambda^3 + sum_{j>=2} B2 / (lambda^{a+1} |x_1 - x_j|^a))."""
    a = p.decay
    lam = cfg.lam
    centers = tower_centers(cfg)
    dist = np.linalg.norm(centers[1:] - centers[0], axis=1)
    inter = np.sum(B2 / (lam ** (a + 1.0) * dist ** a)) if cfg.m > 1 else 0.0
    return cfg.m * (-B1 / lam ** 3 + inter)


def denergy_dlambda(p, cfg, K, eps=None, q=None, B1=None, B2=None):
    """
    dI/dlambda by finite differences, compared with the two-term model.

    The lambda-dependent quadrature part of I is differenced at lambda +- h
    and lambda +- 2h with h = 1e-4 lambda and combined by Richardson
    extrapolation; the closed-form part contributes its exact derivative.

    Args:
        * p, cfg, K: problem, tower, weight.
        * eps: perturbation; defaults to p.eps.
        * q: QuadratureSpec.
        * B1, B2: constants of the model; computed when omitted. B1 is
          taken as 0 for a constant weight.

    Returns:
        DerivativeReport. 'remainder' is fd - model; it is also given per
        bubble and in units of m/lambda^3.

    """
    q = q or DEFAULT_SPEC
    eps = p.eps if eps is None else eps
    power = p.two_star + p.exponent_sign * eps
    lam = cfg.lam
    tq = TowerQuadrature(cfg, q)
    h = ENERGY_STEP * lam

    def F(delta):
        shifted = type(cfg)(cfg.m, cfg.rbar, cfg.ybar, lam + delta)
        return _reduced_energy_(p, shifted, K, power, q, tq)

    d_h = (F(h) - F(-h)) / (2.0 * h)
    d_2h = (F(2.0 * h) - F(-2.0 * h)) / (4.0 * h)
    if abs(d_h - d_2h) > STEP_TOLERANCE * abs(d_h):
        raise StepSizeError('finite differences disagree: {0:.6g} (h) vs {1:.6g} (2h)'.format(d_h, d_2h))
    fd = (4.0 * d_h - d_2h) / 3.0
    # exact derivative of (m/q) int U^q, zero at the critical exponent
    expo = 0.5 * p.decay * (power - p.two_star)
    fd -= (cfg.m / power) * power_integral(p, power, lam) * expo / lam

    if B1 is None:
        B1 = 0.0 if getattr(K, 'is_constant', False) else constant_B1(p, K, q, eps)
    if B2 is None:
        B2 = constant_B2(p, q) if cfg.m > 1 else 0.0
    model = energy_model(p, cfg, B1, B2)
    remainder = fd - model
    ratio = fd / model if model != 0 else math.nan
    logger.info('dI/dlambda at lambda=%.6g: fd=%.6g model=%.6g', lam, fd, model)
    return DerivativeReport(fd, model, ratio, remainder, remainder / cfg.m,
                            remainder / (cfg.m / lam ** 3), d_h, d_2h)

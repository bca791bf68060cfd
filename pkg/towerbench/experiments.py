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
The experiments behind the command-line subcommands. Each takes a
validated RunConfig and returns a ResultTable ready for write_table().

"""

import logging

import numpy as np

from towerbench.results import ResultTable, tabulated
from towerbench.problem import admissible_s_window, bubble_constant, operator_constant
from towerbench.bubble import Bubble, bubble_profile_sum, bubble_value, tower_centers
from towerbench.operators.fractional import frac_lap_quadrature
from towerbench.validation.residual import residual_norm_sweep
from towerbench.validation.pohozaev import HalfBallRegion, pohozaev_scaling, pohozaev_translation
from towerbench.reduction.constants import LATTICE_SIZES, lattice_limit, lattice_sum, reduced_constants
from towerbench.reduction.solver import solve_reduced
from towerbench.config import AUTO, ConfigError


logger = logging.getLogger(__name__)


def bubble_eval_columns(N):
    return (['index'] + ['y_{0}'.format(i + 1) for i in range(N)]
            + ['U', 'Z', 'frac_lap', 'frac_lap_quadrature', 'tail_ok'])


@tabulated
def cmd_bubble_eval(config):
    """
    Evaluate the tower on the segment of the [eval] section.

    Columns are the point, the first bubble U = U_{x_1,lambda}, the tower
    Z, its fractional Laplacian sum_j U_j^{2*-1} in closed form, and the
    same by quadrature with the flag of its tail check.

    """
    p = config.problem_params()
    cfg = config.tower(p)
    q = config.quadrature()
    pts = config.eval_points(p)
    x1 = tower_centers(cfg)[0]
    first = Bubble(tuple(x1), cfg.lam)
    Z = bubble_profile_sum(p, cfg)
    rhs = bubble_profile_sum(p, cfg, p.critical_power)
    rows = []
    for i, y in enumerate(pts):
        quad = frac_lap_quadrature(Z, y, p.s, q)
        rows.append([i] + [float(v) for v in y]
                    + [float(bubble_value(p, first, y)), float(Z(y)),
                       float(rhs(y)), quad.value, quad.tail_ok])
    logger.info('evaluated %d points of a tower of %d bubbles', len(rows), cfg.m)
    return ResultTable(rows, bubble_eval_columns(p.N))


@tabulated
def cmd_residual_sweep(config, threads=1):
    """
    ||l||_** and its three parts over problem.eps_list, with the log-log
    slope of the total.

    """
    p = config.problem_params()
    K = config.weight()
    tw = config['tower']
    grid = config['grid']
    offset = None if tw['offset'] == AUTO else tw['offset']
    return residual_norm_sweep(p, K, config['problem']['eps_list'],
                               L0=config['solver']['L0'], L1=config['solver']['L1'],
                               t=tw['t'], offset=offset, iota=config['tolerances']['iota'],
                               seed=config.seed, threads=threads, **grid)


POHOZAEV_COLUMNS = ('identity', 'term', 'value')


def pohozaev_region(config, p, cfg):
    """
    The half ball of the [pohozaev] section: its center sits 'shift'/lambda
    before x_1 along e_index, so the first bubble is off center.

    """
    poh = config['pohozaev']
    e = np.eye(p.N)[poh['index'] - 1]
    center = tower_centers(cfg)[0] - poh['shift'] / cfg.lam * e
    return HalfBallRegion(tuple(center), config.pohozaev_radius(cfg))


@tabulated
def cmd_pohozaev(config):
    """
    Terms of the translation and/or scaling identity for the tower, one
    row per term followed by the 'residual' and 'relative' rows.

    """
    p = config.problem_params()
    cfg = config.tower(p)
    K = config.weight()
    q = config.quadrature()
    u = bubble_profile_sum(p, cfg)
    region = pohozaev_region(config, p, cfg)
    which = config['pohozaev']['identity']
    reports = []
    if which in ('both', 'translation'):
        reports.append(pohozaev_translation(u, K, region, config['pohozaev']['index'], p, q))
    if which in ('both', 'scaling'):
        reports.append(pohozaev_scaling(u, K, region, p, q))
    rows = []
    for report in reports:
        for name in sorted(report.terms):
            rows.append([report.identity, name, float(report.terms[name])])
        rows.append([report.identity, 'residual', report.residual])
        rows.append([report.identity, 'relative', report.relative])
    worst = max(r.relative for r in reports)
    return ResultTable(rows, POHOZAEV_COLUMNS, properties=dict(relative=worst))


def reduce_columns(N):
    return (['t_star', 't_closed_form', 'rbar_star']
            + ['ybar_star_{0}'.format(i + 3) for i in range(N - 2)]
            + ['residual_norm', 'B1', 'B2', 'B3', 'boundary_sign_ok', 'iterations'])


def _weight_field_(config):
    K = config.weight()
    if getattr(K, 'is_constant', False):
        raise ConfigError('weight.enabled', 'this experiment needs the weight field')
    return K


@tabulated
def cmd_reduce(config):
    """The root of the reduced system in the [solver] box, as one row."""
    p = config.problem_params()
    K = _weight_field_(config)
    q = config.quadrature()
    sv = config['solver']
    sol = solve_reduced(p, K, config.search_box(), sv['tol'], sv['max_iter'], q=q)
    row = ([sol.t_star, sol.t_closed_form, sol.rbar_star] + list(sol.ybar_star)
           + [sol.residual_norm, sol.B1, sol.B2, sol.B3, sol.boundary_sign_ok, sol.iterations])
    return ResultTable([row], reduce_columns(p.N),
                       properties=dict(boundary_signs=sol.boundary_signs))


CONSTANT_COLUMNS = ('name', 'value')


@tabulated
def cmd_constants(config):
    """
    The constants of the problem: C_{N,s}, c_{N,s}, tau, 2*_s, the
    admissible window of s, B1 to B3 when the weight is enabled, and the
    report-only exponents of the [tolerances] section.

    """
    p = config.problem_params()
    rows = [['N', p.N], ['s', p.s],
            ['C', bubble_constant(p.N, p.s)],
            ['c', operator_constant(p.N, p.s)],
            ['tau', p.tau], ['two_star', p.two_star],
            ['s_min', admissible_s_window(p.N)[0]]]
    K = config.weight()
    if not getattr(K, 'is_constant', False):
        B1, B2, B3 = reduced_constants(p, K, q=config.quadrature())
        rows.extend([['B1', B1], ['B2', B2], ['B3', B3]])
    for key, value in sorted(config.report_exponents().items()):
        rows.append([key, value])
    return ResultTable(rows, CONSTANT_COLUMNS)


LATTICE_COLUMNS = ('m', 'lattice_sum', 'limit', 'zeta_limit')


@tabulated
def cmd_lattice(config):
    """
    lattice_sum(N-2s, m) for growing m with its extrapolated limit and
    the closed form 2 zeta(N-2s)/pi^(N-2s).

    """
    p = config.problem_params()
    a = p.decay
    fit = lattice_limit(a)
    sizes = sorted(set((2, 4) + tuple(LATTICE_SIZES)))
    rows = [[m, lattice_sum(a, m), fit.limit, fit.zeta_limit] for m in sizes]
    return ResultTable(rows, LATTICE_COLUMNS, properties=dict(limit=fit.limit, zeta=fit.zeta_limit))

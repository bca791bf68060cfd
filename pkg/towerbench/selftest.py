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
The invariant suite behind the 'selftest' subcommand: fast closed-form
checks and cross-module consistency checks, each reported as one row.

"""

import io
import logging
import math

import numpy as np
from scipy import special

from towerbench import util
from towerbench.results import ResultTable, read_table, tabulated, write_table
from towerbench.problem import ProblemParams, admissible_s_window, bubble_constant, sphere_area
from towerbench.bubble import (Bubble, TowerConfig, bubble_profile, bubble_profile_sum,
                               bubble_value, reflect_y2, rotate_tower, tower_centers, tower_value,
                               z_derivative)
from towerbench.profiles import DistanceProfile, GaussianProfile, RadialSum
from towerbench.operators.fractional import (frac_lap_exact_bubble, frac_lap_exact_gaussian,
                                             frac_lap_quadrature)
from towerbench.operators.extension import (ExtensionField, extension_flux, kernel_mass,
                                            weighted_harmonicity)
from towerbench.weight import ConstantWeight, WeightField, critical_degree
from towerbench.validation.norms import SampleGrid, norm_star, single_bubble_norm
from towerbench.validation.interaction import lemma_b2_ratio, sampled_b1_sup
from towerbench.validation.residual import ResidualField
from towerbench.validation.pohozaev import HalfBallRegion, pohozaev_scaling, pohozaev_translation
from towerbench.reduction.constants import lattice_limit, reduced_constants
from towerbench.reduction.energy import denergy_dlambda, energy
from towerbench.reduction.scaling import lambda_from_t, m_from_eps
from towerbench.reduction.solver import (SearchBox, boundary_signs, closed_form_t, default_box,
                                         newton_t)
from towerbench.config import RunConfig


logger = logging.getLogger(__name__)

SELFTEST_COLUMNS = ('check', 'status', 'value', 'detail')

PASS = 'pass'
FAIL = 'fail'

#finite-difference step, relative to the scale of the perturbed parameter
FD_STEP = 1e-6

CHECKS = []


def check(name):
    """Register a check; it returns (ok, value, detail)."""
    def register(f):
        CHECKS.append((name, f))
        return f
    return register


def _relative_(a, b):
    scale = max(np.max(np.abs(b)), 1e-300)
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))) / scale)


def _points_(rng, center, spread, count):
    return np.asarray(center, dtype=float) + spread * rng.standard_normal((count, len(center)))


def _tower_(p, m, lam=2.0):
    return TowerConfig(m, 1.0, (0.25,) * (p.N - 2), lam)


@check('s_window')
def _s_window_(p, rng, config):
    s_min = admissible_s_window(4)[0]
    return abs(s_min - 0.381966) < 1e-6, s_min, 'N=4 lower end 0.381966'


@check('bubble_constant')
def _bubble_constant_(p, rng, config):
    C = bubble_constant(5, 0.5)
    return abs(C - 16.0) < 1e-12, C, 'C_{5,1/2} = 16'


@check('bubble_peak')
def _bubble_peak_(p, rng, config):
    peak = float(bubble_value(p, Bubble.unit(p.N), np.zeros(p.N)))
    C = bubble_constant(p.N, p.s)
    return abs(peak - C) <= 1e-12 * C, peak, 'U_{0,1}(0) = C_{N,s}'


@check('scaling_laws')
def _scaling_laws_(p, rng, config):
    q = ProblemParams(5, 0.9, 1e-8)
    m = m_from_eps(q, 1e-8)
    lam = lambda_from_t(q, 1.0, m)
    return m == 8 and abs(lam - 256.0) < 1e-9, lam, 'eps=1e-8 gives m={0}'.format(m)


@check('tower_symmetry')
def _tower_symmetry_(p, rng, config):
    cfg = _tower_(p, 4)
    pts = _points_(rng, tower_centers(cfg)[0], 1.0, 50)
    Z = tower_value(p, cfg, pts)
    err = max(_relative_(tower_value(p, cfg, rotate_tower(cfg, pts)), Z),
              _relative_(tower_value(p, cfg, reflect_y2(pts)), Z))
    return err < 1e-12, err, 'rotation by 2pi/m and y_2 reflection'


def _bubble_j_(p, cfg, j, pts):
    return bubble_value(p, Bubble(tuple(tower_centers(cfg)[j - 1]), cfg.lam), pts)


@check('z_derivatives')
def _z_derivatives_(p, rng, config):
    cfg = _tower_(p, 3)
    j = 2
    pts = _points_(rng, tower_centers(cfg)[j - 1], 0.5, 100)
    worst = 0.0
    for l in range(1, p.N + 1):
        if l == 1:
            h = FD_STEP * cfg.lam
            up = TowerConfig(cfg.m, cfg.rbar, cfg.ybar, cfg.lam + h)
            down = TowerConfig(cfg.m, cfg.rbar, cfg.ybar, cfg.lam - h)
        elif l == 2:
            h = FD_STEP * cfg.rbar
            up = TowerConfig(cfg.m, cfg.rbar + h, cfg.ybar, cfg.lam)
            down = TowerConfig(cfg.m, cfg.rbar - h, cfg.ybar, cfg.lam)
        else:
            h = FD_STEP
            shift = np.eye(p.N - 2)[l - 3] * h
            up = TowerConfig(cfg.m, cfg.rbar, tuple(np.add(cfg.ybar, shift)), cfg.lam)
            down = TowerConfig(cfg.m, cfg.rbar, tuple(np.subtract(cfg.ybar, shift)), cfg.lam)
        fd = (_bubble_j_(p, up, j, pts) - _bubble_j_(p, down, j, pts)) / (2.0 * h)
        worst = max(worst, _relative_(z_derivative(p, cfg, j, l, pts), fd))
    return worst < 1e-6, worst, 'Z_{j,l} against central differences'


def _weight_(config):
    K = config.weight()
    return WeightField.default(config['problem']['N']) if getattr(K, 'is_constant', False) else K


@check('weight_gradient')
def _weight_gradient_(p, rng, config):
    K = _weight_(config)
    pts = _points_(rng, K.lift(), 0.1 * K.cutoff, 100)
    grad = K.grad(pts)
    fd = np.empty_like(pts)
    for i in range(p.N):
        e = np.eye(p.N)[i] * FD_STEP
        fd[:, i] = (K(pts + e) - K(pts - e)) / (2.0 * FD_STEP)
    err = _relative_(grad, fd)
    return err < 1e-6, err, 'grad K against central differences'


@check('critical_degree')
def _critical_degree_(p, rng, config):
    K = _weight_(config)
    degree = critical_degree(K)
    return degree in (-1, 1), degree, 'sign det H'


@check('kernel_mass')
def _kernel_mass_(p, rng, config):
    worst = max(abs(kernel_mass(p.N, p.s, t) - 1.0) for t in (0.1, 1.0, 10.0))
    return worst < 1e-6, worst, 'int P_s(y, t) dy = 1 at t = 0.1, 1, 10'


@check('bubble_identity')
def _bubble_identity_(p, rng, config):
    b = Bubble.unit(p.N)
    unit = RadialSum.single(np.zeros(p.N), bubble_profile(p, 1.0))
    worst = 0.0
    for y in (np.zeros(p.N), np.eye(p.N)[0]):
        exact = float(frac_lap_exact_bubble(p, b, y))
        value = frac_lap_quadrature(unit, y, p.s).value
        worst = max(worst, abs(value - exact) / exact)
    return worst < 1e-3, worst, '(-Delta)^s U = U^(2*-1) at 0 and e_1'


def _half_laplace_():
    """One bubble with N = 4, s = 1/2, where the extension is known in closed form."""
    q = ProblemParams(4, 0.5)
    return q, RadialSum.single(np.zeros(4), bubble_profile(q, 1.0))


@check('gaussian_identity')
def _gaussian_identity_(p, rng, config):
    profile = GaussianProfile(1.0, 1.0)
    f = RadialSum.single(np.zeros(p.N), profile)
    worst = 0.0
    for y in (np.zeros(p.N), 0.5 * np.eye(p.N)[0]):
        exact = float(frac_lap_exact_gaussian(p.s, np.zeros(p.N), profile, y))
        result = frac_lap_quadrature(f, y, p.s)
        if not result.tail_ok:
            return False, None, 'Gaussian tail flagged as slow'
        worst = max(worst, abs(result.value - exact) / exact)
    return worst < 1e-3, worst, 'quadrature against the confluent hypergeometric closed form'


@check('slow_decay_flag')
def _slow_decay_flag_(p, rng, config):
    f = RadialSum.single(np.zeros(p.N), DistanceProfile(1.0, 0.5))
    result = frac_lap_quadrature(f, np.zeros(p.N), p.s)
    return not result.tail_ok, result.tail, '(1 + |y|)^(-1/2) is flagged as slowly decaying'


@check('extension_flux')
def _extension_flux_(p, rng, config):
    q, unit = _half_laplace_()
    e = ExtensionField(unit, q.s)
    worst = 0.0
    for y in (np.zeros(4), np.array([0.7, 0.0, 0.0, 0.0])):
        exact = float(frac_lap_exact_bubble(q, Bubble.unit(4), y))
        worst = max(worst, abs(extension_flux(e, y) - exact) / exact)
    return worst < 5e-3, worst, 'boundary flux against (-Delta)^s U, N=4 s=1/2'


@check('extension_harmonicity')
def _extension_harmonicity_(p, rng, config):
    q, unit = _half_laplace_()
    report = weighted_harmonicity(ExtensionField(unit, q.s), np.array([0.4, 0.2, 0.0, 0.0]), 0.8)
    return report.relative < 1e-2, report.relative, 'div(t^(1-2s) grad u~) = 0 at an interior point'


@check('lattice_limit')
def _lattice_limit_(p, rng, config):
    fit = lattice_limit(p.decay)
    err = abs(fit.limit - fit.zeta_limit) / fit.zeta_limit
    return err < 1e-3, err, 'extrapolated lattice sum against 2 zeta(a)/pi^a'


@check('newton_closed_form')
def _newton_closed_form_(p, rng, config):
    box = SearchBox(0.05, 20.0, np.zeros(p.N - 1), np.ones(p.N - 1))
    a = p.decay
    t, _ = newton_t(2.0, 3.0, a, 1.0, box)
    err = abs(t - closed_form_t(2.0, 3.0, a)) / t
    return err < 1e-10, err, 'Newton root against (B3/B1)^(1/(a-2))'


@check('reduced_constants')
def _reduced_constants_(p, rng, config):
    K = _weight_(config)
    B1, B2, B3 = reduced_constants(p, K)
    if not (B1 > 0 and B2 > 0 and B3 > 0):
        return False, min(B1, B2, B3), 'B1, B2, B3 must be positive'
    t_cf = closed_form_t(B1, B3, p.decay)
    box = default_box(K)._replace(t_min=0.25 * t_cf, t_max=4.0 * t_cf)
    signs = boundary_signs(K, box, B1, B3, p.decay)
    ok = all(lo * hi < 0 for lo, hi in signs)
    return ok, t_cf, 'B1, B2, B3 > 0 and a sign change on every pair of faces'


@check('energy_scale_invariance')
def _energy_scale_invariance_(p, rng, config):
    K = ConstantWeight(p.N)
    totals = [energy(p, TowerConfig(1, 1.0, (0.0,) * (p.N - 2), lam), K).total
              for lam in (1.0, 5.0)]
    err = abs(totals[1] - totals[0]) / abs(totals[0])
    return err < 1e-10, err, 'I(U_{x,lambda}) at lambda = 1 and 5, K = 1'


@check('flat_energy_derivative')
def _flat_energy_derivative_(p, rng, config):
    cfg = TowerConfig(1, 1.0, (0.0,) * (p.N - 2), 5.0)
    report = denergy_dlambda(p, cfg, ConstantWeight(p.N))
    return report.fd == 0.0, report.fd, 'dI/dlambda = 0 for one bubble, K = 1, eps = 0'


@check('pohozaev_exact')
def _pohozaev_exact_(p, rng, config):
    q = ProblemParams(4, 0.5)
    u = RadialSum.single(np.array([0.0, 0.0, 0.5, 0.0]), bubble_profile(q, 1.0))
    K = ConstantWeight(4)
    region = HalfBallRegion((0.0, 0.0, 0.0, 0.0), 2.0)
    worst = max(pohozaev_translation(u, K, region, 3, q).relative,
                pohozaev_scaling(u, K, region, q).relative)
    return worst < 1e-2, worst, 'both identities on one bubble, N=4 s=1/2, K = 1'


@check('single_bubble_residual')
def _single_bubble_residual_(p, rng, config):
    q = ProblemParams(p.N, p.s)
    cfg = TowerConfig(1, 1.0, (0.0,) * (p.N - 2), 1.0)
    rf = ResidualField(q, cfg, ConstantWeight(p.N))
    pts = _points_(rng, tower_centers(cfg)[0], 1.0, 100)
    worst = float(np.max(np.abs(rf(pts))))
    scale = bubble_constant(p.N, p.s) ** q.critical_power
    return worst <= 1e-12 * scale, worst, 'l = 0 for one bubble, K = 1, eps = 0'


@check('residual_split')
def _residual_split_(p, rng, config):
    K = _weight_(config)
    cfg = TowerConfig(3, K.r0, tuple(K.y0_pp), 5.0)
    pts = _points_(rng, tower_centers(cfg)[0], 0.5, 100)
    flat = ResidualField(p, cfg, K)
    if np.any(flat.split(pts)[0] != 0.0):
        return False, None, 'J1 must vanish at eps = 0'
    pe = ProblemParams(p.N, p.s, 1e-3)
    rf = ResidualField(pe, cfg, K)
    U = rf.bubbles(pts)
    direct = K(pts) * U.sum(axis=0) ** pe.power - np.sum(U ** pe.critical_power, axis=0)
    err = _relative_(sum(rf.split(pts)), direct)
    return err < 1e-10, err, 'J1 + J2 + J3 against K Z^p - sum U^(2*-1)'


@check('superadditivity')
def _superadditivity_(p, rng, config):
    cfg = _tower_(p, 4)
    rf = ResidualField(p, cfg, ConstantWeight(p.N))
    pts = _points_(rng, tower_centers(cfg)[0], 1.0, 200)
    U = rf.bubbles(pts)
    gap = util.power_excess(U, p.critical_power)
    scale = np.sum(U ** p.critical_power, axis=0)
    worst = float(np.min(gap / scale))
    return worst >= -1e-12, worst, '(sum U_j)^(2*-1) >= sum U_j^(2*-1)'


@check('splitting_bound')
def _splitting_bound_(p, rng, config):
    sup = sampled_b1_sup(p.N, draws=50, seed=config.seed)
    return sup < 8.0, sup, 'sampled ratio below 2^3'


@check('convolution_origin')
def _convolution_origin_(p, rng, config):
    delta = 0.5 * p.decay
    ratio = lemma_b2_ratio(p.N, p.s, delta, np.zeros(p.N))
    exact = sphere_area(p.N) * special.beta(2.0 * p.s, delta)
    err = abs(ratio - exact) / exact
    return err < 1e-4, err, '|S^(N-1)| B(2s, delta) at y = 0'


@check('single_bubble_norm')
def _single_bubble_norm_(p, rng, config):
    cfg = TowerConfig(1, 1.0, (0.0,) * (p.N - 2), 1.0)
    grid = SampleGrid.standard(p, cfg, far_points=0, seed=config.seed)
    report = norm_star(bubble_profile_sum(p, cfg), p, cfg, grid)
    dense = single_bubble_norm(p)
    ok = 0.9 * dense <= report.value <= dense * (1.0 + 1e-6)
    return ok, report.value, 'grid maximum against radial maximum {0!r}'.format(dense)


@check('norm_homogeneity')
def _norm_homogeneity_(p, rng, config):
    cfg = _tower_(p, 3)
    grid = SampleGrid.standard(p, cfg, far_points=100, seed=config.seed)
    u = bubble_profile_sum(p, cfg)
    base = norm_star(u, p, cfg, grid).value
    scaled = norm_star(u * -2.5, p, cfg, grid).value
    zero = norm_star(lambda pts: np.zeros(len(pts)), p, cfg, grid).value
    err = abs(scaled - 2.5 * base) / base
    return err < 1e-12 and zero == 0.0, err, '||c u||_* = |c| ||u||_* and ||0||_* = 0'


@check('config_round_trip')
def _config_round_trip_(p, rng, config):
    again = RunConfig.from_string(config.echo())
    return again == config, config.params_hash(), 'echo parses back to an equal configuration'


@check('table_round_trip')
def _table_round_trip_(p, rng, config):
    table = ResultTable([[1, 0.1, None, 'x'], [2, math.pi, 1e-300, 'y']], ['a', 'b', 'c', 'd'])
    out = io.StringIO()
    write_table(table, out, '# selftest')
    back = read_table(io.StringIO(out.getvalue()))
    ok = back.columns == table.columns and [list(r) for r in back] == [list(r) for r in table]
    return ok, len(back), 'write_table then read_table'


def _run_(name, f, p, config):
    rng = np.random.default_rng(config.seed)
    try:
        ok, value, detail = f(p, rng, config)
    except Exception as e:
        logger.error('check %s raised %s: %s', name, type(e).__name__, e)
        return [name, FAIL, None, '{0}: {1}'.format(type(e).__name__, e)]
    if not ok:
        logger.error('check %s failed: %s (value %r)', name, detail, value)
    return [name, PASS if ok else FAIL, value, detail]


@tabulated
def cmd_selftest(config):
    """
    Run every registered check with the problem of the configuration.

    The table's 'failures' property counts the failed checks.

    """
    p = config.problem_params(eps=0.0)
    rows = [_run_(name, f, p, config) for name, f in CHECKS]
    failures = sum(1 for row in rows if row[1] == FAIL)
    logger.info('selftest: %d of %d checks passed', len(rows) - failures, len(rows))
    return ResultTable(rows, SELFTEST_COLUMNS, properties=dict(failures=failures))

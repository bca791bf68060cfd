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
Solver for the reduced finite-dimensional system

    grad_(rbar, ybar'') K = 0,
    -B1/t^3 + B3/t^{N-2s+1} = 0,

with the sign data on the faces of the search box that stand in for the
degree argument.

"""

import logging
import math
from collections import namedtuple

import numpy as np

from towerbench.util import NumericalError
from towerbench.reduction.constants import reduced_constants


logger = logging.getLogger(__name__)

DEFAULT_T_BOX = (0.05, 20.0)
DEFAULT_HALFWIDTH = 0.1
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100

#smallest backtracking factor of the damped Newton step
MIN_DAMPING = 1.0 / 1024


class NoRootError(NumericalError):
    """Newton iteration did not converge inside the box."""
    pass


class WindowError(NumericalError):
    """The closed-form root lies outside the t-window; adjust L0, L1 or the box."""
    pass


ReducedSolution = namedtuple(
    'ReducedSolution',
    't_star t_closed_form rbar_star ybar_star residual residual_norm '
    'B1 B2 B3 boundary_signs boundary_sign_ok iterations')

SearchBox = namedtuple('SearchBox', 't_min t_max lower upper')


def balance(t, B1, B3, a):
    """-B1/t^3 + B3/t^{a+1}."""
    return -B1 / t ** 3 + B3 / t ** (a + 1.0)


def closed_form_t(B1, B3, a):
    """t_cf = (B3/B1)^{1/(a-2)}, the unique positive root of balance()."""
    return (B3 / B1) ** (1.0 / (a - 2.0))


def default_box(K, t_box=DEFAULT_T_BOX, halfwidth=DEFAULT_HALFWIDTH):
    """The t-window times the cube of the given half-width about (r0, y0'')."""
    v0 = K.v0
    return SearchBox(float(t_box[0]), float(t_box[1]), v0 - halfwidth, v0 + halfwidth)


def newton_t(B1, B3, a, t0, box, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """
    Newton's method for h(tau) = B1 e^{(a-2) tau} - B3 with tau = log t, the
    balance equation multiplied by t^{a+1}.

    h is monotone and convex in tau, so Newton converges from any start;
    iterates are kept inside the box.

    Returns:
        (t, iterations)

    """
    lo, hi = math.log(box.t_min), math.log(box.t_max)
    tau = min(max(math.log(t0), lo), hi)
    k = a - 2.0
    for it in range(1, max_iter + 1):
        e = math.exp(k * tau)
        h = B1 * e - B3
        step = h / (B1 * k * e)
        new = min(max(tau - step, lo), hi)
        if new != tau - step:
            logger.debug('t-step clipped to the box at iteration %d', it)
        if abs(new - tau) <= tol * max(1.0, abs(tau)):
            return math.exp(new), it
        tau = new
    raise NoRootError('t-iteration did not converge in {0} steps'.format(max_iter))


def newton_v(K, v_start, box, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """
    Damped Newton for grad_v K = 0 on the box [lower, upper], with
    backtracking on the residual norm and projection onto the box.

    Returns:
        (v, iterations)

    """
    v = np.clip(np.asarray(v_start, dtype=float), box.lower, box.upper)
    g = K.grad_v(v)
    for it in range(1, max_iter + 1):
        norm = np.linalg.norm(g)
        if norm <= tol:
            return v, it - 1
        try:
            step = np.linalg.solve(K.hess_v(v), g)
        except np.linalg.LinAlgError:
            raise NoRootError('singular Hessian of K at {0}'.format(v.tolist()))
        damping = 1.0
        while True:
            trial = np.clip(v - damping * step, box.lower, box.upper)
            g_trial = K.grad_v(trial)
            if np.linalg.norm(g_trial) < norm or damping <= MIN_DAMPING:
                break
            damping *= 0.5
        if np.any(trial != v - damping * step):
            logger.warning('Newton step for grad K hit the box boundary at iteration %d', it)
        if np.linalg.norm(g_trial) >= norm and damping <= MIN_DAMPING:
            raise NoRootError('damped Newton for grad K stalled at {0}'.format(v.tolist()))
        v, g = trial, g_trial
    if np.linalg.norm(g) <= tol:
        return v, max_iter
    raise NoRootError('Newton for grad K did not converge in {0} steps'.format(max_iter))


def system(K, t, v, B1, B3, a):
    """F(t, v) = (balance(t), grad_v K(v))."""
    return np.concatenate([[balance(t, B1, B3, a)], K.grad_v(v)])


def boundary_signs(K, box, B1, B3, a):
    """
    Signs of each component of F at the midpoints of the two opposite
    faces of the box in that component's own variable.

    Returns:
        A list of (sign_low, sign_high) pairs, balance first.

    """
    v_mid = 0.5 * (box.lower + box.upper)
    signs = [(int(np.sign(balance(box.t_min, B1, B3, a))),
              int(np.sign(balance(box.t_max, B1, B3, a))))]
    for i in range(len(v_mid)):
        low, high = v_mid.copy(), v_mid.copy()
        low[i] = box.lower[i]
        high[i] = box.upper[i]
        signs.append((int(np.sign(K.grad_v(low)[i])), int(np.sign(K.grad_v(high)[i]))))
    return signs


def solve_reduced(p, K, box=None, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER,
                  constants=None, q=None, start=None):
    """
    Solve the reduced system inside the box.

    Args:
        * p: ProblemParams.
        * K: WeightField.
        * box: SearchBox; defaults to default_box(K).
        * tol, max_iter: Newton controls.
        * constants: precomputed Constants(B1, B2, B3); computed from p
          and K with reduced_constants() when omitted.
        * q: QuadratureSpec for the constants.
        * start: optional (t, v) start; defaults to the box center.

    Returns:
        ReducedSolution.

    Raises WindowError when the closed-form t lies outside the window and
    NoRootError when an iteration fails.

    """
    a = p.decay
    if constants is None:
        constants = reduced_constants(p, K, q=q)
    B1, B2, B3 = constants
    if not (B1 > 0 and B3 > 0):
        raise NumericalError('B1 and B3 must be positive, got {0}, {1}'.format(B1, B3))
    box = box or default_box(K)
    t_cf = closed_form_t(B1, B3, a)
    if not box.t_min <= t_cf <= box.t_max:
        raise WindowError('closed-form root t={0:.6g} is outside [{1}, {2}]; '
                          'adjust the t-window or L0, L1'.format(t_cf, box.t_min, box.t_max))

    if start is None:
        t0 = math.sqrt(box.t_min * box.t_max)
        v0 = 0.5 * (box.lower + box.upper)
    else:
        t0, v0 = start
    t_star, it_t = newton_t(B1, B3, a, t0, box, tol, max_iter)
    v_star, it_v = newton_v(K, v0, box, tol, max_iter)

    residual = system(K, t_star, v_star, B1, B3, a)
    # balance scaled by t^{a+1} / B3, the form Newton solves
    scaled = residual.copy()
    scaled[0] *= t_star ** (a + 1.0) / B3
    signs = boundary_signs(K, box, B1, B3, a)
    sign_ok = all(lo * hi < 0 for lo, hi in signs)
    if not sign_ok:
        logger.warning('boundary signs do not certify a sign change in every component: %s', signs)
    logger.info('reduced root t*=%.12g (closed form %.12g), v*=%s', t_star, t_cf, v_star.tolist())
    return ReducedSolution(t_star, t_cf, float(v_star[0]), tuple(float(x) for x in v_star[1:]),
                           tuple(float(x) for x in residual), float(np.linalg.norm(scaled)),
                           B1, B2, B3, signs, sign_ok, max(it_t, it_v))

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
The two local Pohozaev identities of the extended problem on a half
ball B+ = {(y, t): |(y, t) - (y0, 0)| < rho, t > 0}, evaluated term by
term by quadrature.

For a solution u of (-Delta)^s u = K u^{q-1} with extension u~ the
translation identity in the direction y_i reads

    d_s int_{hemisphere} t^{1-2s} (d_nu u~ d_i u~ - 1/2 |grad u~|^2 nu_i)
      + 1/q int_{dB} K u^q nu_i - 1/q int_B d_i K u^q = 0

and the scaling identity, with positions measured from the center,

    d_s rho int_{hemisphere} t^{1-2s} ((d_nu u~)^2 - 1/2 |grad u~|^2)
      + d_s (N-2s)/2 int_{B+} t^{1-2s} |grad u~|^2
      + rho/q int_{dB} K u^q - N/q int_B K u^q
      - 1/q int_B <grad K, y - y0> u^q = 0.

Here B and dB are the flat ball and its boundary sphere in R^N, and
q = 2*_s + sign eps.

"""

import logging
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from towerbench import util
from towerbench.util import NumericalError
from towerbench.bubble import DirectionError
from towerbench.problem import extension_constant
from towerbench.profiles import RadialSum
from towerbench.quadrature import DEFAULT_SPEC, gauss_jacobi, sphere_rule
from towerbench.operators.extension import ExtensionField


logger = logging.getLogger(__name__)

#largest power in the substitution u = v^Q of the hemisphere height
MAX_SUBSTITUTION = 4.0

#largest relative change of the residual under refinement
REFINEMENT_TOLERANCE = 1e-2

TRANSLATION_TERMS = ('hemisphere_flux', 'hemisphere_gradient', 'sphere', 'volume_k')
SCALING_TERMS = ('hemisphere_flux', 'hemisphere_gradient', 'dirichlet', 'sphere',
                 'volume_energy', 'volume_k')


class ConvergenceError(NumericalError):
    """The identity residual changed too much under refinement."""
    pass


@dataclass(frozen=True)
class HalfBallRegion(object):
    """The half ball of radius rho about (center, 0)."""
    center: tuple
    radius: float

    def __post_init__(self):
        object.__setattr__(self, 'center', tuple(float(c) for c in self.center))
        if not self.radius > 0:
            raise ValueError('half-ball radius must be positive, got {0}'.format(self.radius))

    @property
    def dim(self):
        return len(self.center)

    def translated(self, shift):
        return HalfBallRegion(tuple(np.asarray(self.center) + np.asarray(shift, dtype=float)),
                              self.radius)


PohozaevReport = namedtuple('PohozaevReport', 'identity terms residual relative nodes')


#############################################################
# rules on the unit half ball
#############################################################

def substitution_power(s):
    """Q = 1/|1-2s| clamped to [1, 4]; 1 for s = 1/2."""
    gap = abs(1.0 - 2.0 * s)
    if gap == 0.0:
        return 1.0
    return min(max(1.0 / gap, 1.0), MAX_SUBSTITUTION)


def hemisphere_rule(N, s, q=None, axis=None):
    """
    Rule for int u^{1-2s} f dS over the unit upper hemisphere of R^{N+1},
    with u the height.

    The height u = v^Q moves the weight u^{1-2s} into a Gauss-Jacobi rule
    in v; directions come from sphere_rule() about 'axis'.

    Returns:
        (points, heights, weights): points of shape (P, N), heights and
        weights of shape (P,).

    """
    q = q or DEFAULT_SPEC
    Q = substitution_power(s)
    alpha = (N - 2.0) / 2.0
    beta = Q * (1.0 - abs(1.0 - 2.0 * s)) - 1.0
    v, wv = gauss_jacobi(q.height_nodes, alpha, beta, 0.0, 1.0)
    u = v ** Q
    h = (1.0 - v ** (2.0 * Q)) / (1.0 - v)
    wu = wv * Q * v ** (Q * (2.0 - 2.0 * s) - 1.0 - beta) * h ** alpha
    dirs, dw = sphere_rule(N, 2 * q.sphere_nodes, q.sphere_nodes, axis)
    radial = np.sqrt(1.0 - u * u)
    points = (radial[:, None, None] * dirs[None, :, :]).reshape(-1, N)
    heights = np.repeat(u, len(dirs))
    weights = (wu[:, None] * dw[None, :]).ravel()
    return points, heights, weights


def _axis_(N, index):
    if index is None:
        return None
    axis = np.zeros(N)
    axis[index - 1] = 1.0
    return axis


def hemisphere_quadrature(g, region, s, q=None, axis=None):
    """
    int t^{1-2s} g(y, t) dS over the upper hemisphere of the region.

    Args:
        * g: vectorized callable of points y (P, N) and heights t (P,).
        * region: HalfBallRegion.
        * s: fractional order.
        * q: QuadratureSpec; height_nodes and sphere_nodes are used.
        * axis: unit vector of the polar axis of the direction rule;
          defaults to e_1.

    """
    N = region.dim
    rho = region.radius
    pts, heights, w = hemisphere_rule(N, s, q, axis)
    y = np.asarray(region.center) + rho * pts
    values = np.asarray(g(y, rho * heights), dtype=float)
    if not np.all(np.isfinite(values)):
        raise NumericalError('hemisphere integrand is not finite')
    return rho ** (N + 1.0 - 2.0 * s) * float(np.sum(w * values))


def half_ball_quadrature(g, region, s, q=None, axis=None):
    """int_{B+} t^{1-2s} g(y, t) dy dt, radius by Gauss-Jacobi with R^{N+1-2s}."""
    q = q or DEFAULT_SPEC
    N = region.dim
    R, wR = gauss_jacobi(q.ball_nodes, 0.0, N + 1.0 - 2.0 * s, 0.0, region.radius)
    pts, heights, w = hemisphere_rule(N, s, q, axis)
    center = np.asarray(region.center)
    y = (center + R[:, None, None] * pts[None, :, :]).reshape(-1, N)
    t = (R[:, None] * heights[None, :]).ravel()
    values = np.asarray(g(y, t), dtype=float).reshape(len(R), len(w))
    return float(np.sum(wR * values.dot(w)))


def ball_quadrature(f, region, q=None, axis=None):
    """int f over the flat ball B in R^N."""
    q = q or DEFAULT_SPEC
    N = region.dim
    r, wr = gauss_jacobi(q.ball_nodes, 0.0, N - 1.0, 0.0, region.radius)
    dirs, dw = sphere_rule(N, 2 * q.sphere_nodes, q.sphere_nodes, axis)
    center = np.asarray(region.center)
    y = (center + r[:, None, None] * dirs[None, :, :]).reshape(-1, N)
    values = np.asarray(f(y), dtype=float).reshape(len(r), len(dw))
    return float(np.sum(wr * values.dot(dw)))


def sphere_quadrature(f, region, q=None, axis=None):
    """int f over the sphere dB in R^N."""
    q = q or DEFAULT_SPEC
    N = region.dim
    rho = region.radius
    dirs, dw = sphere_rule(N, 2 * q.sphere_nodes, q.sphere_nodes, axis)
    values = np.asarray(f(np.asarray(region.center) + rho * dirs), dtype=float)
    return rho ** (N - 1.0) * float(np.sum(dw * values))


#############################################################
# identities
#############################################################

def _report_(identity, terms, nodes):
    residual = float(sum(terms.values()))
    scale = max(abs(v) for v in terms.values())
    relative = abs(residual) / scale if scale > 0 else 0.0
    return PohozaevReport(identity, terms, residual, relative, nodes)


def _nodes_(q, N):
    dirs = len(sphere_rule(N, 2 * q.sphere_nodes, q.sphere_nodes)[1])
    return dict(height=q.height_nodes, directions=dirs, ball=q.ball_nodes)


def _field_(u, s, q):
    if not isinstance(u, RadialSum):
        raise TypeError('Pohozaev identities need a RadialSum base, got {0!r}'.format(u))
    return ExtensionField(u, s, u.dim, q)


def _axis_toward_(u, region):
    """Unit vector from the region center to the nearest term center of u."""
    center = np.asarray(region.center)
    offsets = [t.center - center for t in u.terms]
    nearest = min(offsets, key=np.linalg.norm)
    norm = np.linalg.norm(nearest)
    return nearest / norm if norm > 0 else None


def _hemisphere_values_(field, region, s, q, axis):
    """Points, heights, weights and (grad_y u~, d_t u~) on the hemisphere."""
    N = region.dim
    rho = region.radius
    pts, heights, w = hemisphere_rule(N, s, q, axis)
    y = np.asarray(region.center) + rho * pts
    t = rho * heights
    ev = field.evaluate(y, t)
    return y, t, w * rho ** (N + 1.0 - 2.0 * s), ev.grad, ev.dt


def _translation_(u, K, region, i, p, q):
    N, s = p.N, p.s
    power = p.energy_power
    ds = extension_constant(s)
    field = _field_(u, s, q)
    center = np.asarray(region.center)
    rho = region.radius
    axis = _axis_(N, i)

    y, t, w, grad, dt = _hemisphere_values_(field, region, s, q, axis)
    d_nu = (np.sum(grad * (y - center), axis=1) + dt * t) / rho
    square = np.sum(grad * grad, axis=1) + dt * dt
    nu_i = (y[:, i - 1] - center[i - 1]) / rho

    def sphere(x):
        return K(x) * util.log_power(u(x), power) * (x[:, i - 1] - center[i - 1]) / rho

    def volume(x):
        return np.atleast_2d(K.grad(x))[:, i - 1] * util.log_power(u(x), power)

    terms = dict(
        hemisphere_flux=ds * float(np.sum(w * d_nu * grad[:, i - 1])),
        hemisphere_gradient=-0.5 * ds * float(np.sum(w * square * nu_i)),
        sphere=sphere_quadrature(sphere, region, q, axis) / power,
        volume_k=-ball_quadrature(volume, region, q, axis) / power)
    return _report_('translation', terms, _nodes_(q, N))


def _scaling_(u, K, region, p, q):
    N, s = p.N, p.s
    power = p.energy_power
    ds = extension_constant(s)
    field = _field_(u, s, q)
    center = np.asarray(region.center)
    rho = region.radius
    axis = _axis_toward_(u, region)

    y, t, w, grad, dt = _hemisphere_values_(field, region, s, q, axis)
    d_nu = (np.sum(grad * (y - center), axis=1) + dt * t) / rho
    square = np.sum(grad * grad, axis=1) + dt * dt

    def dirichlet(x, h):
        ev = field.evaluate(x, h)
        return np.sum(ev.grad * ev.grad, axis=1) + ev.dt * ev.dt

    def energy(x):
        return K(x) * util.log_power(u(x), power)

    def volume(x):
        grad_k = np.atleast_2d(K.grad(x))
        return np.sum(grad_k * (x - center), axis=1) * util.log_power(u(x), power)

    terms = dict(
        hemisphere_flux=ds * rho * float(np.sum(w * d_nu ** 2)),
        hemisphere_gradient=-0.5 * ds * rho * float(np.sum(w * square)),
        dirichlet=ds * (N - 2.0 * s) / 2.0 * half_ball_quadrature(dirichlet, region, s, q, axis),
        sphere=rho / power * sphere_quadrature(energy, region, q, axis),
        volume_energy=-N / power * ball_quadrature(energy, region, q, axis),
        volume_k=-ball_quadrature(volume, region, q, axis) / power)
    return _report_('scaling', terms, _nodes_(q, N))


def _checked_(compute, q, check):
    report = compute(q)
    if not check:
        return report
    fine = compute(q.refined())
    scale = max(max(abs(v) for v in fine.terms.values()), util.UNDERFLOW)
    change = abs(fine.residual - report.residual) / scale
    logger.info('%s identity: residual %.3g -> %.3g under refinement', report.identity,
                report.residual, fine.residual)
    if change > REFINEMENT_TOLERANCE:
        raise ConvergenceError('{0} identity residual changed by {1:.3g} of the term scale '
                               'under refinement'.format(report.identity, change))
    return fine


def pohozaev_translation(u, K, region, i, p, q=None, check=False):
    """
    Terms of the translation identity in the direction y_i.

    Args:
        * u: the candidate solution as a RadialSum.
        * K: the weight; needs value and grad.
        * region: HalfBallRegion.
        * i: 1-based coordinate index, 3 <= i <= N.
        * p: ProblemParams; gives s and q = 2*_s + sign eps.
        * q: QuadratureSpec.
        * check: repeat with refined nodes and raise ConvergenceError when
          the residual moves by more than 1e-2 of the largest term.

    Returns:
        PohozaevReport with terms 'hemisphere_flux', 'hemisphere_gradient',
        'sphere' and 'volume_k'.

    """
    if not 3 <= i <= p.N:
        raise DirectionError('translation index must be in 3..{0}, got {1}'.format(p.N, i))
    q = q or DEFAULT_SPEC
    return _checked_(lambda spec: _translation_(u, K, region, i, p, spec), q, check)


def pohozaev_scaling(u, K, region, p, q=None, check=False):
    """
    Terms of the scaling identity; see pohozaev_translation().

    Returns:
        PohozaevReport with terms 'hemisphere_flux', 'hemisphere_gradient',
        'dirichlet', 'sphere', 'volume_energy' and 'volume_k'.

    """
    q = q or DEFAULT_SPEC
    return _checked_(lambda spec: _scaling_(u, K, region, p, spec), q, check)

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
The extension of a function to the upper half-space,

    u~(y, t) = int P_s(y - xi, t) u(xi) dxi,
    P_s(y, t) = beta(N, s) t^{2s} / (|y|^2 + t^2)^{(N+2s)/2},

and its weighted Neumann trace

    -d_s lim_{t -> 0} t^{1-2s} d/dt u~(y, t) = (-Delta)^s u(y).

In spherical coordinates about y the convolution is a one-dimensional
integral of spherical means of u against the radial kernel. For a
RadialSum every term contributes a function of (|y - c|, t) only, which
is evaluated once per distinct pair.

"""

import logging
from collections import namedtuple

import numpy as np
from scipy import special

from towerbench import util
from towerbench.util import NumericalError
from towerbench.problem import extension_constant, kernel_constant, sphere_area
from towerbench.profiles import RadialSum, spherical_means, zonal_means
from towerbench.quadrature import DEFAULT_SPEC, gauss_jacobi, gauss_legendre, log_panels
from towerbench.operators.fractional import decay_rate


logger = logging.getLogger(__name__)

#ladder t_k = FLUX_START * l * 2^-k, k = 0..FLUX_STEPS-1
FLUX_START = 0.1
FLUX_STEPS = 7
FLUX_TOLERANCE = 1e-2

#relative rounding of (d, t) keys when sharing work between points
KEY_DIGITS = 10


class DomainError(NumericalError, ValueError):
    """Extension evaluated at a height t <= 0."""
    pass


class FluxError(NumericalError):
    """The t -> 0 extrapolation of the weighted flux did not settle."""
    pass


ExtensionValues = namedtuple('ExtensionValues', 'value dt grad')
Harmonicity = namedtuple('Harmonicity', 'residual scale relative')


def kernel_normalization(N, s, q=None):
    """
    beta(N, s) from the normalization int P_s(y, 1) dy = 1.

    With x = r^2/(1 + r^2) the radial integral becomes one half of a
    Jacobi-weighted integral of 1 on [0, 1], which the Gauss-Jacobi rule
    integrates exactly.

    """
    q = q or DEFAULT_SPEC
    _, w = gauss_jacobi(q.radial_nodes, s - 1.0, N / 2.0 - 1.0, 0.0, 1.0)
    return 1.0 / (sphere_area(N) * 0.5 * w.sum())


def kernel_mass(N, s, t, q=None, beta=None):
    """
    int P_s(y, t) dy over R^N by composite quadrature in the radius.

    Independent of kernel_normalization(): geometric panels from 0 to
    R t and the leading-order tail beyond.

    """
    q = q or DEFAULT_SPEC
    if not t > 0:
        raise DomainError('kernel_mass needs t > 0, got {0}'.format(t))
    beta = beta if beta is not None else kernel_normalization(N, s, q)
    lo = q.inner_split * t
    hi = q.truncation_radius * t
    near_r, near_w = gauss_jacobi(q.radial_nodes, 0.0, N - 1.0, 0.0, lo)
    mid_r, mid_w = log_panels(lo, hi, q.panel_density, q.radial_nodes)

    def radial(r):
        return t ** (2.0 * s) * (r * r + t * t) ** (-(N + 2.0 * s) / 2.0)

    total = np.sum(near_w * radial(near_r)) + np.sum(mid_w * mid_r ** (N - 1.0) * radial(mid_r))
    total += t ** (2.0 * s) * hi ** (-2.0 * s) / (2.0 * s)
    return beta * sphere_area(N) * total


class ExtensionField(object):
    """
    The extension u~ of a base function u for the order s.

    Values and t-derivatives are available for any vectorized callable;
    y-gradients need a RadialSum base.

    Args:
        * base: a RadialSum, or a callable on points of shape (P, N).
        * s: fractional order.
        * N: dimension; taken from the base when it is a RadialSum.
        * q: QuadratureSpec.

    """
    def __init__(self, base, s, N=None, q=None):
        self.base = base
        self.s = float(s)
        self.q = q or DEFAULT_SPEC
        if N is None:
            N = getattr(base, 'dim', None)
        if N is None:
            raise ValueError('dimension N is required for callable bases')
        self.N = int(N)
        self.beta = kernel_normalization(self.N, self.s, self.q)
        closed = kernel_constant(self.N, self.s)
        if abs(self.beta - closed) > 1e-8 * closed:
            logger.warning('kernel normalization %.12g differs from closed form %.12g',
                           self.beta, closed)
        self._prefactor = self.beta * sphere_area(self.N)


    @property
    def length(self):
        return getattr(self.base, 'length', 1.0)


    def kernel(self, y, t):
        """P_s(y, t)."""
        pts, single = util.as_points(y, self.N)
        t = np.asarray(t, dtype=float)
        r2 = np.sum(pts ** 2, axis=1)
        val = self.beta * t ** (2.0 * self.s) * (r2 + t * t) ** (-(self.N + 2.0 * self.s) / 2.0)
        return util.squeeze(val, single)


    def _grid_(self, t, length, extent):
        q = self.q
        lo = q.inner_split * min(t, length)
        hi = q.truncation_radius * max(t, length) + extent
        r, w = log_panels(lo, hi, q.panel_density, q.radial_nodes)
        return lo, hi, r, w


    def _near_mass_(self, lo, t):
        """Share of the kernel mass on |xi - y| < lo."""
        x = lo * lo / (lo * lo + t * t)
        return (self._prefactor * 0.5 * special.beta(self.N / 2.0, self.s)
                * special.betainc(self.N / 2.0, self.s, x))


    def _radial_(self, means, gmeans, r, w, lo, hi, t):
        """
        Kernel integrals of radial means: value, t-derivative and, when
        gmeans is given, the d-derivative. The last two entries of the
        mean arrays are the values at hi/2 and hi.

        """
        N, s = self.N, self.s
        k = len(r)
        m0 = means[0]
        body, tail_means = means[1:k + 1], means[k + 1:]
        rr = r * r + t * t
        kern = t ** (2.0 * s) * r ** (N - 1.0) * rr ** (-(N + 2.0 * s) / 2.0)
        dkern = kern * (2.0 * s / t - (N + 2.0 * s) * t / rr)

        m_half, m_full = tail_means
        rate = max(decay_rate(abs(m_half), abs(m_full)), 0.0)
        tail_u = t ** (2.0 * s) * m_full * hi ** (-2.0 * s) / (2.0 * s + rate)
        tail_dt = 2.0 * s * t ** (2.0 * s - 1.0) * (
            -m0 * hi ** (-2.0 * s) / (2.0 * s) + m_full * hi ** (-2.0 * s) / (2.0 * s + rate))
        if self.q.tail_order < 1:
            tail_u = 0.0
            tail_dt = -t ** (2.0 * s - 1.0) * m0 * hi ** (-2.0 * s)

        value = (self._near_mass_(lo, t) * m0
                 + self._prefactor * (np.sum(w * kern * body) + tail_u))
        dt = self._prefactor * (np.sum(w * dkern * (body - m0)) + tail_dt)
        if gmeans is None:
            return value, dt, 0.0
        g0 = gmeans[0]
        gbody, (g_half, g_full) = gmeans[1:k + 1], gmeans[k + 1:]
        grate = max(decay_rate(abs(g_half), abs(g_full)), 0.0)
        tail_g = (t ** (2.0 * s) * g_full * hi ** (-2.0 * s) / (2.0 * s + grate)
                  if self.q.tail_order >= 1 else 0.0)
        dd = (self._near_mass_(lo, t) * g0
              + self._prefactor * (np.sum(w * kern * gbody) + tail_g))
        return value, dt, dd


    def _term_values_(self, profile, d, t):
        """Value, t- and d-derivative of the extension of one radial term."""
        lo, hi, r, w = self._grid_(t, profile.length, d)
        radii = np.concatenate([[0.0], r, [0.5 * hi, hi]])
        means, gmeans = zonal_means(profile, d, radii, self.N, self.q.angular_nodes, gradient=True)
        return self._radial_(means, gmeans, r, w, lo, hi, t)


    def _callable_values_(self, y, t):
        lo, hi, r, w = self._grid_(t, self.length, 0.0)
        radii = np.concatenate([[0.0], r, [0.5 * hi, hi]])
        means = spherical_means(self.base, y, radii, self.q)
        means[0] = float(np.atleast_1d(self.base(y[None, :]))[0])
        return self._radial_(means, None, r, w, lo, hi, t)


    def evaluate(self, y, t):
        """
        u~, d/dt u~ and the y-gradient of u~ at points (y, t).

        Args:
            * y: points of shape (P, N) or a single point.
            * t: heights, shape (P,) or a scalar; all must be positive.

        Returns:
            ExtensionValues(value, dt, grad); grad has shape (P, N) and is
            None for callable bases.

        """
        pts, single = util.as_points(y, self.N)
        t = np.broadcast_to(np.asarray(t, dtype=float), (len(pts),)).copy()
        if np.any(~(t > 0)):
            raise DomainError('extension evaluated at t <= 0')
        value = np.zeros(len(pts))
        dt = np.zeros(len(pts))
        if not isinstance(self.base, RadialSum):
            for i, (yi, ti) in enumerate(zip(pts, t)):
                value[i], dt[i], _ = self._callable_values_(yi, ti)
            if single:
                return ExtensionValues(float(value[0]), float(dt[0]), None)
            return ExtensionValues(value, dt, None)

        grad = np.zeros_like(pts)
        for term in self.base.terms:
            diff = pts - term.center
            d = np.sqrt(np.sum(diff ** 2, axis=1))
            scale = term.profile.length
            keys = np.round(np.column_stack([d, t]) / scale, KEY_DIGITS)
            uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
            inverse = np.ravel(inverse)
            vals = np.array([self._term_values_(term.profile, kd * scale, kt * scale)
                             for kd, kt in uniq])
            vals = vals[inverse]
            value += term.coef * vals[:, 0]
            dt += term.coef * vals[:, 1]
            with np.errstate(invalid='ignore', divide='ignore'):
                unit = np.where(d[:, None] > 0, diff / np.where(d > 0, d, 1.0)[:, None], 0.0)
            grad += term.coef * vals[:, 2][:, None] * unit
        if single:
            return ExtensionValues(float(value[0]), float(dt[0]), grad[0])
        return ExtensionValues(value, dt, grad)


    def __call__(self, y, t):
        return self.evaluate(y, t).value


def poisson_extend(e, y, t, q=None):
    """
    u~(y, t) for the ExtensionField e.

    Args:
        * e: ExtensionField.
        * y: a point or an array of points.
        * t: height(s), > 0.
        * q: optional QuadratureSpec replacing the field's own.

    """
    if q is not None and q != e.q:
        e = ExtensionField(e.base, e.s, e.N, q)
    return e.evaluate(y, t).value


def _flux_fit_(ts, g, s):
    design = np.column_stack([np.ones_like(ts), ts ** (2.0 - 2.0 * s), ts ** 2])
    coef, _, _, _ = np.linalg.lstsq(design, g, rcond=None)
    return coef[0]


def extension_flux(e, y, q=None):
    """
    -d_s lim_{t -> 0} t^{1-2s} d/dt u~(y, t).

    g(t) = -d_s t^{1-2s} d/dt u~ is sampled on t_k = 0.1 l 2^{-k},
    k = 0..6, and extrapolated to t = 0 by least squares with the basis
    {1, t^{2-2s}, t^2} of the boundary expansion. The extrapolations from
    the first six and the last six heights must agree to 1e-2.

    Args:
        * e: ExtensionField.
        * y: the point.
        * q: optional QuadratureSpec replacing the field's own.

    Returns:
        The extrapolated flux, which equals (-Delta)^s u(y).

    """
    if q is not None and q != e.q:
        e = ExtensionField(e.base, e.s, e.N, q)
    y = np.asarray(y, dtype=float)
    s = e.s
    ts = FLUX_START * e.length * 2.0 ** (-np.arange(FLUX_STEPS))
    dt = e.evaluate(np.tile(y, (FLUX_STEPS, 1)), ts).dt
    g = -extension_constant(s) * ts ** (1.0 - 2.0 * s) * dt
    upper = _flux_fit_(ts[:-1], g[:-1], s)
    lower = _flux_fit_(ts[1:], g[1:], s)
    if abs(upper - lower) > FLUX_TOLERANCE * max(abs(lower), util.UNDERFLOW):
        raise FluxError('flux extrapolation at {0} unstable: {1:.6g} vs {2:.6g}'.format(
            y.tolist(), upper, lower))
    return float(_flux_fit_(ts, g, s))


def weighted_harmonicity(e, y, t, h=None):
    """
    Finite-difference residual of div(t^{1-2s} grad u~) at (y, t).

    The residual is t^{1-2s} (Delta_y u~ + u~_tt) + (1-2s) t^{-2s} u~_t;
    'scale' is the sum of the magnitudes of those three terms.

    Args:
        * e: ExtensionField.
        * y: the point.
        * t: height, > 2h.
        * h: step; defaults to 1e-2 times the base length.

    Returns:
        Harmonicity(residual, scale, relative).

    """
    y = np.asarray(y, dtype=float)
    N, s = e.N, e.s
    h = h if h is not None else 1e-2 * e.length
    if not t > 2.0 * h:
        raise DomainError('need t > 2h for the finite-difference stencil, got t={0}, h={1}'.format(t, h))
    shifts = np.vstack([np.zeros(N), np.eye(N) * h, -np.eye(N) * h, np.zeros((2, N))])
    heights = np.full(len(shifts), float(t))
    heights[-2] = t + h
    heights[-1] = t - h
    vals = e.evaluate(y + shifts, heights).value
    center = vals[0]
    lap_y = np.sum(vals[1:N + 1] + vals[N + 1:2 * N + 1] - 2.0 * center) / h ** 2
    u_tt = (vals[-2] + vals[-1] - 2.0 * center) / h ** 2
    u_t = (vals[-2] - vals[-1]) / (2.0 * h)
    weight = t ** (1.0 - 2.0 * s)
    terms = np.array([weight * lap_y, weight * u_tt, (1.0 - 2.0 * s) * t ** (-2.0 * s) * u_t])
    residual = float(terms.sum())
    scale = float(np.abs(terms).sum())
    return Harmonicity(residual, scale, abs(residual) / max(scale, util.UNDERFLOW))

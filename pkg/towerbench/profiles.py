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
Radially symmetric profiles and finite sums of them.

A profile is a function g of the squared distance q = |y - c|^2. The
bubble U_{x,lambda} is the power profile

    g(q) = C lambda^{(N-2s)/2} (1 + lambda^2 q)^{-(N-2s)/2},

and sums of shifted profiles (towers, their powers, test functions) are
RadialSum instances. Spherical means of a RadialSum reduce to one-
dimensional zonal integrals, which is what makes the singular-integral
and extension quadratures affordable.

"""

import logging
from collections import namedtuple

import numpy as np

from towerbench import util
from towerbench.quadrature import DEFAULT_SPEC, clustered_zonal, sphere_rule


logger = logging.getLogger(__name__)

#smallest clustering width in units of 1 + x
MIN_WIDTH = 1e-12

#points per batch for generic callables
CHUNK = 4096


class PowerProfile(namedtuple('PowerProfile', 'amp scale exponent')):
    """g(q) = amp (1 + scale^2 q)^(-exponent)."""
    __slots__ = ()

    def __call__(self, q):
        return self.amp * (1.0 + self.scale ** 2 * q) ** (-self.exponent)

    def derivative(self, q):
        return (-self.exponent * self.scale ** 2 * self.amp
                * (1.0 + self.scale ** 2 * q) ** (-self.exponent - 1.0))

    @property
    def decay(self):
        """Power-law decay exponent in |y - c|."""
        return 2.0 * self.exponent

    @property
    def length(self):
        return 1.0 / self.scale

    def power(self, exponent):
        """The profile g^exponent, again a PowerProfile."""
        return PowerProfile(self.amp ** exponent, self.scale, self.exponent * exponent)


class GaussianProfile(namedtuple('GaussianProfile', 'amp scale')):
    """g(q) = amp exp(-scale^2 q)."""
    __slots__ = ()

    def __call__(self, q):
        return self.amp * np.exp(-self.scale ** 2 * q)

    def derivative(self, q):
        return -self.scale ** 2 * self.amp * np.exp(-self.scale ** 2 * q)

    @property
    def decay(self):
        return np.inf

    @property
    def length(self):
        return 1.0 / self.scale


class DistanceProfile(namedtuple('DistanceProfile', 'amp exponent')):
    """g(q) = amp (1 + sqrt(q))^(-exponent), a power of 1 + |y - c|."""
    __slots__ = ()

    def __call__(self, q):
        return self.amp * (1.0 + np.sqrt(q)) ** (-self.exponent)

    def derivative(self, q):
        root = np.sqrt(np.maximum(q, util.UNDERFLOW))
        return -0.5 * self.exponent * self.amp * (1.0 + root) ** (-self.exponent - 1.0) / root

    @property
    def decay(self):
        return float(self.exponent)

    @property
    def length(self):
        return 1.0


Term = namedtuple('Term', 'coef center profile')


class RadialSum(object):
    """
    A finite sum of shifted radial profiles,

        f(y) = sum_k coef_k g_k(|y - c_k|^2).

    Supports addition and scalar multiplication, so linear combinations
    of sums are sums again.

    """
    def __init__(self, terms):
        self.terms = tuple(Term(float(c), np.asarray(x, dtype=float), g) for c, x, g in terms)
        if not self.terms:
            raise ValueError('a RadialSum needs at least one term')
        dims = set(len(t.center) for t in self.terms)
        if len(dims) != 1:
            raise ValueError('all centers must have the same dimension, got {0}'.format(sorted(dims)))
        self.dim = dims.pop()


    @classmethod
    def single(cls, center, profile, coef=1.0):
        return cls([(coef, center, profile)])


    def __call__(self, y):
        pts, single = util.as_points(y, self.dim)
        out = np.zeros(len(pts))
        for t in self.terms:
            q = np.sum((pts - t.center) ** 2, axis=1)
            out += t.coef * t.profile(q)
        return util.squeeze(out, single)


    def gradient(self, y):
        """The gradient in R^N, shape (N,) or (P, N)."""
        pts, single = util.as_points(y, self.dim)
        out = np.zeros_like(pts)
        for t in self.terms:
            diff = pts - t.center
            q = np.sum(diff ** 2, axis=1)
            out += (2.0 * t.coef * t.profile.derivative(q))[:, None] * diff
        return out[0] if single else out


    def __add__(self, other):
        return RadialSum(self.terms + other.terms)


    def __mul__(self, factor):
        return RadialSum([(factor * t.coef, t.center, t.profile) for t in self.terms])

    __rmul__ = __mul__


    def __neg__(self):
        return self * -1.0


    @property
    def length(self):
        """The smallest length scale among the terms."""
        return min(t.profile.length for t in self.terms)


    @property
    def decay(self):
        """The slowest decay exponent among the terms."""
        return min(t.profile.decay for t in self.terms)


    def extent(self, y):
        """Largest distance from y to a term center."""
        y = np.asarray(y, dtype=float)
        return max(float(np.linalg.norm(t.center - y)) for t in self.terms)


    def __repr__(self):
        return 'RadialSum({0} terms, N={1})'.format(len(self.terms), self.dim)


def clustering(length, d, radii):
    """
    Clustering strength for zonal means of a profile of the given
    length at distance d from the mean's center, one per radius.

    """
    radii = np.asarray(radii, dtype=float)
    dr = 2.0 * d * radii
    qmin = np.maximum((d - radii) ** 2, length ** 2)
    with np.errstate(divide='ignore'):
        width = np.where(dr > 0, qmin / np.where(dr > 0, dr, 1.0), np.inf)
    width = np.maximum(width, MIN_WIDTH)
    return np.log1p(2.0 / width)


def zonal_means(profile, d, radii, N, n, gradient=False):
    """
    Means of g(|z - c|^2) over spheres |z - y| = r, for |y - c| = d.

    Args:
        * profile: a profile object with __call__ and derivative.
        * d: distance from the sphere center y to the profile center c.
        * radii: array of sphere radii.
        * N: dimension, >= 3.
        * n: number of zonal nodes.
        * gradient: also return the mean of the gradient, projected on
          the unit vector (y - c)/d.

    Returns:
        The array of means, and with 'gradient' a second array.

    """
    radii = np.asarray(radii, dtype=float)
    one_plus, w = clustered_zonal(n, N, clustering(profile.length, d, radii))
    r = radii[:, None]
    q = (d - r) ** 2 + 2.0 * d * r * one_plus
    mean = np.sum(w * profile(q), axis=1)
    if not gradient:
        return mean
    along = d + r * (one_plus - 1.0)
    gmean = np.sum(w * 2.0 * profile.derivative(q) * along, axis=1)
    return mean, gmean


def callable_means(f, y, radii, rule):
    """
    Spherical means of a generic vectorized callable about y.

    Args:
        * f: maps points of shape (P, N) to values of shape (P,).
        * y: the sphere center.
        * radii: array of radii.
        * rule: (points, weights) from sphere_rule().

    """
    points, weights = rule
    weights = weights / weights.sum()
    y = np.asarray(y, dtype=float)
    radii = np.asarray(radii, dtype=float)
    out = np.empty(len(radii))
    per_chunk = max(1, CHUNK // len(points))
    for sl in util.chunks(len(radii), per_chunk):
        r = radii[sl]
        pts = (y[None, None, :] + r[:, None, None] * points[None, :, :]).reshape(-1, len(y))
        vals = np.asarray(f(pts), dtype=float).reshape(len(r), len(points))
        out[sl] = vals.dot(weights)
    return out


def spherical_means(f, y, radii, q=None):
    """
    Means of f over the spheres |z - y| = r.

    RadialSum instances use one-dimensional zonal rules; any other
    callable gets the product rule on the sphere.

    """
    q = q or DEFAULT_SPEC
    y = np.asarray(y, dtype=float)
    if isinstance(f, RadialSum):
        out = np.zeros(len(np.atleast_1d(radii)))
        for t in f.terms:
            d = float(np.linalg.norm(y - t.center))
            out += t.coef * zonal_means(t.profile, d, radii, f.dim, q.angular_nodes)
        return out
    rule = sphere_rule(len(y), q.angular_nodes, q.sphere_nodes)
    return callable_means(f, y, radii, rule)

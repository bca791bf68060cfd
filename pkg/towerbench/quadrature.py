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
Quadrature settings and the one-dimensional and spherical rules built
on scipy's Gauss nodes.

All rules return a pair (nodes, weights) of numpy arrays.

"""

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from scipy import special

from towerbench.util import NumericalError
from towerbench.problem import sphere_area


MIN_NODES = 4

_COUNT_FIELDS_ = ('radial_nodes', 'panel_density', 'angular_nodes',
                  'sphere_nodes', 'height_nodes', 'ball_nodes')


class QuadratureError(NumericalError, ValueError):
    """Invalid quadrature settings."""
    pass


@dataclass(frozen=True)
class QuadratureSpec(object):
    """
    Node counts and radii shared by every quadrature in the package.

    * radial_nodes: Gauss nodes per radial panel.
    * panel_density: radial panels per decade of radius.
    * angular_nodes: nodes of the zonal (polar-angle) rule.
    * sphere_nodes: nodes per angle of the product rule on S^{N-1}.
    * truncation_radius: radial cutoff R, in units of the profile length.
    * inner_split: radius r0 of the near-singularity panel, same units.
    * tail_order: 0 drops the far-field tail estimate, 1 adds the
      leading power-law tail.
    * height_nodes: nodes in the height variable of half-ball rules.
    * ball_nodes: radial nodes of ball and half-ball volume rules.

    """
    radial_nodes: int = 16
    panel_density: int = 4
    angular_nodes: int = 24
    sphere_nodes: int = 6
    truncation_radius: float = 1e3
    inner_split: float = 1e-2
    tail_order: int = 1
    height_nodes: int = 16
    ball_nodes: int = 12

    def __post_init__(self):
        for name in _COUNT_FIELDS_:
            value = getattr(self, name)
            if int(value) != value or value < MIN_NODES:
                raise QuadratureError('quadrature.{0} must be an integer >= {1}, got {2}'.format(
                    name, MIN_NODES, value))
            object.__setattr__(self, name, int(value))
        if not 0.0 < self.inner_split < self.truncation_radius:
            raise QuadratureError('need 0 < inner_split < truncation_radius, got {0}, {1}'.format(
                self.inner_split, self.truncation_radius))
        if self.tail_order not in (0, 1):
            raise QuadratureError('quadrature.tail_order must be 0 or 1, got {0}'.format(
                self.tail_order))

    def refined(self):
        """A copy with every node count doubled."""
        return replace(self, **dict((name, 2 * getattr(self, name)) for name in _COUNT_FIELDS_))


DEFAULT_SPEC = QuadratureSpec()


#############################################################
# one-dimensional rules
#############################################################

@lru_cache(maxsize=None)
def _legendre_(n):
    return special.roots_legendre(n)


@lru_cache(maxsize=None)
def _jacobi_(n, alpha, beta):
    return special.roots_jacobi(n, alpha, beta)


def gauss_legendre(n, a, b):
    """
    n-point Gauss-Legendre rule on [a, b].

    >>> x, w = gauss_legendre(4, 0.0, 2.0)
    >>> round(float(w.sum()), 12)
    2.0

    """
    x, w = _legendre_(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def gauss_jacobi(n, alpha, beta, a, b):
    """
    n-point Gauss rule on [a, b] for the weight (b - x)^alpha (x - a)^beta.

    The weight is part of the rule: sum(w * f(x)) approximates the
    weighted integral of f.

    Args:
        * n: number of nodes.
        * alpha, beta: exponents, both > -1.
        * a, b: interval ends.

    """
    if alpha <= -1 or beta <= -1:
        raise QuadratureError('Jacobi exponents must exceed -1, got {0}, {1}'.format(alpha, beta))
    x, w = _jacobi_(n, float(alpha), float(beta))
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half ** (alpha + beta + 1.0) * w


def log_panels(lo, hi, density, n):
    """
    Composite Gauss-Legendre rule on [lo, hi] with geometrically growing
    panels, 'density' panels per decade and n nodes per panel.

    """
    if not 0.0 < lo < hi:
        raise QuadratureError('log_panels needs 0 < lo < hi, got {0}, {1}'.format(lo, hi))
    count = max(1, int(math.ceil(density * math.log10(hi / lo))))
    edges = np.geomspace(lo, hi, count + 1)
    x, w = _legendre_(n)
    half = 0.5 * np.diff(edges)
    nodes = edges[:-1, None] + half[:, None] * (x[None, :] + 1.0)
    weights = half[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()


def split_panels(lo, hi, breaks, density, n):
    """
    log_panels over [lo, hi] with extra panel edges at 'breaks'.

    Breaks outside (lo, hi) are ignored.

    """
    edges = [lo] + sorted(b for b in breaks if lo < b < hi) + [hi]
    parts = [log_panels(a, b, density, n) for a, b in zip(edges[:-1], edges[1:])]
    return (np.concatenate([p[0] for p in parts]),
            np.concatenate([p[1] for p in parts]))


#############################################################
# spherical rules
#############################################################

@lru_cache(maxsize=None)
def zonal_rule(N, n):
    """
    Rule for zonal functions on S^{N-1}: nodes x in (-1, 1) and weights
    such that sum(w * f(x)) approximates the integral of f(<omega, e>)
    over the sphere. The weights sum to the sphere area.

    """
    x, w = special.roots_gegenbauer(n, (N - 2.0) / 2.0)
    return x, w * (sphere_area(N) / w.sum())


@lru_cache(maxsize=None)
def _sphere_points_(dim, polar_nodes, rest_nodes):
    if dim == 2:
        count = 2 * rest_nodes
        phi = 2.0 * math.pi * (np.arange(count) + 0.5) / count
        points = np.column_stack([np.cos(phi), np.sin(phi)])
        return points, np.full(count, 2.0 * math.pi / count)
    # level with Gegenbauer weight (1 - x^2)^{(dim - 3)/2}
    x, w = special.roots_gegenbauer(polar_nodes, (dim - 2.0) / 2.0)
    sub_points, sub_weights = _sphere_points_(dim - 1, rest_nodes, rest_nodes)
    radius = np.sqrt(1.0 - x * x)
    points = np.concatenate([
        np.column_stack([np.full(len(sub_points), xi), ri * sub_points])
        for xi, ri in zip(x, radius)])
    weights = np.concatenate([wi * sub_weights for wi in w])
    return points, weights


def _householder_(axis):
    e1 = np.zeros_like(axis)
    e1[0] = 1.0
    v = e1 - axis
    norm = np.dot(v, v)
    if norm < 1e-28:
        return np.eye(len(axis))
    return np.eye(len(axis)) - 2.0 * np.outer(v, v) / norm


def sphere_rule(N, polar_nodes, rest_nodes, axis=None):
    """
    Product rule on the unit sphere S^{N-1}.

    The first angle, measured from 'axis', uses 'polar_nodes' Gegenbauer
    nodes, every further polar angle 'rest_nodes' nodes, and the last
    azimuth 2 * rest_nodes equally spaced points. The rule is symmetric
    under reflection of each coordinate when 'axis' is a coordinate
    vector.

    Args:
        * N: dimension of the ambient space, >= 2.
        * polar_nodes: nodes in the angle from 'axis'.
        * rest_nodes: nodes per remaining angle.
        * axis: Unit vector of the polar axis; defaults to e_1.

    Returns:
        (points, weights) with points of shape (P, N); the weights sum to
        the area of S^{N-1}.

    """
    points, weights = _sphere_points_(N, polar_nodes, rest_nodes)
    weights = weights * (sphere_area(N) / weights.sum())
    if axis is not None:
        axis = np.asarray(axis, dtype=float)
        axis = axis / np.linalg.norm(axis)
        points = points.dot(_householder_(axis).T)
    return points, weights


@lru_cache(maxsize=None)
def jacobi_unit(n, alpha):
    """Gauss rule on [0, 1] for the weight u^alpha (1 - u)^alpha."""
    return gauss_jacobi(n, alpha, alpha, 0.0, 1.0)


def clustered_zonal(n, N, kappa):
    """
    Zonal rule on [-1, 1] with nodes clustered at x = -1.

    The nodes come from the exponential map

        1 + x = 2 (exp(kappa u) - 1) / (exp(kappa) - 1),   u in (0, 1),

    combined with the Gauss rule for u^a (1 - u)^a, a = (N - 3)/2, so that
    features of width ~exp(-kappa) next to x = -1 are resolved. kappa = 0
    gives the plain Gegenbauer rule.

    Args:
        * n: number of nodes.
        * N: dimension of the sphere's ambient space, >= 3.
        * kappa: array of clustering strengths, shape (R,).

    Returns:
        (one_plus_x, weights), both of shape (R, n); the weights of each row
        sum to 1, so they compute spherical means.

    """
    alpha = (N - 3.0) / 2.0
    u, w = jacobi_unit(n, alpha)
    kappa = np.asarray(kappa, dtype=float)[:, None]
    flat = kappa < 1e-8
    k = np.where(flat, 1.0, kappa)
    em = np.expm1(k)
    one_plus = np.where(flat, 2.0 * u, 2.0 * np.expm1(k * u) / em)
    one_minus = np.where(flat, 2.0 * (1.0 - u),
                         2.0 * np.exp(k * u) * np.expm1(k * (1.0 - u)) / em)
    jac = np.where(flat, 2.0, 2.0 * k * np.exp(k * u) / em)
    factor = jac * (one_plus * one_minus / (u * (1.0 - u))) ** alpha
    return one_plus, w * factor / special.beta(0.5, alpha + 1.0)

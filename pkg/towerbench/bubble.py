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
Bubbles, the polygonal tower configuration and the analytic derivatives
Z_{j,l} of the tower with respect to its parameters.

"""

import math
from dataclasses import dataclass

import numpy as np

from towerbench import util
from towerbench.util import NumericalError
from towerbench.problem import bubble_constant
from towerbench.profiles import PowerProfile, RadialSum


class ConfigurationError(NumericalError, ValueError):
    """Empty tower, nonpositive radius or scale, or mismatched dimensions."""
    pass


class DirectionError(NumericalError, IndexError):
    """Bubble index j or direction index l out of range."""
    pass


@dataclass(frozen=True)
class Bubble(object):
    """A single bubble U_{x,lambda}: center x and scale lam > 0."""
    center: tuple
    lam: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, 'center', tuple(float(c) for c in self.center))
        if not self.lam > 0:
            raise ConfigurationError('bubble scale must be positive, got {0}'.format(self.lam))

    @classmethod
    def unit(cls, N):
        """U_{0,1} in dimension N."""
        return cls((0.0,) * N, 1.0)

    @property
    def dim(self):
        return len(self.center)


@dataclass(frozen=True)
class TowerConfig(object):
    """
    m bubbles of common scale lam centered at

        x_j = (rbar cos(2(j-1)pi/m), rbar sin(2(j-1)pi/m), ybar),  j = 1..m.

    """
    m: int
    rbar: float
    ybar: tuple
    lam: float

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ConfigurationError('tower needs at least one bubble, got m={0}'.format(self.m))
        if not self.rbar > 0:
            raise ConfigurationError('ring radius rbar must be positive, got {0}'.format(self.rbar))
        if not self.lam > 0:
            raise ConfigurationError('scale lambda must be positive, got {0}'.format(self.lam))
        object.__setattr__(self, 'm', int(self.m))
        object.__setattr__(self, 'ybar', tuple(float(v) for v in self.ybar))

    @property
    def dim(self):
        return len(self.ybar) + 2

    def angles(self):
        return 2.0 * math.pi * np.arange(self.m) / self.m

    def min_distance(self):
        """Smallest distance between two centers, 2 rbar sin(pi/m); inf for m = 1."""
        if self.m == 1:
            return math.inf
        return 2.0 * self.rbar * math.sin(math.pi / self.m)


def _check_dim_(p, dim):
    if dim != p.N:
        raise ConfigurationError('configuration has dimension {0} but N={1}'.format(dim, p.N))


def _rho2_(pts, center):
    return np.sum((pts - np.asarray(center)) ** 2, axis=1)


def bubble_value(p, b, y):
    """
    U_{x,lambda}(y) = C_{N,s} (lambda / (1 + lambda^2 |y - x|^2))^{(N-2s)/2}.

    Args:
        * p: ProblemParams.
        * b: Bubble.
        * y: a point or an array of points.

    """
    _check_dim_(p, b.dim)
    pts, single = util.as_points(y, p.N)
    lam = b.lam
    values = (bubble_constant(p.N, p.s)
              * (lam / (1.0 + lam * lam * _rho2_(pts, b.center))) ** (p.decay / 2.0))
    return util.squeeze(values, single)


def bubble_profile(p, lam, power=1.0):
    """The radial profile of U_{x,lambda}^power."""
    amp = bubble_constant(p.N, p.s) * lam ** (p.decay / 2.0)
    return PowerProfile(amp, lam, p.decay / 2.0).power(power)


def tower_centers(cfg):
    """The centers x_1..x_m as an array of shape (m, N)."""
    theta = cfg.angles()
    head = cfg.rbar * np.column_stack([np.cos(theta), np.sin(theta)])
    tail = np.tile(np.asarray(cfg.ybar, dtype=float), (cfg.m, 1))
    return np.hstack([head, tail])


def tower_bubbles(cfg):
    return [Bubble(tuple(x), cfg.lam) for x in tower_centers(cfg)]


def tower_value(p, cfg, y):
    """Z(y) = sum_j U_{x_j,lambda}(y)."""
    _check_dim_(p, cfg.dim)
    pts, single = util.as_points(y, p.N)
    total = np.zeros(len(pts))
    for b in tower_bubbles(cfg):
        total += bubble_value(p, b, pts)
    return util.squeeze(total, single)


def bubble_profile_sum(p, cfg, power=1.0):
    """
    The RadialSum sum_j U_{x_j,lambda}^power.

    With power=1 this is the tower Z; with the critical power it is the
    right-hand side sum_j U_j^{2*-1} solved exactly by the tower's pieces.

    """
    _check_dim_(p, cfg.dim)
    profile = bubble_profile(p, cfg.lam, power)
    return RadialSum([(1.0, x, profile) for x in tower_centers(cfg)])


#############################################################
# derivatives Z_{j,l}
#############################################################

def direction_weight(l):
    """The weight n_l: -1 for the scale direction l=1, +1 otherwise."""
    return -1 if l == 1 else 1


def z_derivative(p, cfg, j, l, y):
    """
    Z_{j,l}(y), the partial derivative of U_{x_j,lambda} with respect to
    the tower parameter l:

    * l = 1: lambda
    * l = 2: rbar, through x_j(rbar)
    * l = 3..N: the component ybar_l of ybar

    Args:
        * p: ProblemParams.
        * cfg: TowerConfig.
        * j: bubble index, 1..m.
        * l: direction index, 1..N.
        * y: a point or an array of points.

    """
    _check_dim_(p, cfg.dim)
    if int(j) != j or not 1 <= j <= cfg.m:
        raise DirectionError('bubble index j={0} outside 1..{1}'.format(j, cfg.m))
    if int(l) != l or not 1 <= l <= p.N:
        raise DirectionError('direction index l={0} outside 1..{1}'.format(l, p.N))
    pts, single = util.as_points(y, p.N)
    center = tower_centers(cfg)[j - 1]
    lam = cfg.lam
    b = Bubble(tuple(center), lam)
    u = bubble_value(p, b, pts)
    if np.ndim(u) == 0:
        u = np.array([u])
    lr2 = lam * lam * _rho2_(pts, center)
    if l == 1:
        out = 0.5 * p.decay * u / lam * (1.0 - lr2) / (1.0 + lr2)
    else:
        # gradient of U with respect to its center
        dx = (p.decay * lam * lam * u / (1.0 + lr2))[:, None] * (pts - center)
        if l == 2:
            theta = cfg.angles()[j - 1]
            out = dx[:, 0] * math.cos(theta) + dx[:, 1] * math.sin(theta)
        else:
            out = dx[:, l - 1]
    return util.squeeze(out, single)


#############################################################
# symmetries of the configuration
#############################################################

def rotate_tower(cfg, y, times=1):
    """Rotate points by times * 2pi/m in the (y_1, y_2) plane."""
    pts, single = util.as_points(y, cfg.dim)
    angle = 2.0 * math.pi * times / cfg.m
    c, s = math.cos(angle), math.sin(angle)
    out = pts.copy()
    out[:, 0] = c * pts[:, 0] - s * pts[:, 1]
    out[:, 1] = s * pts[:, 0] + c * pts[:, 1]
    return out[0] if single else out


def reflect_y2(y):
    """The reflection y_2 -> -y_2."""
    pts, single = util.as_points(y)
    out = pts.copy()
    out[:, 1] = -out[:, 1]
    return out[0] if single else out

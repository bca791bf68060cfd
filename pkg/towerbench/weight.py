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
The weight K(|y'|, y'') of the equation: a model family with a
prescribed nondegenerate critical point, exact derivatives, and the
degree of its gradient at that point.

In the reduced coordinates v = (r, y'') with r = |y'| = |(y_1, y_2)|,

    K(v) = 1 + 1/2 (v - v0)^T H (v - v0) chi(|v - v0| / theta),

where chi is a smooth bump equal to 1 on [0, 1/2] and to 0 on [1, inf).
K is exactly 1 outside the ball of radius theta about v0.

"""

import logging
from collections import namedtuple

import numpy as np

from towerbench import util
from towerbench.util import NumericalError


logger = logging.getLogger(__name__)

DET_TOLERANCE = 1e-12

#bump exponentials below this argument are zero
BUMP_FLOOR = 1e-3

#largest allowed depth of the quadratic dip below 1
MAX_DIP = 0.5


class WeightError(NumericalError, ValueError):
    """Invalid weight parameters."""
    pass


class PolarSingularityError(WeightError):
    """R^N derivatives requested on the axis y' = 0 inside the support."""
    pass


class DegenerateCriticalPointError(WeightError):
    """det(H) vanishes up to the tolerance."""
    pass


WeightGradient = namedtuple('WeightGradient', 'reduced full')


#############################################################
# the bump and its derivatives
#############################################################

def _flat_(z):
    """e^{-1/z} and its first two derivatives, zero for z <= BUMP_FLOOR."""
    z = np.asarray(z, dtype=float)
    live = z > BUMP_FLOOR
    zs = np.where(live, z, 1.0)
    f = np.where(live, np.exp(-1.0 / zs), 0.0)
    f1 = f / zs ** 2
    f2 = f * (1.0 / zs ** 4 - 2.0 / zs ** 3)
    return f, f1, f2


def smooth_step(z):
    """
    S(z) = f(z) / (f(z) + f(1 - z)) with f(z) = exp(-1/z): 0 for z <= 0,
    1 for z >= 1, C-infinity in between. Returns (S, S', S'').

    """
    a, a1, a2 = _flat_(z)
    b, b1, b2 = _flat_(1.0 - np.asarray(z, dtype=float))
    b1 = -b1
    g = a + b
    g1 = a1 + b1
    num = a1 * b - a * b1
    step = a / g
    d1 = num / g ** 2
    d2 = (a2 * b - a * b2) / g ** 2 - 2.0 * num * g1 / g ** 3
    return step, d1, d2


def bump(rho, theta):
    """
    chi(rho / theta) and its first two derivatives in rho.

    >>> [float(bump(x, 1.0)[0]) for x in (0.25, 1.5)]
    [1.0, 0.0]

    """
    z = 2.0 * np.asarray(rho, dtype=float) / theta - 1.0
    step, d1, d2 = smooth_step(z)
    k = 2.0 / theta
    return 1.0 - step, -d1 * k, -d2 * k * k


#############################################################
# weights
#############################################################

def default_hessian(N):
    """
    diag(-2, -1, 0.5, 0.5) for N = 5; other N truncate the list or
    continue it with alternating -0.5, 0.5 so that the trace stays
    negative.

    """
    entries = [-2.0, -1.0, 0.5, 0.5]
    while len(entries) < N - 1:
        entries.append(-0.5 if len(entries) % 2 == 0 else 0.5)
    return np.diag(entries[:N - 1])


class ConstantWeight(object):
    """K = 1 everywhere."""
    is_constant = True

    def __init__(self, N):
        self.N = int(N)

    def __call__(self, y):
        pts, single = util.as_points(y, self.N)
        return util.squeeze(np.ones(len(pts)), single)

    value = __call__

    def excess(self, y):
        pts, single = util.as_points(y, self.N)
        return util.squeeze(np.zeros(len(pts)), single)

    def grad(self, y):
        pts, single = util.as_points(y, self.N)
        out = np.zeros_like(pts)
        return out[0] if single else out

    def hess(self, y):
        pts, single = util.as_points(y, self.N)
        out = np.zeros((len(pts), self.N, self.N))
        return out[0] if single else out

    def __repr__(self):
        return 'ConstantWeight(N={0})'.format(self.N)


class WeightField(object):
    """
    The model weight with critical point v0 = (r0, y0'') and Hessian H.

    Args:
        * N: dimension of the physical space, >= 3.
        * r0: radial coordinate of the critical point, > 0.
        * y0_pp: the y'' coordinates of the critical point (length N-2).
        * hessian: symmetric (N-1)x(N-1) matrix with negative trace and
          nonzero determinant; defaults to default_hessian(N).
        * cutoff: radius theta of the support about v0.

    H is scaled down, with a warning, when the quadratic dip could bring
    K below 1/2 on the support.

    """
    is_constant = False

    def __init__(self, N, r0=1.0, y0_pp=None, hessian=None, cutoff=0.5,
                 det_tol=DET_TOLERANCE):
        if int(N) != N or N < 3:
            raise WeightError('weight needs N >= 3, got {0}'.format(N))
        self.N = int(N)
        if not r0 > 0:
            raise WeightError('weight.r0 must be positive, got {0}'.format(r0))
        if not cutoff > 0:
            raise WeightError('weight.cutoff must be positive, got {0}'.format(cutoff))
        y0_pp = np.zeros(self.N - 2) if y0_pp is None else np.asarray(y0_pp, dtype=float)
        if y0_pp.shape != (self.N - 2,):
            raise WeightError('weight.y0_pp must have length {0}, got {1}'.format(
                self.N - 2, y0_pp.shape))
        H = default_hessian(self.N) if hessian is None else np.asarray(hessian, dtype=float)
        if H.shape != (self.N - 1, self.N - 1):
            raise WeightError('weight.hessian must be {0}x{0}, got {1}'.format(self.N - 1, H.shape))
        if not np.allclose(H, H.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(H).max())):
            raise WeightError('weight.hessian must be symmetric')
        if not np.trace(H) < 0:
            raise WeightError('weight.hessian must have negative trace, got {0}'.format(np.trace(H)))
        det = np.linalg.det(H)
        if abs(det) < det_tol:
            raise DegenerateCriticalPointError('det(H) = {0:.3g} is below {1:.3g}'.format(det, det_tol))

        self.r0 = float(r0)
        self.y0_pp = y0_pp
        self.cutoff = float(cutoff)
        self.det_tol = det_tol
        self.scale_factor = 1.0
        dip = 0.5 * abs(min(np.linalg.eigvalsh(H).min(), 0.0)) * self.cutoff ** 2
        if dip > MAX_DIP:
            self.scale_factor = MAX_DIP / dip
            logger.warning('scaling weight Hessian by %.4g to keep K >= %.2f', self.scale_factor, 1 - MAX_DIP)
        self.H = 0.5 * (H + H.T) * self.scale_factor


    @classmethod
    def default(cls, N=5):
        return cls(N)


    @property
    def v0(self):
        return np.concatenate([[self.r0], self.y0_pp])


    def lift(self):
        """The critical point as a point of R^N, (r0, 0, y0'')."""
        return np.concatenate([[self.r0, 0.0], self.y0_pp])


    @property
    def laplacian_at_critical(self):
        """Delta K(y0) = trace(H); the polar term vanishes at a critical point."""
        return float(np.trace(self.H))


    def bounds(self):
        """Lower and upper bounds of K."""
        eig = np.linalg.eigvalsh(self.H)
        r2 = self.cutoff ** 2
        return 1.0 + 0.5 * min(eig.min(), 0.0) * r2, 1.0 + 0.5 * max(eig.max(), 0.0) * r2


    ##########################################################
    # reduced coordinates v = (r, y'')
    ##########################################################

    def _parts_(self, v):
        d = v - self.v0
        rho = np.sqrt(np.sum(d * d, axis=1))
        Hd = d.dot(self.H)
        quad = 0.5 * np.sum(d * Hd, axis=1)
        c, c1, c2 = bump(rho, self.cutoff)
        return d, rho, Hd, quad, c, c1, c2


    def value_v(self, v):
        pts, single = util.as_points(v, self.N - 1)
        _, _, _, quad, c, _, _ = self._parts_(pts)
        return util.squeeze(1.0 + quad * c, single)


    def excess_v(self, v):
        pts, single = util.as_points(v, self.N - 1)
        _, _, _, quad, c, _, _ = self._parts_(pts)
        return util.squeeze(quad * c, single)


    def grad_v(self, v):
        """Gradient of K in (r, y''), shape (N-1,) or (P, N-1)."""
        pts, single = util.as_points(v, self.N - 1)
        d, rho, Hd, quad, c, c1, _ = self._parts_(pts)
        safe = np.where(rho > 0, rho, 1.0)
        out = Hd * c[:, None] + (quad * c1 / safe)[:, None] * d
        return out[0] if single else out


    def hess_v(self, v):
        """Hessian of K in (r, y''), shape (N-1, N-1) or (P, N-1, N-1)."""
        pts, single = util.as_points(v, self.N - 1)
        d, rho, Hd, quad, c, c1, c2 = self._parts_(pts)
        safe = np.where(rho > 0, rho, 1.0)
        n = self.N - 1
        dd = d[:, :, None] * d[:, None, :]
        eye = np.eye(n)[None, :, :]
        grad_c = (c1 / safe)[:, None] * d
        hess_c = ((c2 / safe ** 2)[:, None, None] * dd
                  + (c1 / safe)[:, None, None] * (eye - dd / (safe ** 2)[:, None, None]))
        out = (self.H[None, :, :] * c[:, None, None]
               + Hd[:, :, None] * grad_c[:, None, :]
               + grad_c[:, :, None] * Hd[:, None, :]
               + quad[:, None, None] * hess_c)
        return out[0] if single else out


    ##########################################################
    # physical coordinates y in R^N
    ##########################################################

    def reduce(self, y):
        """v = (|y'|, y'') for points y of R^N."""
        pts, single = util.as_points(y, self.N)
        r = np.sqrt(pts[:, 0] ** 2 + pts[:, 1] ** 2)
        v = np.column_stack([r, pts[:, 2:]])
        return (v[0] if single else v), r


    def __call__(self, y):
        pts, single = util.as_points(y, self.N)
        v, _ = self.reduce(pts)
        return util.squeeze(np.atleast_1d(self.value_v(v)), single)

    value = __call__


    def excess(self, y):
        """K(y) - 1, without cancellation."""
        pts, single = util.as_points(y, self.N)
        v, _ = self.reduce(pts)
        return util.squeeze(np.atleast_1d(self.excess_v(v)), single)


    def _check_axis_(self, v, r):
        dist = np.sqrt(np.sum((v - self.v0) ** 2, axis=1))
        if np.any((r == 0) & (dist < self.cutoff)):
            raise PolarSingularityError('derivative of K on the axis |y\'| = 0 inside the support')


    def grad(self, y):
        """Gradient of K in R^N by the chain rule through r = |y'|."""
        pts, single = util.as_points(y, self.N)
        v, r = self.reduce(pts)
        self._check_axis_(v, r)
        gv = np.atleast_2d(self.grad_v(v))
        safe = np.where(r > 0, r, 1.0)
        out = np.empty_like(pts)
        out[:, 0] = gv[:, 0] * pts[:, 0] / safe
        out[:, 1] = gv[:, 0] * pts[:, 1] / safe
        out[:, 2:] = gv[:, 1:]
        return out[0] if single else out


    def hess(self, y):
        """Hessian of K in R^N."""
        pts, single = util.as_points(y, self.N)
        v, r = self.reduce(pts)
        self._check_axis_(v, r)
        gv = np.atleast_2d(self.grad_v(v))
        hv = self.hess_v(v)
        if hv.ndim == 2:
            hv = hv[None]
        safe = np.where(r > 0, r, 1.0)
        yp = pts[:, :2]
        unit = yp / safe[:, None]
        out = np.empty((len(pts), self.N, self.N))
        # (y_1, y_2) block
        uu = unit[:, :, None] * unit[:, None, :]
        out[:, :2, :2] = (hv[:, 0, 0][:, None, None] * uu
                          + (gv[:, 0] / safe)[:, None, None] * (np.eye(2)[None] - uu))
        # mixed block
        mixed = unit[:, :, None] * hv[:, 0, 1:][:, None, :]
        out[:, :2, 2:] = mixed
        out[:, 2:, :2] = np.transpose(mixed, (0, 2, 1))
        out[:, 2:, 2:] = hv[:, 1:, 1:]
        return out[0] if single else out


    def __repr__(self):
        return 'WeightField(N={0}, r0={1}, cutoff={2}, trace={3})'.format(
            self.N, self.r0, self.cutoff, self.laplacian_at_critical)


def weight_eval(K, y):
    return K(y)


def weight_grad(K, y):
    """WeightGradient(reduced, full): the (r, y'') gradient and the R^N gradient."""
    if getattr(K, 'is_constant', False):
        full = K.grad(y)
        reduced = full[..., 1:]
        return WeightGradient(np.zeros_like(reduced), full)
    v, _ = K.reduce(y)
    return WeightGradient(K.grad_v(v), K.grad(y))


def weight_hess(K, y):
    return K.hess(y)


def critical_degree(K, tol=None):
    """
    Brouwer degree of grad K at its critical point: sign(det H).

    Raises DegenerateCriticalPointError when |det H| < tol.

    """
    tol = K.det_tol if tol is None else tol
    det = np.linalg.det(K.H)
    if abs(det) < tol:
        raise DegenerateCriticalPointError('det(H) = {0:.3g} is below {1:.3g}'.format(det, tol))
    return 1 if det > 0 else -1

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
The constants B1, B2, B3 of the lambda-derivative of the reduced energy,

    dI/dlambda = m ( -B1/lambda^3 + sum_{j>=2} B2 / (lambda^{a+1} |x_1 - x_j|^a) + ... )
               = m ( -B1/lambda^3 + B3 m^a / lambda^{a+1} + ... ),

with a = N - 2s, and the lattice sums relating B3 to B2.

All constants are computed, never tabulated.

"""

import logging
import math
from collections import namedtuple
from functools import lru_cache

import numpy as np
from scipy import special

from towerbench import util
from towerbench.util import NumericalError
from towerbench.quadrature import DEFAULT_SPEC
from towerbench.reduction.integrals import pair_integral, second_moment


logger = logging.getLogger(__name__)

#relative rms above which a power-law fit is rejected
FIT_TOLERANCE = 0.05

DEFAULT_SEPARATIONS = tuple(np.geomspace(1e2, 1e4, 5))
LATTICE_SIZES = (8, 16, 32, 64)

#relative step of the finite difference in lambda
DERIVATIVE_STEP = 1e-3


class FitQualityError(NumericalError):
    """A power-law fit has relative rms residual above the tolerance."""
    pass


InteractionFit = namedtuple('InteractionFit', 'coefficient exponent rms separations values')
B2Fit = namedtuple('B2Fit', 'B2 raw exponent rms coefficient')
LatticeLimit = namedtuple('LatticeLimit', 'limit partial sizes zeta_limit')


def _power_fit_(x, y):
    """Fit y = c x^{-e}; returns (c, e, relative rms)."""
    slope, intercept = util.loglog_slope(x, y)
    model = np.exp(intercept) * np.asarray(x, dtype=float) ** slope
    rms = float(np.sqrt(np.mean((np.asarray(y) / model - 1.0) ** 2)))
    return math.exp(intercept), -slope, rms


def constant_B1(p, K, q=None, eps=None, rule='jacobi'):
    """
    B1 = (1/q_e) (-Delta K(y0) / N) int |z|^2 U_{0,1}^{q_e} dz

    where q_e = 2*_s + sign eps is the energy exponent; eps defaults to
    the perturbation of p. 'rule' selects the radial quadrature of the
    moment, see integrals.second_moment().

    """
    q = q or DEFAULT_SPEC
    eps = p.eps if eps is None else eps
    power = p.two_star + p.exponent_sign * eps
    lap = K.laplacian_at_critical
    if not lap < 0:
        raise NumericalError('B1 needs Delta K(y0) < 0, got {0}'.format(lap))
    return (1.0 / power) * (-lap / p.N) * second_moment(p, power, rule, q)


def interaction_fit(p, q=None, separations=DEFAULT_SEPARATIONS):
    """
    Fit int U_1^{2*-1} U_2 ~ B^ L^{-e} over the separations L = lambda |x_1 - x_2|.

    The coefficient B^ is the geometric mean of I(L) L^{N-2s}; the free
    exponent e and the relative rms of the free fit measure how well the
    separations sit in the asymptotic regime.

    """
    q = q or DEFAULT_SPEC
    L = np.asarray(separations, dtype=float)
    values = np.array([pair_integral(p, x, q) for x in L])
    _, exponent, rms = _power_fit_(L, values)
    coefficient = float(np.exp(np.mean(np.log(values * L ** p.decay))))
    logger.debug('interaction fit: B^=%.6g exponent=%.6g rms=%.3g', coefficient, exponent, rms)
    return InteractionFit(coefficient, exponent, rms, tuple(L), tuple(values))


@lru_cache(maxsize=32)
def _b2_fit_(p, q, separations):
    lam = np.asarray(separations, dtype=float)
    h = DERIVATIVE_STEP
    deriv = np.array([(pair_integral(p, x * (1 - h), q) - pair_integral(p, x * (1 + h), q))
                      / (2.0 * h * x) for x in lam])
    if np.any(deriv <= 0):
        raise FitQualityError('interaction derivative is not decreasing over the separations')
    raw, exponent, rms = _power_fit_(lam, deriv)
    if rms > FIT_TOLERANCE:
        raise FitQualityError('B2 fit residual {0:.3g} above {1}'.format(rms, FIT_TOLERANCE))
    coefficient = float(np.exp(np.mean(np.log(deriv * lam ** (p.decay + 1.0)))))
    return B2Fit(0.5 * coefficient, coefficient, exponent, rms, coefficient / p.decay)


def constant_B2_fit(p, q=None, separations=DEFAULT_SEPARATIONS):
    """
    The full B2 fit: -d/dlambda int U_1^{2*-1} U_2 at |x_1 - x_2| = 1 is
    fitted as raw lambda^{-e}; e should be N - 2s + 1, raw should be
    (N-2s) B^, and B2 = raw/2.

    """
    return _b2_fit_(p, q or DEFAULT_SPEC, tuple(float(x) for x in separations))


def constant_B2(p, q=None):
    """B2, the interaction coefficient of the energy derivative."""
    return constant_B2_fit(p, q).B2


def lattice_sum(a, m):
    """
    m^{-a} sum_{k=1}^{m-1} sin(pi k/m)^{-a}.

    >>> round(lattice_sum(2.0, 2), 12)
    0.25

    """
    if m < 2:
        return 0.0
    k = np.arange(1, m)
    return float(m ** (-a) * np.sum(np.sin(math.pi * k / m) ** (-a)))


def lattice_zeta_limit(a):
    """The m -> inf limit of lattice_sum(a, m): 2 zeta(a) / pi^a."""
    return 2.0 * special.zeta(a) / math.pi ** a


def _resonant_column_(m, a):
    """m^-2 (m^{3-a} - 1)/(3 - a), which tends to m^-2 log m at a = 3."""
    b = 3.0 - a
    if abs(b) < 1e-12:
        return m ** -2.0 * np.log(m)
    return m ** -2.0 * np.expm1(b * np.log(m)) / b


def lattice_limit(a, sizes=LATTICE_SIZES):
    """
    Extrapolate lattice_sum(a, m) to m -> inf by least squares with the
    basis {1, m^-2, m^{1-a}}. The last column enters as
    _resonant_column_(), which spans the same space and keeps the fit
    well conditioned through a = 3, where the m^-2 log m term appears.

    """
    m = np.asarray(sizes, dtype=float)
    partial = np.array([lattice_sum(a, int(k)) for k in sizes])
    design = np.column_stack([np.ones_like(m), m ** -2.0, _resonant_column_(m, a)])
    coef, _, _, _ = np.linalg.lstsq(design, partial, rcond=None)
    limit = float(coef[0])
    logger.debug('lattice limit a=%.4g: %.10g (zeta form %.10g)', a, limit, lattice_zeta_limit(a))
    return LatticeLimit(limit, tuple(partial), tuple(sizes), lattice_zeta_limit(a))


def constant_B3(p, rbar, q=None, B2=None):
    """
    B3 = B2 (2 rbar)^{-(N-2s)} lim_m lattice_sum(N-2s, m).

    Args:
        * p: ProblemParams.
        * rbar: ring radius.
        * q: QuadratureSpec for B2.
        * B2: precomputed B2.

    """
    if not rbar > 0:
        raise NumericalError('B3 needs rbar > 0, got {0}'.format(rbar))
    B2 = constant_B2(p, q) if B2 is None else B2
    return B2 * (2.0 * rbar) ** (-p.decay) * lattice_limit(p.decay).limit


Constants = namedtuple('Constants', 'B1 B2 B3')


def reduced_constants(p, K, rbar=None, q=None):
    """B1, B2 and B3 for the weight K; rbar defaults to K.r0."""
    rbar = K.r0 if rbar is None else rbar
    B1 = constant_B1(p, K, q)
    B2 = constant_B2(p, q)
    return Constants(B1, B2, constant_B3(p, rbar, q, B2))

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
Scaling laws tying the perturbation eps to the number of bubbles m and
the common scale lambda.

"""

import logging
import math

from towerbench.problem import ProblemError


logger = logging.getLogger(__name__)

DEFAULT_L0 = 0.5
DEFAULT_L1 = 2.0


def m_exponent(p):
    """(N-2s-2) / (N-2s)^2."""
    return (p.decay - 2.0) / p.decay ** 2


def m_from_eps(p, eps):
    """
    m = floor(eps^{-(N-2s-2)/(N-2s)^2}).

    Raises ProblemError when eps is too large for a single bubble.

    """
    if not eps > 0:
        raise ProblemError('eps must be positive, got {0}'.format(eps))
    # guard against floor() losing an exact integer to rounding
    m = int(math.floor(eps ** (-m_exponent(p)) * (1.0 + 1e-12)))
    if m < 1:
        raise ProblemError('eps={0} is too large: m = floor(eps^-{1:.6g}) = 0'.format(
            eps, m_exponent(p)))
    return m


def lambda_from_t(p, t, m):
    """lambda = t m^{(N-2s)/(N-2s-2)}."""
    if not t > 0:
        raise ProblemError('t must be positive, got {0}'.format(t))
    return t * float(m) ** (p.decay / (p.decay - 2.0))


def lambda_window(p, eps, L0=DEFAULT_L0, L1=DEFAULT_L1):
    """The admissible scales [L0 eps^{-1/(N-2s)}, L1 eps^{-1/(N-2s)}]."""
    base = eps ** (-1.0 / p.decay)
    return L0 * base, L1 * base


def clamp_lambda(p, lam, eps, L0=DEFAULT_L0, L1=DEFAULT_L1):
    """
    Clamp lam into lambda_window(); returns (lam, clamped).

    """
    lo, hi = lambda_window(p, eps, L0, L1)
    if lo <= lam <= hi:
        return lam, False
    clamped = min(max(lam, lo), hi)
    logger.warning('lambda %.6g outside [%.6g, %.6g] for eps=%g; clamped to %.6g',
                   lam, lo, hi, eps, clamped)
    return clamped, True


def offset_bound(p, eps, iota=0.0):
    """Largest admissible |(rbar, ybar) - (r0, y0'')|: eps^{(1+iota)/(N-2s)}."""
    return eps ** ((1.0 + iota) / p.decay)

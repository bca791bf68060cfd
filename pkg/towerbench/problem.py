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
Problem parameters of the perturbed critical equation, the admissible
range of the fractional order, and the constants derived from (N, s).

"""

import math
from dataclasses import dataclass

from scipy import special

from towerbench.util import NumericalError


MIN_DIMENSION = 4
MAX_DIMENSION = 16


class ProblemError(NumericalError, ValueError):
    """Invalid dimension, inadmissible order, or perturbation out of range."""
    pass


def admissible_s_window(N):
    r"""
    The admissible range (s_min, 1) of the fractional order in dimension N.

    .. math:: s_{min} = \max\Big\{\frac{N+1-\sqrt{N^2-2N+9}}{4},
              \frac{3-\sqrt{N^2-6N+13}}{2}\Big\}

    Args:
        * N: spatial dimension, at least 4.

    Returns:
        The open interval as a tuple (s_min, 1.0).

    >>> round(admissible_s_window(4)[0], 6)
    0.381966

    """
    if int(N) != N or N < MIN_DIMENSION:
        raise ProblemError('invalid dimension N={0}: need N >= {1}'.format(N, MIN_DIMENSION))
    first = (N + 1 - math.sqrt(N * N - 2 * N + 9)) / 4.0
    second = (3 - math.sqrt(N * N - 6 * N + 13)) / 2.0
    return max(first, second), 1.0


def is_admissible(N, s):
    """True if s lies in the open admissible window for dimension N."""
    s_min, s_max = admissible_s_window(N)
    return s_min < s < s_max


@dataclass(frozen=True)
class ProblemParams(object):
    """
    Dimension, fractional order and perturbation of the problem

    .. math:: (-\\Delta)^s u = K u^{2^*_s - 1 + \\sigma\\epsilon}

    where sigma = exponent_sign selects the super- or subcritical branch.

    The constructor rejects N < 4, N > 16, s outside (0, 1), s outside
    the admissible window, negative eps and signs other than +1/-1.

    """
    N: int
    s: float
    eps: float = 0.0
    exponent_sign: int = 1

    def __post_init__(self):
        if int(self.N) != self.N or not MIN_DIMENSION <= self.N <= MAX_DIMENSION:
            raise ProblemError('invalid dimension N={0}: supported range is {1}..{2}'.format(
                self.N, MIN_DIMENSION, MAX_DIMENSION))
        if not 0.0 < self.s < 1.0:
            raise ProblemError('fractional order s={0} must lie in (0, 1)'.format(self.s))
        s_min = admissible_s_window(self.N)[0]
        if self.s <= s_min:
            raise ProblemError('s={0} is not admissible for N={1}: need s > {2:.6f}'.format(
                self.s, self.N, s_min))
        if not self.eps >= 0.0:
            raise ProblemError('perturbation eps={0} must be nonnegative'.format(self.eps))
        if self.exponent_sign not in (1, -1):
            raise ProblemError('exponent_sign must be +1 or -1, got {0}'.format(self.exponent_sign))
        object.__setattr__(self, 'N', int(self.N))
        object.__setattr__(self, 's', float(self.s))
        object.__setattr__(self, 'eps', float(self.eps))

    @property
    def decay(self):
        """N - 2s, the decay exponent of a bubble."""
        return self.N - 2.0 * self.s

    @property
    def two_star(self):
        """The critical exponent 2N / (N - 2s)."""
        return 2.0 * self.N / self.decay

    @property
    def tau(self):
        """(N - 2s - 2) / (N - 2s), the extra decay of the weighted norms."""
        return (self.decay - 2.0) / self.decay

    @property
    def critical_power(self):
        """(N + 2s) / (N - 2s) = 2*_s - 1."""
        return self.two_star - 1.0

    @property
    def power(self):
        """The exponent of the nonlinearity, 2*_s - 1 + sign * eps."""
        return self.critical_power + self.exponent_sign * self.eps

    @property
    def energy_power(self):
        """2*_s + sign * eps, the exponent of the potential energy."""
        return self.power + 1.0


def gamma_ratio(a, b):
    """Gamma(a) / Gamma(b) for positive arguments, through log-gamma."""
    return math.exp(special.gammaln(a) - special.gammaln(b))


def sphere_area(N):
    """Surface measure of the unit sphere in R^N, 2 pi^(N/2) / Gamma(N/2)."""
    return 2.0 * math.pi ** (N / 2.0) / special.gamma(N / 2.0)


def bubble_constant(N, s):
    r"""
    The normalization C_{N,s} of the bubble

    .. math:: U_{x,\lambda}(y) = C_{N,s}\Big(\frac{\lambda}{1+\lambda^2|y-x|^2}\Big)^{\frac{N-2s}{2}},
              \qquad C_{N,s} = (4^s\gamma)^{\frac{N-2s}{4s}}, \quad
              \gamma = \frac{\Gamma(\frac{N+2s}{2})}{\Gamma(\frac{N-2s}{2})}

    Args:
        * N: dimension.
        * s: fractional order.

    Returns:
        C_{N,s} as a float.

    >>> round(bubble_constant(5, 0.5), 10)
    16.0

    """
    log_gamma = special.gammaln((N + 2.0 * s) / 2.0) - special.gammaln((N - 2.0 * s) / 2.0)
    return math.exp((N - 2.0 * s) / (4.0 * s) * (s * math.log(4.0) + log_gamma))


def operator_constant(N, s):
    """
    Constant c_{N,s} of the singular-integral form of (-Delta)^s,

        (-Delta)^s f(y) = c_{N,s}/2 * int (2f(y) - f(y+z) - f(y-z)) |z|^{-N-2s} dz,

    normalized so that the Fourier symbol is |xi|^{2s}.

    """
    # |Gamma(-s)| = Gamma(1 - s) / s on (0, 1)
    return (4.0 ** s * s * gamma_ratio(N / 2.0 + s, 1.0 - s)
            / math.pi ** (N / 2.0))


def extension_constant(s):
    """d_s = 2^(2s-1) Gamma(s) / Gamma(1-s)."""
    return 2.0 ** (2.0 * s - 1.0) * gamma_ratio(s, 1.0 - s)


def kernel_constant(N, s):
    """
    Closed form of the Poisson kernel normalization,
    Gamma((N+2s)/2) / (pi^(N/2) Gamma(s)).

    Used as the regression value for the numerically computed beta(N, s).

    """
    return gamma_ratio((N + 2.0 * s) / 2.0, s) / math.pi ** (N / 2.0)

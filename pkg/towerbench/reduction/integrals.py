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
Integrals of bubble powers over R^N: closed forms of the single-bubble
integrals, and the two-bubble interaction integral by quadrature.

"""

import math

import numpy as np
from scipy import special

from towerbench.problem import bubble_constant, sphere_area
from towerbench.bubble import bubble_profile
from towerbench.quadrature import DEFAULT_SPEC, gauss_jacobi, gauss_legendre, log_panels


def power_integral(p, power, lam=1.0):
    """
    int U_{0,lambda}^power over R^N, in closed form

        |S^{N-1}| C^power B(N/2, a power/2 - N/2) / 2 * lambda^{a power/2 - N},

    where a = N - 2s. Needs a * power > N.

    """
    a = p.decay
    if not a * power > p.N:
        raise ValueError('int U^{0} diverges: need (N-2s) power > N'.format(power))
    return (sphere_area(p.N) * bubble_constant(p.N, p.s) ** power
            * 0.5 * special.beta(p.N / 2.0, a * power / 2.0 - p.N / 2.0)
            * lam ** (a * power / 2.0 - p.N))


def critical_energy(p):
    """A = int U_{0,1}^{2*}, the same for every center and scale."""
    return power_integral(p, p.two_star)


def second_moment(p, power, rule='jacobi', q=None):
    """
    int |z|^2 U_{0,1}^power dz by one of two radial rules.

    * 'jacobi': Gauss-Jacobi in x = r^2/(1 + r^2), exact for the pure
      power profile up to rounding.
    * 'panels': geometric Gauss-Legendre panels in r with a power tail.

    """
    q = q or DEFAULT_SPEC
    N = p.N
    k = p.decay * power / 2.0
    if not 2.0 * k > N + 2.0:
        raise ValueError('second moment diverges for power {0}'.format(power))
    prefactor = sphere_area(N) * bubble_constant(N, p.s) ** power
    if rule == 'jacobi':
        _, w = gauss_jacobi(q.radial_nodes, k - N / 2.0 - 2.0, N / 2.0, 0.0, 1.0)
        return prefactor * 0.5 * w.sum()
    if rule != 'panels':
        raise ValueError('unknown rule {0!r}'.format(rule))
    lo = q.inner_split
    hi = q.truncation_radius
    near_r, near_w = gauss_jacobi(q.radial_nodes, 0.0, N + 1.0, 0.0, lo)
    mid_r, mid_w = log_panels(lo, hi, q.panel_density, q.radial_nodes)
    total = (np.sum(near_w * (1.0 + near_r ** 2) ** (-k))
             + np.sum(mid_w * mid_r ** (N + 1.0) * (1.0 + mid_r ** 2) ** (-k)))
    total += hi ** (N + 2.0 - 2.0 * k) / (2.0 * k - N - 2.0)
    return prefactor * total


def radial_power_integral(p, power, lam, q=None):
    """int U_{0,lambda}^power by radial quadrature, the check on power_integral()."""
    q = q or DEFAULT_SPEC
    N = p.N
    profile = bubble_profile(p, lam, power)
    length = profile.length
    lo = q.inner_split * length
    hi = q.truncation_radius * length
    near_r, near_w = gauss_jacobi(q.radial_nodes, 0.0, N - 1.0, 0.0, lo)
    mid_r, mid_w = log_panels(lo, hi, q.panel_density, q.radial_nodes)
    total = np.sum(near_w * profile(near_r ** 2)) + np.sum(mid_w * mid_r ** (N - 1.0) * profile(mid_r ** 2))
    decay = profile.decay
    total += profile(hi * hi) * hi ** N / (decay - N)
    return sphere_area(N) * total


#############################################################
# two-bubble interaction
#############################################################

def _half_space_(f, g, L, N, q):
    """
    int over {<z, e> < L/2} of f(|z|^2) g(|z - L e|^2) dz.

    Spherical coordinates about the origin; the polar variable x = <omega, e>
    is split at 0, and for x > 0 the radius stops at the bisecting plane
    r = L/(2x).

    """
    alpha = (N - 3.0) / 2.0
    n = q.angular_nodes
    # x in [-1, 0]: weight (1 + x)^alpha, factor (1 - x)^alpha in the integrand
    xl, wl = gauss_jacobi(n, 0.0, alpha, -1.0, 0.0)
    wl = wl * (1.0 - xl) ** alpha
    xr, wr = gauss_jacobi(n, alpha, 0.0, 0.0, 1.0)
    wr = wr * (1.0 + xr) ** alpha
    xs = np.concatenate([xl, xr])
    ws = np.concatenate([wl, wr]) * (sphere_area(N) / special.beta(0.5, alpha + 1.0))

    length = min(f.length, g.length)
    big = q.truncation_radius * max(length, L)
    lo = q.inner_split * length
    near_r, near_w = gauss_jacobi(q.radial_nodes, 0.0, N - 1.0, 0.0, lo)
    decay = f.decay + g.decay

    total = 0.0
    for x, wx in zip(xs, ws):
        rmax = big if x <= 0 else min(big, L / (2.0 * x))
        inner = np.sum(near_w * f(near_r ** 2) * g(near_r ** 2 + L * L - 2.0 * near_r * L * x))
        if rmax > lo:
            r, w = log_panels(lo, rmax, q.panel_density, q.radial_nodes)
            dist = r * r + L * L - 2.0 * r * L * x
            inner += np.sum(w * r ** (N - 1.0) * f(r * r) * g(dist))
        if x <= 0 and q.tail_order >= 1:
            tail_val = big ** (N - 1.0) * f(big * big) * g(big * big + L * L - 2.0 * big * L * x)
            inner += tail_val * big / (decay - N)
        total += wx * inner
    return total


def pair_integral(p, L, q=None, power=None):
    """
    int U_{x_1,1}^power U_{x_2,1} for |x_1 - x_2| = L; power defaults to
    2*_s - 1. By scaling this equals int U_{x_1,lambda}^power U_{x_2,lambda}
    at lambda |x_1 - x_2| = L when power is the critical one.

    """
    q = q or DEFAULT_SPEC
    power = p.critical_power if power is None else power
    if not L > 0:
        raise ValueError('pair_integral needs L > 0, got {0}'.format(L))
    u = bubble_profile(p, 1.0)
    up = bubble_profile(p, 1.0, power)
    return _half_space_(up, u, L, p.N, q) + _half_space_(u, up, L, p.N, q)


def pair_integral_scaled(p, lam, distance, q=None):
    """int U_{x_1,lambda}^{2*-1} U_{x_2,lambda} with |x_1 - x_2| = distance."""
    return pair_integral(p, lam * distance, q)

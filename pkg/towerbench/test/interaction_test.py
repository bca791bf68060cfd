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

"""Unit tests for the 'validation.interaction' module"""

import math
import unittest
import numpy as np
from scipy import special

import towerbench.all as tb


def riesz_constant(N, s, delta):
    """
    The limit of lemma_b2_ratio at infinity: the composition constant of
    the Riesz kernels |x|^-(N-2s) and |x|^-(2s+delta).

    """
    a, b = 2.0 * s, N - 2.0 * s - delta
    return (np.pi ** (N / 2.0)
            * special.gamma(a / 2.0) * special.gamma(b / 2.0)
            * special.gamma((N - a - b) / 2.0)
            / (special.gamma((N - a) / 2.0) * special.gamma((N - b) / 2.0)
               * special.gamma((a + b) / 2.0)))


class SplittingTest(unittest.TestCase):

    def test_midpoint(self):
        ratio = tb.lemma_b1_ratio(1.0, 1.0, 1.0, [0.0, 0.0], [2.0, 0.0], [1.0, 0.0])
        self.assertAlmostEqual(ratio, 0.5)


    def test_bounded(self):
        rng = np.random.RandomState(2)
        xj, xk = np.zeros(5), np.array([3.0, 1.0, 0.0, 0.0, 0.0])
        pts = rng.randn(500, 5) * 4.0
        for alpha, beta, delta in ((1.0, 1.0, 1.0), (2.5, 1.5, 0.7), (3.0, 3.0, 3.0)):
            ratio = tb.lemma_b1_ratio(alpha, beta, delta, xj, xk, pts)
            self.assertEqual(ratio.shape, (500,))
            self.assertTrue(np.all(ratio <= 2.0 ** delta))


    def test_errors(self):
        x = [0.0, 0.0, 0.0]
        y = [1.0, 0.0, 0.0]
        self.assertRaises(tb.ParameterRangeError, tb.lemma_b1_ratio, 0.5, 1.0, 0.5, x, y, y)
        self.assertRaises(tb.ParameterRangeError, tb.lemma_b1_ratio, 1.0, 2.0, 1.5, x, y, y)
        self.assertRaises(tb.ParameterRangeError, tb.lemma_b1_ratio, 1.0, 1.0, 0.0, x, y, y)
        self.assertRaises(tb.DegeneratePairError, tb.lemma_b1_ratio, 1.0, 1.0, 1.0, x, x, y)


    def test_sampled_sup(self):
        sup = tb.sampled_b1_sup(5, draws=50, seed=4)
        self.assertLess(sup, 8.0)
        self.assertGreater(sup, 0.0)
        self.assertEqual(sup, tb.sampled_b1_sup(5, draws=50, seed=4))


class ConvolutionTest(unittest.TestCase):

    def test_origin(self):
        for N, s, delta in ((5, 0.9, 1.6), (4, 0.6, 1.4), (6, 0.75, 0.5)):
            exact = tb.sphere_area(N) * special.beta(2 * s, delta)
            ratio = tb.lemma_b2_ratio(N, s, delta, np.zeros(N))
            self.assertLess(abs(ratio - exact) / exact, 1e-4)


    def test_radial(self):
        a = tb.lemma_b2_ratio(5, 0.9, 1.6, [2.0, 0.0, 0.0, 0.0, 0.0])
        b = tb.lemma_b2_ratio(5, 0.9, 1.6, [0.0, 0.0, 0.0, 0.0, 2.0])
        self.assertAlmostEqual(a / b, 1.0, places=12)


    def test_sampled_sup(self):
        sup = tb.sampled_b2_sup(5, 0.9, 1.6)
        origin = tb.lemma_b2_ratio(5, 0.9, 1.6, np.zeros(5))
        self.assertTrue(math.isfinite(sup))
        self.assertGreaterEqual(sup, origin)


    def test_sampled_sup_bound(self):
        # pinned: the sup is the large-distance limit, about 4.7 times the value at 0
        sup = tb.sampled_b2_sup(5, 0.9, 1.6)
        limit = riesz_constant(5, 0.9, 1.6)
        self.assertLess(abs(sup / limit - 1.0), 0.05)
        self.assertLess(sup, 5.0 * tb.lemma_b2_ratio(5, 0.9, 1.6, np.zeros(5)))


    def test_decay(self):
        fit = tb.convolution_decay_exponent(5, 0.9, 1.6)
        self.assertLess(abs(fit.slope + 1.6), 0.05)


    def test_range(self):
        self.assertRaises(tb.ParameterRangeError, tb.convolution_integral, 5, 0.9, 3.2, 1.0)
        self.assertRaises(tb.ParameterRangeError, tb.sampled_b2_sup, 5, 0.9, 0.0)


if __name__ == '__main__':
    unittest.main()

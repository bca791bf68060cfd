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

"""Unit tests for the 'profiles' module"""

import math
import unittest
import numpy as np

import towerbench.all as tb


def gaussian_mean_3d(d, r):
    """Mean of exp(-|z - c|^2) over |z - y| = r in R^3, |y - c| = d."""
    return (math.exp(-(d - r) ** 2) - math.exp(-(d + r) ** 2)) / (4.0 * d * r)


class ProfileTest(unittest.TestCase):

    def test_power_profile(self):
        g = tb.PowerProfile(2.0, 1.0, 1.0)
        self.assertAlmostEqual(g(1.0), 1.0)
        self.assertEqual(g.power(2.0), tb.PowerProfile(4.0, 1.0, 2.0))
        self.assertAlmostEqual(g.decay, 2.0)
        self.assertAlmostEqual(tb.PowerProfile(1.0, 4.0, 1.0).length, 0.25)


    def test_derivatives(self):
        h = 1e-6
        for g in (tb.PowerProfile(3.0, 2.0, 1.6), tb.GaussianProfile(1.5, 0.7),
                  tb.DistanceProfile(1.0, 2.5)):
            for q in (0.3, 2.0):
                fd = (g(q + h) - g(q - h)) / (2 * h)
                self.assertAlmostEqual(g.derivative(q) / fd, 1.0, places=6)


class RadialSumTest(unittest.TestCase):

    def setUp(self):
        self.f = tb.RadialSum([(1.0, [0.0, 0.0, 0.0], tb.GaussianProfile(1.0, 1.0)),
                               (2.0, [1.0, 0.0, 0.0], tb.PowerProfile(1.0, 2.0, 1.5))])

    def test_call(self):
        y = np.array([0.5, 0.5, 0.0])
        expected = math.exp(-0.5) + 2.0 * (1.0 + 4.0 * 0.5) ** -1.5
        self.assertAlmostEqual(self.f(y), expected)
        self.assertEqual(self.f(np.zeros((7, 3))).shape, (7,))


    def test_gradient(self):
        y = np.array([0.3, -0.2, 0.4])
        h = 1e-6
        fd = [(self.f(y + h * e) - self.f(y - h * e)) / (2 * h) for e in np.eye(3)]
        self.assertTrue(np.allclose(self.f.gradient(y), fd, rtol=1e-6, atol=1e-9))


    def test_linear_combinations(self):
        y = np.array([0.1, 0.2, 0.3])
        g = 2.0 * self.f + (-self.f)
        self.assertEqual(len(g.terms), 4)
        self.assertAlmostEqual(g(y), self.f(y))


    def test_properties(self):
        self.assertAlmostEqual(self.f.length, 0.5)
        self.assertAlmostEqual(self.f.decay, 3.0)
        self.assertAlmostEqual(self.f.extent(np.zeros(3)), 1.0)


    def test_invalid(self):
        self.assertRaises(ValueError, tb.RadialSum, [])
        self.assertRaises(ValueError, tb.RadialSum,
                          [(1.0, [0.0, 0.0], tb.GaussianProfile(1.0, 1.0)),
                           (1.0, [0.0, 0.0, 0.0], tb.GaussianProfile(1.0, 1.0))])


class MeansTest(unittest.TestCase):

    def test_zonal_means(self):
        g = tb.GaussianProfile(1.0, 1.0)
        radii = np.array([0.5, 2.0])
        means = tb.zonal_means(g, 1.0, radii, 3, 24)
        for m, r in zip(means, radii):
            self.assertAlmostEqual(m, gaussian_mean_3d(1.0, r), places=8)


    def test_zonal_means_centered(self):
        g = tb.PowerProfile(1.0, 1.0, 1.6)
        radii = np.array([0.1, 1.0, 10.0])
        self.assertTrue(np.allclose(tb.zonal_means(g, 0.0, radii, 5, 12), g(radii ** 2)))


    def test_spherical_means_agree(self):
        f = tb.RadialSum([(1.0, [0.0, 0.0, 0.0, 0.0], tb.GaussianProfile(1.0, 1.0))])
        y = np.array([1.0, 0.0, 0.0, 0.0])
        radii = np.array([0.25, 0.5])
        zonal = tb.spherical_means(f, y, radii)
        product = tb.spherical_means(lambda pts: f(pts), y, radii)
        self.assertTrue(np.allclose(zonal, product, rtol=1e-6))


if __name__ == '__main__':
    unittest.main()

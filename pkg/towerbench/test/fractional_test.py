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

"""Unit tests for the 'operators.fractional' module"""

import unittest
import numpy as np

import towerbench.all as tb


def unit_bubble(p):
    return tb.RadialSum.single(np.zeros(p.N), tb.bubble_profile(p, 1.0))


class BubbleIdentityTest(unittest.TestCase):
    """The quadrature against (-Delta)^s U = U^{2*-1}."""

    def check(self, N, s, points, places=3):
        p = tb.ProblemParams(N, s)
        b = tb.Bubble.unit(N)
        f = unit_bubble(p)
        for y in points:
            exact = tb.frac_lap_exact_bubble(p, b, y)
            result = tb.frac_lap_quadrature(f, y, s)
            self.assertTrue(result.tail_ok)
            self.assertAlmostEqual(result.value / exact, 1.0, places=places)


    def test_n5_s09(self):
        e = np.eye(5)
        self.check(5, 0.9, [np.zeros(5), 0.5 * e[0], 2.0 * e[1] + e[2]])


    def test_n4_s06(self):
        e = np.eye(4)
        self.check(4, 0.6, [np.zeros(4), e[0], 3.0 * e[3]])


    def test_n6_s075(self):
        self.check(6, 0.75, [np.full(6, 0.3)])


    def test_scaled_bubble(self):
        p = tb.ProblemParams(5, 0.5)
        b = tb.Bubble((1.0, 0.0, 0.0, 0.0, 0.0), 4.0)
        f = tb.RadialSum.single(np.array(b.center), tb.bubble_profile(p, 4.0))
        y = np.array([1.1, 0.1, 0.0, 0.0, 0.0])
        exact = tb.frac_lap_exact_bubble(p, b, y)
        self.assertAlmostEqual(tb.frac_lap_quadrature(f, y, 0.5).value / exact, 1.0, places=3)


    def test_callable(self):
        """Plain callables go through the product rule on the sphere."""
        p = tb.ProblemParams(4, 0.6)
        b = tb.Bubble.unit(4)
        y = np.array([0.5, 0.0, 0.0, 0.0])

        def f(pts):
            return tb.bubble_value(p, b, pts)

        exact = tb.frac_lap_exact_bubble(p, b, y)
        self.assertAlmostEqual(tb.frac_lap_quadrature(f, y, 0.6).value / exact, 1.0, places=3)


class QuadratureTest(unittest.TestCase):

    def test_values_shape(self):
        p = tb.ProblemParams(4, 0.6)
        f = unit_bubble(p)
        pts = np.random.RandomState(1).randn(3, 4)
        values = tb.frac_lap_values(f, pts, 0.6)
        self.assertEqual(values.shape, (3,))
        self.assertTrue(np.all(values > 0))


    def test_non_finite(self):
        def f(pts):
            return np.full(len(pts), np.nan)
        with self.assertRaises(tb.EvaluationError):
            tb.frac_lap_quadrature(f, np.zeros(4), 0.5)


    def test_slow_decay_flagged(self):
        f = tb.RadialSum.single(np.zeros(5), tb.DistanceProfile(1.0, 0.5))
        result = tb.frac_lap_quadrature(f, np.zeros(5), 0.5)
        self.assertFalse(result.tail_ok)


    def test_decay_rate(self):
        from towerbench.operators.fractional import decay_rate
        self.assertAlmostEqual(decay_rate(8.0, 1.0), 3.0)
        self.assertEqual(decay_rate(0.0, 1.0), 0.0)


class GaussianTest(unittest.TestCase):
    """The quadrature and the extension against the Gaussian closed form."""

    def setUp(self):
        self.s = 0.5
        self.profile = tb.GaussianProfile(1.0, 1.0)
        self.f = tb.RadialSum.single(np.zeros(4), self.profile)


    def test_closed_form_at_center(self):
        # 4^s Gamma(N/2 + s) / Gamma(N/2) with N = 4, s = 1/2
        value = tb.frac_lap_exact_gaussian(0.5, np.zeros(4), self.profile, np.zeros(4))
        self.assertAlmostEqual(value, 2.0 * 0.75 * np.sqrt(np.pi), places=10)


    def test_quadrature(self):
        e = np.eye(4)
        for y in (np.zeros(4), 0.5 * e[0], 0.3 * e[1] + 0.6 * e[2]):
            exact = tb.frac_lap_exact_gaussian(self.s, np.zeros(4), self.profile, y)
            result = tb.frac_lap_quadrature(self.f, y, self.s)
            self.assertTrue(result.tail_ok)
            self.assertAlmostEqual(result.value / exact, 1.0, places=3)


    def test_extension_flux(self):
        ext = tb.ExtensionField(self.f, self.s)
        y = np.array([0.2, 0.0, 0.0, 0.0])
        exact = tb.frac_lap_exact_gaussian(self.s, np.zeros(4), self.profile, y)
        self.assertLess(abs(tb.extension_flux(ext, y) - exact) / exact, 5e-3)


class CovarianceTest(unittest.TestCase):
    """Translation, linearity and scaling of the quadrature."""

    def test_translation(self):
        p = tb.ProblemParams(4, 0.6)
        profile = tb.bubble_profile(p, 2.0)
        centers = np.array([[0.5, 0.0, 0.0, 0.0], [-0.5, 0.2, 0.0, 0.0]])
        shift = np.array([1.3, -0.7, 0.4, 2.1])
        y = np.array([0.1, 0.3, 0.0, -0.2])
        f = tb.RadialSum([(1.0, c, profile) for c in centers])
        g = tb.RadialSum([(1.0, c + shift, profile) for c in centers])
        a = tb.frac_lap_quadrature(f, y, 0.6).value
        b = tb.frac_lap_quadrature(g, y + shift, 0.6).value
        self.assertLess(abs(a - b) / abs(a), 1e-9)


    def test_linearity(self):
        p = tb.ProblemParams(4, 0.6)
        bubble = tb.RadialSum.single(np.zeros(4), tb.bubble_profile(p, 1.0))
        gauss = tb.RadialSum.single(np.array([0.5, 0.0, 0.0, 0.0]), tb.GaussianProfile(1.0, 1.0))
        y = np.array([0.2, 0.1, 0.0, 0.0])
        combined = tb.frac_lap_quadrature(bubble * 2.0 + gauss * -0.5, y, 0.6).value
        parts = (2.0 * tb.frac_lap_quadrature(bubble, y, 0.6).value
                 - 0.5 * tb.frac_lap_quadrature(gauss, y, 0.6).value)
        self.assertLess(abs(combined - parts) / abs(parts), 1e-3)


    def test_scaling(self):
        # f(k x) has fractional Laplacian k^{2s} ((-Delta)^s f)(k x)
        s, k = 0.7, 3.0
        y = np.array([0.1, 0.2, 0.0, 0.0, 0.0])
        f = tb.RadialSum.single(np.zeros(5), tb.GaussianProfile(1.0, 1.0))
        fk = tb.RadialSum.single(np.zeros(5), tb.GaussianProfile(1.0, k))
        a = tb.frac_lap_quadrature(fk, y, s).value
        b = tb.frac_lap_quadrature(f, k * y, s).value
        self.assertAlmostEqual(a / (k ** (2.0 * s) * b), 1.0, places=8)


if __name__ == '__main__':
    unittest.main()

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

"""Unit tests for the 'validation.pohozaev' module"""

import unittest
import numpy as np
from scipy import special

import towerbench.all as tb
from towerbench.validation.pohozaev import TRANSLATION_TERMS


def hemisphere_mass(N, s):
    """int u^{1-2s} dS over the unit upper hemisphere of R^{N+1}."""
    return tb.sphere_area(N) * 0.5 * special.beta(1.0 - s, N / 2.0)


class RuleTest(unittest.TestCase):

    def setUp(self):
        self.region = tb.HalfBallRegion((0.5, 0.0, -1.0, 0.0, 2.0), 1.5)

    def test_hemisphere(self):
        for s in (0.5, 0.75, 0.9):
            value = tb.hemisphere_quadrature(lambda y, t: np.ones(len(t)), self.region, s)
            exact = 1.5 ** (6.0 - 2.0 * s) * hemisphere_mass(5, s)
            self.assertAlmostEqual(value / exact, 1.0, places=6)


    def test_half_ball(self):
        s = 0.75
        value = tb.half_ball_quadrature(lambda y, t: np.ones(len(t)), self.region, s)
        exact = 1.5 ** (7.0 - 2.0 * s) / (7.0 - 2.0 * s) * hemisphere_mass(5, s)
        self.assertAlmostEqual(value / exact, 1.0, places=6)


    def test_ball_and_sphere(self):
        area = tb.sphere_area(5)
        ball = tb.ball_quadrature(lambda y: np.ones(len(y)), self.region)
        sphere = tb.sphere_quadrature(lambda y: np.ones(len(y)), self.region)
        self.assertAlmostEqual(ball / (area * 1.5 ** 5 / 5), 1.0, places=10)
        self.assertAlmostEqual(sphere / (area * 1.5 ** 4), 1.0, places=10)


    def test_quadratic(self):
        """The second moment of the ball, rho^2 |B| N/(N+2) summed over coordinates."""
        center = np.asarray(self.region.center)
        value = tb.ball_quadrature(lambda y: np.sum((y - center) ** 2, axis=1), self.region)
        exact = tb.sphere_area(5) * 1.5 ** 7 / 7
        self.assertAlmostEqual(value / exact, 1.0, places=10)


    def test_region(self):
        self.assertRaises(ValueError, tb.HalfBallRegion, (0.0, 0.0, 0.0, 0.0), 0.0)
        moved = self.region.translated([1.0, 0.0, 0.0, 0.0, 0.0])
        self.assertEqual(moved.center[0], 1.5)
        self.assertEqual(moved.radius, 1.5)


class IdentityTest(unittest.TestCase):
    """An exact solution: one bubble, K = 1, eps = 0."""

    def setUp(self):
        self.p = tb.ProblemParams(4, 0.5)
        self.K = tb.ConstantWeight(4)
        self.region = tb.HalfBallRegion((0.0, 0.0, 0.0, 0.0), 2.0)

    def bubble(self, i):
        center = 0.5 * np.eye(4)[i - 1]
        return tb.RadialSum.single(center, tb.bubble_profile(self.p, 1.0))

    def test_translation(self):
        for i in (3, 4):
            report = tb.pohozaev_translation(self.bubble(i), self.K, self.region, i, self.p)
            self.assertEqual(report.identity, 'translation')
            self.assertEqual(sorted(report.terms), sorted(TRANSLATION_TERMS))
            self.assertLess(report.relative, 1e-2)


    def test_translation_refined(self):
        report = tb.pohozaev_translation(self.bubble(3), self.K, self.region, 3, self.p,
                                         check=True)
        self.assertLess(report.relative, 1e-2)
        self.assertEqual(report.nodes['height'], 2 * tb.DEFAULT_SPEC.height_nodes)


    def test_scaling(self):
        report = tb.pohozaev_scaling(self.bubble(3), self.K, self.region, self.p)
        self.assertEqual(len(report.terms), 6)
        self.assertLess(report.relative, 1e-2)


    def test_half_radius(self):
        region = tb.HalfBallRegion((0.0, 0.0, 0.0, 0.0), 1.0)
        u = self.bubble(3)
        self.assertLess(tb.pohozaev_translation(u, self.K, region, 3, self.p).relative, 1e-2)
        self.assertLess(tb.pohozaev_scaling(u, self.K, region, self.p).relative, 1e-2)


    def test_translated(self):
        """Moving the bubble and the region together leaves every term unchanged."""
        shift = np.array([0.4, -1.2, 0.3, 0.7])
        u = self.bubble(3)
        moved = tb.RadialSum.single(u.terms[0].center + shift, u.terms[0].profile)
        region = self.region.translated(shift)
        for compute in (lambda v, r: tb.pohozaev_translation(v, self.K, r, 3, self.p),
                        lambda v, r: tb.pohozaev_scaling(v, self.K, r, self.p)):
            a = compute(u, self.region)
            b = compute(moved, region)
            scale = max(abs(v) for v in a.terms.values())
            for name, value in a.terms.items():
                self.assertLess(abs(b.terms[name] - value), 1e-8 * scale, name)


    def test_perturbed_exponent(self):
        """With eps > 0 a single bubble no longer solves the equation."""
        p = tb.ProblemParams(4, 0.5, 0.2)
        u = self.bubble(3)
        exact = tb.pohozaev_scaling(u, self.K, self.region, self.p)
        perturbed = tb.pohozaev_scaling(u, self.K, self.region, p)
        self.assertGreater(perturbed.relative, 1e-2)
        self.assertGreater(perturbed.relative, 5.0 * exact.relative)


    def test_direction(self):
        u = self.bubble(3)
        self.assertRaises(tb.DirectionError, tb.pohozaev_translation, u, self.K, self.region, 2,
                          self.p)
        self.assertRaises(tb.DirectionError, tb.pohozaev_translation, u, self.K, self.region, 5,
                          self.p)


    def test_needs_radial_sum(self):
        self.assertRaises(TypeError, tb.pohozaev_scaling, lambda y: y[:, 0], self.K,
                          self.region, self.p)


if __name__ == '__main__':
    unittest.main()

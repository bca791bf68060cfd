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

"""Unit tests for the 'problem' module"""

import math
import unittest

import towerbench.all as tb


class ProblemParamsTest(unittest.TestCase):

    def setUp(self):
        self.p = tb.ProblemParams(5, 0.9)

    def test_exponents(self):
        self.assertAlmostEqual(self.p.decay, 3.2)
        self.assertAlmostEqual(self.p.two_star, 3.125)
        self.assertAlmostEqual(self.p.critical_power, 2.125)
        self.assertAlmostEqual(self.p.tau, 0.375)
        self.assertAlmostEqual(self.p.power, self.p.critical_power)


    def test_perturbed_power(self):
        p = tb.ProblemParams(5, 0.9, 0.01, -1)
        self.assertAlmostEqual(p.power, 2.115)
        self.assertAlmostEqual(p.energy_power, 3.115)


    def test_invalid(self):
        self.assertRaises(tb.ProblemError, tb.ProblemParams, 3, 0.5)
        self.assertRaises(tb.ProblemError, tb.ProblemParams, 17, 0.5)
        self.assertRaises(tb.ProblemError, tb.ProblemParams, 5, 1.0)
        self.assertRaises(tb.ProblemError, tb.ProblemParams, 5, 0.2)
        self.assertRaises(tb.ProblemError, tb.ProblemParams, 5, 0.9, -1e-3)
        self.assertRaises(tb.ProblemError, tb.ProblemParams, 5, 0.9, 0.0, 0)
        # callers catching the builtin still work
        self.assertRaises(ValueError, tb.ProblemParams, 5, 0.2)


    def test_frozen(self):
        with self.assertRaises(Exception):
            self.p.N = 6


class WindowTest(unittest.TestCase):

    def test_window(self):
        s_min, s_max = tb.admissible_s_window(4)
        self.assertAlmostEqual(s_min, 0.381966, places=6)
        self.assertEqual(s_max, 1.0)

        s_min = tb.admissible_s_window(5)[0]
        self.assertAlmostEqual(s_min, (6 - math.sqrt(24)) / 4.0)


    def test_admissible(self):
        self.assertTrue(tb.is_admissible(5, 0.9))
        self.assertFalse(tb.is_admissible(4, 0.3))
        self.assertRaises(tb.ProblemError, tb.admissible_s_window, 3)


class ConstantsTest(unittest.TestCase):

    def test_sphere_area(self):
        self.assertAlmostEqual(tb.sphere_area(2), 2 * math.pi)
        self.assertAlmostEqual(tb.sphere_area(3), 4 * math.pi)
        self.assertAlmostEqual(tb.sphere_area(4), 2 * math.pi ** 2)


    def test_bubble_constant(self):
        self.assertAlmostEqual(tb.bubble_constant(5, 0.5), 16.0, places=10)


    def test_half_laplacian_constants(self):
        # the half Laplacian on the line: c = 1/pi, Poisson kernel 1/pi, d = 1
        self.assertAlmostEqual(tb.operator_constant(1, 0.5), 1.0 / math.pi)
        self.assertAlmostEqual(tb.kernel_constant(1, 0.5), 1.0 / math.pi)
        self.assertAlmostEqual(tb.extension_constant(0.5), 1.0)


    def test_operator_constant_laplacian_limit(self):
        # c_{N,s} / s -> Gamma(N/2) / pi^(N/2) as s -> 0
        N = 5
        small = tb.operator_constant(N, 1e-8) / 1e-8
        self.assertAlmostEqual(small, math.gamma(N / 2.0) / math.pi ** (N / 2.0), places=5)


if __name__ == '__main__':
    unittest.main()

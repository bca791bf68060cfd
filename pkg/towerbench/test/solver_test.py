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

"""Unit tests for the 'reduction.solver' module"""

import math
import unittest
import numpy as np

import towerbench.all as tb


class BalanceTest(unittest.TestCase):

    def setUp(self):
        self.box = tb.SearchBox(0.05, 20.0, np.zeros(4), np.ones(4))

    def test_closed_form(self):
        t = tb.closed_form_t(2.0, 3.0, 3.2)
        self.assertAlmostEqual(t, 1.5 ** (1 / 1.2))
        self.assertAlmostEqual(tb.balance(t, 2.0, 3.0, 3.2) * t ** 4.2, 0.0, places=12)


    def test_newton(self):
        t_cf = tb.closed_form_t(2.0, 3.0, 3.2)
        for start in (0.05, 1.0, 20.0):
            t, iterations = tb.newton_t(2.0, 3.0, 3.2, start, self.box)
            self.assertLess(abs(t - t_cf) / t_cf, 1e-10)
            self.assertGreater(iterations, 0)


    def test_newton_random_starts(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            B1, a = rng.uniform(0.2, 5.0), rng.uniform(2.5, 4.0)
            B3 = B1 * math.exp(rng.uniform(math.log(0.1), math.log(10.0)) * (a - 2.0))
            t_cf = tb.closed_form_t(B1, B3, a)
            start = math.exp(rng.uniform(math.log(self.box.t_min), math.log(self.box.t_max)))
            t, _ = tb.newton_t(B1, B3, a, start, self.box)
            self.assertLess(abs(t - t_cf) / t_cf, 1e-10, (B1, B3, a, start))


    def test_newton_budget(self):
        self.assertRaises(tb.NoRootError, tb.newton_t, 2.0, 3.0, 3.2, 20.0, self.box,
                          max_iter=1)


class WeightRootTest(unittest.TestCase):

    def setUp(self):
        self.K = tb.WeightField.default(5)
        self.box = tb.default_box(self.K)

    def test_default_box(self):
        self.assertTrue(np.allclose(self.box.lower, self.K.v0 - 0.1))
        self.assertTrue(np.allclose(self.box.upper, self.K.v0 + 0.1))
        self.assertEqual((self.box.t_min, self.box.t_max), (0.05, 20.0))


    def test_newton_v(self):
        start = self.K.v0 + np.array([0.05, -0.03, 0.02, 0.04])
        v, _ = tb.newton_v(self.K, start, self.box)
        self.assertTrue(np.allclose(v, self.K.v0, atol=1e-10))


    def test_newton_v_random_starts(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            start = rng.uniform(self.box.lower, self.box.upper)
            v, _ = tb.newton_v(self.K, start, self.box)
            self.assertTrue(np.allclose(v, self.K.v0, atol=1e-10), start)


    def test_boundary_signs(self):
        signs = tb.boundary_signs(self.K, self.box, 2.0, 3.0, 3.2)
        self.assertEqual(len(signs), 5)
        self.assertEqual(signs[0], (1, -1))
        self.assertTrue(all(lo * hi < 0 for lo, hi in signs))


class SolveTest(unittest.TestCase):

    def setUp(self):
        self.p = tb.ProblemParams(5, 0.9)
        self.K = tb.WeightField.default(5)
        self.constants = tb.Constants(2.0, 1.0, 3.0)

    def test_given_constants(self):
        sol = tb.solve_reduced(self.p, self.K, constants=self.constants)
        self.assertLess(abs(sol.t_star - sol.t_closed_form) / sol.t_closed_form, 1e-10)
        self.assertAlmostEqual(sol.rbar_star, self.K.r0, places=10)
        self.assertTrue(np.allclose(sol.ybar_star, self.K.y0_pp, atol=1e-10))
        self.assertLess(sol.residual_norm, 1e-9)
        self.assertTrue(sol.boundary_sign_ok)
        self.assertEqual((sol.B1, sol.B2, sol.B3), (2.0, 1.0, 3.0))


    def test_window(self):
        t_cf = tb.closed_form_t(2.0, 3.0, self.p.decay)
        box = tb.SearchBox(2.0 * t_cf, 20.0, self.K.v0 - 0.1, self.K.v0 + 0.1)
        self.assertRaises(tb.WindowError, tb.solve_reduced, self.p, self.K, box,
                          constants=self.constants)


    def test_positive_constants(self):
        self.assertRaises(tb.NumericalError, tb.solve_reduced, self.p, self.K,
                          constants=tb.Constants(-1.0, 1.0, 3.0))


    def test_computed_constants(self):
        sol = tb.solve_reduced(self.p, self.K)
        self.assertTrue(sol.B1 > 0 and sol.B3 > 0)
        expected = (sol.B3 / sol.B1) ** (1 / (self.p.decay - 2))
        self.assertTrue(math.isclose(sol.t_closed_form, expected, rel_tol=1e-12))
        self.assertLess(abs(sol.t_star - expected) / expected, 1e-10)


if __name__ == '__main__':
    unittest.main()

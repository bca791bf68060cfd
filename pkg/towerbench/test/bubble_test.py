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

"""Unit tests for the 'bubble' module"""

import math
import unittest
import numpy as np

import towerbench.all as tb


class BubbleTest(unittest.TestCase):

    def setUp(self):
        self.p = tb.ProblemParams(5, 0.9)
        self.C = tb.bubble_constant(5, 0.9)

    def test_peak(self):
        b = tb.Bubble.unit(5)
        self.assertAlmostEqual(tb.bubble_value(self.p, b, np.zeros(5)), self.C)

        b = tb.Bubble((1.0, 2.0, 0.0, 0.0, 0.0), 4.0)
        peak = tb.bubble_value(self.p, b, np.array([1.0, 2.0, 0.0, 0.0, 0.0]))
        self.assertAlmostEqual(peak / self.C, 4.0 ** 1.6)


    def test_decay(self):
        b = tb.Bubble.unit(5)
        far = tb.bubble_value(self.p, b, np.array([1e3, 0.0, 0.0, 0.0, 0.0]))
        self.assertAlmostEqual(far * 1e3 ** 3.2 / self.C, 1.0, places=5)


    def test_profile_matches_value(self):
        b = tb.Bubble((0.5, 0.0, 0.0, 0.0, 0.0), 3.0)
        pts = np.random.RandomState(0).randn(20, 5)
        q = np.sum((pts - np.array(b.center)) ** 2, axis=1)
        profile = tb.bubble_profile(self.p, 3.0)
        self.assertTrue(np.allclose(profile(q), tb.bubble_value(self.p, b, pts)))
        cubed = tb.bubble_profile(self.p, 3.0, 3.0)
        self.assertTrue(np.allclose(cubed(q), tb.bubble_value(self.p, b, pts) ** 3))


    def test_invalid(self):
        self.assertRaises(tb.ConfigurationError, tb.Bubble, (0.0,) * 5, 0.0)
        self.assertRaises(tb.ConfigurationError, tb.bubble_value, self.p,
                          tb.Bubble.unit(4), np.zeros(4))


class TowerTest(unittest.TestCase):

    def setUp(self):
        self.p = tb.ProblemParams(5, 0.9)
        self.cfg = tb.TowerConfig(6, 2.0, (0.5, -0.5, 0.0), 3.0)

    def test_centers(self):
        centers = tb.tower_centers(self.cfg)
        self.assertEqual(centers.shape, (6, 5))
        self.assertTrue(np.allclose(centers[0], [2.0, 0.0, 0.5, -0.5, 0.0]))
        self.assertTrue(np.allclose(np.linalg.norm(centers[:, :2], axis=1), 2.0))
        gaps = np.linalg.norm(centers[1:] - centers[:-1], axis=1)
        self.assertTrue(np.allclose(gaps, self.cfg.min_distance()))
        self.assertAlmostEqual(self.cfg.min_distance(), 2.0)


    def test_single_bubble_distance(self):
        self.assertEqual(tb.TowerConfig(1, 1.0, (0.0,) * 3, 1.0).min_distance(), math.inf)


    def test_value_is_sum(self):
        pts = np.random.RandomState(1).randn(10, 5)
        total = sum(tb.bubble_value(self.p, b, pts) for b in
                    [tb.Bubble(tuple(x), 3.0) for x in tb.tower_centers(self.cfg)])
        self.assertTrue(np.allclose(tb.tower_value(self.p, self.cfg, pts), total))
        Z = tb.bubble_profile_sum(self.p, self.cfg)
        self.assertTrue(np.allclose(Z(pts), total))


    def test_symmetry(self):
        pts = np.random.RandomState(2).randn(30, 5) + [2.0, 0.0, 0.0, 0.0, 0.0]
        Z = tb.tower_value(self.p, self.cfg, pts)
        self.assertTrue(np.allclose(tb.tower_value(self.p, self.cfg,
                                                   tb.rotate_tower(self.cfg, pts)), Z))
        self.assertTrue(np.allclose(tb.tower_value(self.p, self.cfg, tb.reflect_y2(pts)), Z))
        # m rotations return every point to itself
        self.assertTrue(np.allclose(tb.rotate_tower(self.cfg, pts, 6), pts))


    def test_invalid(self):
        self.assertRaises(tb.ConfigurationError, tb.TowerConfig, 0, 1.0, (0.0,) * 3, 1.0)
        self.assertRaises(tb.ConfigurationError, tb.TowerConfig, 2, -1.0, (0.0,) * 3, 1.0)
        self.assertRaises(tb.ConfigurationError, tb.TowerConfig, 2, 1.0, (0.0,) * 3, 0.0)


class DerivativeTest(unittest.TestCase):

    def setUp(self):
        self.p = tb.ProblemParams(5, 0.9)
        self.cfg = tb.TowerConfig(4, 1.5, (0.2, 0.0, -0.1), 2.0)
        self.pts = np.random.RandomState(3).randn(100, 5) + tb.tower_centers(self.cfg)[1]

    def _bubble_(self, cfg, j):
        return tb.bubble_value(self.p, tb.Bubble(tuple(tb.tower_centers(cfg)[j - 1]), cfg.lam),
                               self.pts)

    def _check_(self, l, up, down, h):
        j = 2
        fd = (self._bubble_(up, j) - self._bubble_(down, j)) / (2 * h)
        exact = tb.z_derivative(self.p, self.cfg, j, l, self.pts)
        scale = np.abs(fd).max()
        self.assertLess(np.abs(exact - fd).max() / scale, 1e-6)

    def test_lambda(self):
        h = 1e-6
        c = self.cfg
        self._check_(1, tb.TowerConfig(c.m, c.rbar, c.ybar, c.lam + h),
                     tb.TowerConfig(c.m, c.rbar, c.ybar, c.lam - h), h)


    def test_rbar(self):
        h = 1e-6
        c = self.cfg
        self._check_(2, tb.TowerConfig(c.m, c.rbar + h, c.ybar, c.lam),
                     tb.TowerConfig(c.m, c.rbar - h, c.ybar, c.lam), h)


    def test_ybar(self):
        h = 1e-6
        c = self.cfg
        for l in (3, 4, 5):
            shift = np.eye(3)[l - 3] * h
            self._check_(l, tb.TowerConfig(c.m, c.rbar, tuple(np.add(c.ybar, shift)), c.lam),
                         tb.TowerConfig(c.m, c.rbar, tuple(np.subtract(c.ybar, shift)), c.lam), h)


    def test_invalid_indices(self):
        y = np.zeros(5)
        self.assertRaises(tb.DirectionError, tb.z_derivative, self.p, self.cfg, 0, 1, y)
        self.assertRaises(tb.DirectionError, tb.z_derivative, self.p, self.cfg, 5, 1, y)
        self.assertRaises(tb.DirectionError, tb.z_derivative, self.p, self.cfg, 1, 6, y)
        self.assertRaises(IndexError, tb.z_derivative, self.p, self.cfg, 1, 0, y)


    def test_direction_weight(self):
        self.assertEqual(tb.direction_weight(1), -1)
        for l in range(2, 6):
            self.assertEqual(tb.direction_weight(l), 1)


if __name__ == '__main__':
    unittest.main()

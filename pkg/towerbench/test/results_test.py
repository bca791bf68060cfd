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

"""Unit tests for the 'results' module"""

import io
import unittest

import towerbench
import towerbench.all as tb
from towerbench.results import format_cell, guess_type


@tb.tabulated
def experiment(n, scale=2.0):
    return tb.ResultTable([[i, scale * i] for i in range(n)], ['i', 'value'],
                          properties=dict(total=n))


class ResultTableTest(unittest.TestCase):

    def test_tabulated(self):
        table = experiment(3)
        self.assertEqual(len(table), 3)
        self.assertEqual(table.columns, ['i', 'value'])
        self.assertTrue(table.algorithm.endswith('.experiment'))
        self.assertEqual(table.arguments, dict(n=3, scale=2.0))
        self.assertEqual(table.properties, dict(total=3))


    def test_column(self):
        table = experiment(4, scale=0.5)
        self.assertEqual(table.column('value'), [0.0, 0.5, 1.0, 1.5])


    def test_tabulated_plain_rows(self):

        @tb.tabulated
        def rows():
            return [[1, 2]]

        table = rows()
        self.assertEqual(table, [[1, 2]])
        self.assertEqual(table.columns, [])


class CsvTest(unittest.TestCase):

    def test_format_cell(self):
        self.assertEqual(format_cell(None), '')
        self.assertEqual(format_cell(False), '0')
        self.assertEqual(format_cell(3), '3')
        self.assertEqual(format_cell(1.0 / 3.0), repr(1.0 / 3.0))


    def test_guess_type(self):
        self.assertEqual(guess_type('7'), 7)
        self.assertEqual(guess_type('1e-3'), 1e-3)
        self.assertEqual(guess_type('pass'), 'pass')
        self.assertEqual(guess_type(''), None)


    def test_write_read(self):
        table = experiment(3)
        out = io.StringIO()
        tb.write_table(table, out, tb.header_comment(seed=4, params='abc'))
        text = out.getvalue()
        self.assertTrue(text.startswith('# towerbench {0} seed=4 params=abc\n'.format(
            towerbench.__version__)))
        self.assertNotIn('\r', text)

        back = tb.read_table(io.StringIO(text))
        self.assertEqual(back.columns, ['i', 'value'])
        self.assertEqual([list(r) for r in back], [[0, 0.0], [1, 2.0], [2, 4.0]])
        self.assertEqual(len(back.properties['comments']), 1)


    def test_header_only(self):
        out = io.StringIO()
        tb.write_table(tb.ResultTable([], ['a', 'b']), out)
        self.assertEqual(out.getvalue(), 'a,b\n')
        back = tb.read_table(io.StringIO(out.getvalue()))
        self.assertEqual(back.columns, ['a', 'b'])
        self.assertEqual(len(back), 0)


    def test_deterministic(self):
        first, second = io.StringIO(), io.StringIO()
        tb.write_table(experiment(5, 0.1), first)
        tb.write_table(experiment(5, 0.1), second)
        self.assertEqual(first.getvalue(), second.getvalue())


    def test_parameter_hash(self):
        self.assertEqual(tb.parameter_hash('x'), tb.parameter_hash('x'))
        self.assertNotEqual(tb.parameter_hash('x'), tb.parameter_hash('y'))
        self.assertEqual(len(tb.parameter_hash('x')), 12)


if __name__ == '__main__':
    unittest.main()

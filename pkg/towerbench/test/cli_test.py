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

"""Tests of the command-line front end, run in-process through main()"""

import io
import os
import shutil
import subprocess
import sys
import tempfile
import unittest
from unittest import mock

import towerbench
import towerbench.all as tb
from towerbench.selftest import CHECKS
from towerbench.cli import (EXIT_CONFIG, EXIT_FAILED_CHECKS, EXIT_NO_ROOT, EXIT_OK, build_parser,
                            main)


class CliTestCase(unittest.TestCase):

    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir)

    def write_config(self, text):
        path = os.path.join(self.dir, 'run.ini')
        with open(path, 'w') as f:
            f.write(text)
        return path

    def run_cli(self, *argv):
        out = io.StringIO()
        status = main(list(argv), stdout=out)
        return status, out.getvalue()

    def table(self, text):
        return tb.read_table(io.StringIO(text))


class ParserTest(CliTestCase):

    def test_subcommands(self):
        parser = build_parser()
        args = parser.parse_args(['plot-script', 'out.csv', '--log', '--x', 'm'])
        self.assertEqual(args.table, 'out.csv')
        self.assertTrue(args.log)
        self.assertEqual(args.x, 'm')
        self.assertEqual(args.fmt, 'png')
        args = parser.parse_args(['residual-sweep', '--threads', '3', '--seed', '4'])
        self.assertEqual((args.threads, args.seed), (3, 4))


    def test_config_round_trip(self):
        status, text = self.run_cli('config')
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(tb.RunConfig.from_string(text), tb.RunConfig())


class ErrorTest(CliTestCase):

    def test_config_errors(self):
        bad = self.write_config('[problem]\nN = 3\n')
        self.assertEqual(self.run_cli('constants', '--config', bad)[0], EXIT_CONFIG)
        unknown = self.write_config('[problem]\ndimension = 5\n')
        self.assertEqual(self.run_cli('constants', '--config', unknown)[0], EXIT_CONFIG)
        missing = os.path.join(self.dir, 'missing.ini')
        self.assertEqual(self.run_cli('lattice', '--config', missing)[0], EXIT_CONFIG)
        self.assertEqual(self.run_cli('lattice', '--threads', '0')[0], EXIT_CONFIG)


    def test_no_root(self):
        path = self.write_config('[solver]\nt_min = 5\nt_max = 20\n')
        status, text = self.run_cli('reduce', '--config', path)
        self.assertEqual(status, EXIT_NO_ROOT)
        self.assertEqual(text, '')


    def test_reduce_needs_weight(self):
        path = self.write_config('[weight]\nenabled = false\n')
        self.assertEqual(self.run_cli('reduce', '--config', path)[0], EXIT_CONFIG)


class ExperimentTest(CliTestCase):

    def test_lattice(self):
        status, text = self.run_cli('lattice', '--seed', '5')
        self.assertEqual(status, EXIT_OK)
        prefix = '# towerbench {0} seed=5 params='.format(towerbench.__version__)
        self.assertTrue(text.startswith(prefix))
        table = self.table(text)
        self.assertEqual(table.columns, ['m', 'lattice_sum', 'limit', 'zeta_limit'])
        self.assertEqual(table.column('m'), [2, 4, 8, 16, 32, 64])
        self.assertIn('seed=5', table.properties['comments'][0])


    def test_out_file(self):
        path = os.path.join(self.dir, 'lattice.csv')
        status, text = self.run_cli('lattice', '--out', path)
        self.assertEqual((status, text), (EXIT_OK, ''))
        with open(path) as f:
            self.assertEqual(len(self.table(f.read())), 6)


    def test_bubble_eval(self):
        path = self.write_config('[tower]\nlambda = 2\n[eval]\ncount = 2\n')
        status, text = self.run_cli('bubble-eval', '--config', path)
        self.assertEqual(status, EXIT_OK)
        table = self.table(text)
        self.assertEqual(table.columns[:6], ['index', 'y_1', 'y_2', 'y_3', 'y_4', 'y_5'])
        self.assertEqual(len(table), 2)
        for row in table:
            values = dict(zip(table.columns, row))
            self.assertAlmostEqual(values['U'] / values['Z'], 1.0, places=12)
            self.assertLess(abs(values['frac_lap_quadrature'] / values['frac_lap'] - 1.0), 1e-3)
            self.assertEqual(values['tail_ok'], 1)


    def test_bubble_eval_empty(self):
        path = self.write_config('[eval]\ncount = 0\n')
        status, text = self.run_cli('bubble-eval', '--config', path)
        self.assertEqual(status, EXIT_OK)
        lines = text.strip().split('\n')
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[1].startswith('index,y_1'))


    def test_constants(self):
        path = self.write_config('[problem]\nN = 4\ns = 0.5\n[weight]\nenabled = false\n')
        status, text = self.run_cli('constants', '--config', path)
        self.assertEqual(status, EXIT_OK)
        values = dict(self.table(text))
        self.assertAlmostEqual(values['C'], tb.bubble_constant(4, 0.5))
        self.assertAlmostEqual(values['two_star'], 8.0 / 3.0)
        self.assertNotIn('B1', values)
        self.assertIn('kappa', values)


    def test_residual_sweep(self):
        path = self.write_config('[problem]\neps_list = 1e-3, 1e-4\n'
                                 '[grid]\nshells = 2\ndirections = 4\nfar_points = 20\n')
        status, text = self.run_cli('residual-sweep', '--config', path, '--threads', '2')
        self.assertEqual(status, EXIT_OK)
        table = self.table(text)
        self.assertEqual(table.column('eps'), [1e-3, 1e-4])
        self.assertIsNone(table[0][-1])
        self.assertIsInstance(table[1][-1], float)


    def test_pohozaev(self):
        path = self.write_config('[problem]\nN = 4\ns = 0.5\n[weight]\nenabled = false\n')
        status, text = self.run_cli('pohozaev', '--config', path)
        self.assertEqual(status, EXIT_OK)
        table = self.table(text)
        relative = [row[2] for row in table if row[1] == 'relative']
        self.assertEqual(len(relative), 2)
        self.assertTrue(all(r < 1e-2 for r in relative))


class SelftestTest(CliTestCase):

    def test_selftest(self):
        status, text = self.run_cli('selftest')
        table = self.table(text)
        failed = [row for row in table if row[1] != 'pass']
        self.assertEqual(failed, [])
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(table.column('check'), [name for name, _ in CHECKS])
        again = self.run_cli('selftest')[1]
        self.assertEqual(again, text)


    def test_failures(self):
        broken = [('broken', lambda p, rng, config: (False, 0.0, 'always fails'))]
        with mock.patch('towerbench.selftest.CHECKS', broken):
            status, text = self.run_cli('selftest')
        self.assertEqual(status, EXIT_FAILED_CHECKS)
        self.assertEqual(self.table(text)[0][:2], ['broken', 'fail'])


class PlotScriptTest(CliTestCase):

    def test_script(self):
        data = os.path.join(self.dir, 'lattice.csv')
        self.assertEqual(self.run_cli('lattice', '--out', data)[0], EXIT_OK)
        status, script = self.run_cli('plot-script', data)
        self.assertEqual(status, EXIT_OK)
        self.assertIn("row['lattice_sum']", script)
        self.assertIn("ax.set_xscale('log')", script)
        self.assertIn(repr(os.path.join(self.dir, 'lattice.png')), script)
        compile(script, 'plot.py', 'exec')


    def test_bad_column(self):
        data = os.path.join(self.dir, 'lattice.csv')
        self.run_cli('lattice', '--out', data)
        self.assertEqual(self.run_cli('plot-script', data, '--y', 'energy')[0], EXIT_CONFIG)
        self.assertEqual(self.run_cli('plot-script', data, '--fmt', 'bmp')[0], EXIT_CONFIG)


class ScriptTest(CliTestCase):
    """The installed console script, run as its own process."""

    def setUp(self):
        self.root = os.path.dirname(os.path.dirname(os.path.abspath(towerbench.__file__)))
        self.script = os.path.join(self.root, 'bin', 'run_towerbench.py')
        if not os.path.exists(self.script):
            self.skipTest('no source tree')
        CliTestCase.setUp(self)


    def test_name_leaves_package_importable(self):
        name = os.path.splitext(os.path.basename(self.script))[0]
        self.assertNotEqual(name, 'towerbench')


    def test_config(self):
        env = dict(os.environ)
        env['PYTHONPATH'] = os.pathsep.join(filter(None, [self.root, env.get('PYTHONPATH')]))
        done = subprocess.run([sys.executable, self.script, 'config'], cwd=self.dir, env=env,
                              stdout=subprocess.PIPE, stderr=subprocess.PIPE,
                              universal_newlines=True)
        self.assertEqual(done.returncode, EXIT_OK, done.stderr)
        self.assertTrue(done.stdout.startswith('[problem]'))


if __name__ == '__main__':
    unittest.main()

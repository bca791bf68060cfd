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
The command-line front end. Every subcommand is a function of the
configuration; its other arguments become command-line arguments, and
its docstring summary becomes the subcommand help.

Exit status: 0 on success, 1 when selftest finds a failing check, 2 for
configuration errors, 3 for numerical errors, 4 when the reduced solver
finds no root in its window.

"""

import argparse
import inspect
import logging
import sys

import towerbench
from towerbench.util import NumericalError
from towerbench.config import ConfigError, load_config
from towerbench.results import ResultTable, header_comment, read_table, write_table
from towerbench.experiments import (cmd_bubble_eval, cmd_constants, cmd_lattice, cmd_pohozaev,
                                    cmd_reduce, cmd_residual_sweep)
from towerbench.selftest import cmd_selftest
from towerbench.visualization import PlotError, plot_script
from towerbench.reduction.solver import NoRootError, WindowError


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECKS = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_NO_ROOT = 4

#arguments filled in by the front end, never by the user
IGNORE = ('config', 'threads')


def cmd_plot_script(config, table, x=None, y=None, log=False, fmt='png'):
    """
    Write a matplotlib script that plots a result CSV.

    Only the header of 'table' is read; the data stays in the file.

    """
    try:
        with open(table) as f:
            columns = read_table(f).columns
    except (IOError, OSError) as e:
        raise ConfigError('table', 'cannot read {0}: {1}'.format(table, e))
    try:
        return plot_script(table, columns, x, y, log or None, fmt)
    except PlotError as e:
        raise ConfigError('table', str(e))


def cmd_config(config):
    """Print the effective configuration; it parses back to itself."""
    return config.echo()


cmds = {
    'bubble-eval': cmd_bubble_eval,
    'residual-sweep': cmd_residual_sweep,
    'pohozaev': cmd_pohozaev,
    'reduce': cmd_reduce,
    'selftest': cmd_selftest,
    'constants': cmd_constants,
    'lattice': cmd_lattice,
    'plot-script': cmd_plot_script,
    'config': cmd_config,
}


def extract_help(string):
    """
    The summary of a docstring: its lines up to the first blank line.

    >>> extract_help('''
    ...     First line
    ...     continued.
    ...
    ...     Details.''')
    'First line\\ncontinued.'

    """
    lines = [l.strip() for l in (string or '').split('\n')]
    while lines and lines[0] == '':
        lines.pop(0)
    summary = []
    for line in lines:
        if line == '':
            break
        summary.append(line)
    return '\n'.join(summary)


def create_subparsers(add_parser, cmds, parents, ignore=IGNORE):
    """
    Add a subparser for each command, taking its arguments from the
    signature of the associated function.

    Args:
        * add_parser: The add_parser() function of an argparse._SubParsersAction
        * cmds: A dictionary from command names to functions.
        * parents: ArgumentParser instances to be parents for each subparser.
        * ignore: argument names supplied by the front end.

    """
    for cmd, f in sorted(cmds.items()):
        subparser = add_parser(cmd, help=extract_help(f.__doc__), parents=parents)
        subparser.set_defaults(func=f)
        for name, param in inspect.signature(f).parameters.items():
            if name in ignore:
                continue
            if param.default is inspect.Parameter.empty:
                subparser.add_argument(name)
            elif param.default is False:
                subparser.add_argument('--' + name, action='store_true')
            else:
                subparser.add_argument('--' + name, default=param.default)


def build_parser():
    parser_parent = argparse.ArgumentParser(add_help=False,
                                            description='args common to all')
    parser_parent.add_argument('--config', metavar='PATH',
                               help='INI configuration file; defaults apply without one')
    parser_parent.add_argument('--out', metavar='PATH',
                               help="output file, '-' for stdout; overrides output.path")
    parser_parent.add_argument('--seed', type=int, metavar='N',
                               help='random seed; overrides output.seed')
    parser_parent.add_argument('--threads', type=int, default=1, metavar='N',
                               help='worker threads for the experiments that use them')
    parser_parent.add_argument('-v', '--verbose', action='count', default=0,
                               help='log INFO with -v, DEBUG with -vv')

    parser = argparse.ArgumentParser(
        prog='towerbench',
        description='Numerical checks of bubble-tower solutions of fractional equations')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + towerbench.__version__)
    subparsers_adder = parser.add_subparsers(title='experiments', dest='command')
    subparsers_adder.required = True
    create_subparsers(subparsers_adder.add_parser, cmds, [parser_parent])
    return parser


def configure_logging(verbosity):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def _kwargs_(args, f):
    params = inspect.signature(f).parameters
    kwargs = dict((k, getattr(args, k)) for k in params if k not in IGNORE)
    if 'threads' in params:
        kwargs['threads'] = args.threads
    return kwargs


def _emit_(result, config, stream):
    if isinstance(result, ResultTable):
        comment = header_comment(config.seed, config.params_hash())
        write_table(result, stream, comment)
    else:
        stream.write(result)


def run(args, config, stdout=None):
    """Run the selected subcommand and write its output; returns the exit status."""
    result = args.func(config, **_kwargs_(args, args.func))
    path = config['output']['path']
    if path == '-':
        _emit_(result, config, stdout or sys.stdout)
    else:
        with open(path, 'w', newline='') as f:
            _emit_(result, config, f)
        logger.info('wrote %s', path)
    if isinstance(result, ResultTable) and result.properties.get('failures'):
        return EXIT_FAILED_CHECKS
    return EXIT_OK


def main(argv=None, stdout=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = load_config(args.config)
        if args.seed is not None:
            config = config.replaced('output', 'seed', args.seed)
        if args.out is not None:
            config = config.replaced('output', 'path', args.out)
        if args.threads < 1:
            raise ConfigError('threads', 'need at least one thread')
        return run(args, config, stdout)
    except ConfigError as e:
        logger.error('configuration error: %s', e)
        return EXIT_CONFIG
    except (NoRootError, WindowError) as e:
        logger.error('%s: %s', type(e).__name__, e)
        return EXIT_NO_ROOT
    except NumericalError as e:
        logger.error('%s: %s', type(e).__name__, e)
        return EXIT_NUMERICAL


if __name__ == '__main__':
    sys.exit(main())

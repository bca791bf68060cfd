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
Result tables produced by experiments, and utility functions for
writing them as CSV and reading them back.

"""

import csv
import hashlib
import inspect

from decorator import decorator

import towerbench


def _get_args_dict_(f, args, kwargs):
    bound = inspect.signature(f).bind(*args, **kwargs)
    bound.apply_defaults()
    return dict(bound.arguments)


@decorator
def tabulated(f, *args, **kwargs):
    """
    Decorator to automatically set the 'algorithm' and 'arguments'
    attributes of the rows returned by an experiment.

    The experiment may return a ResultTable, whose 'columns' and
    'properties' are kept, or any iterable of rows.

    """
    result = f(*args, **kwargs)
    columns = getattr(result, 'columns', None)
    props = getattr(result, 'properties', None)
    args_dict = _get_args_dict_(f, args, kwargs)
    fname = '.'.join([f.__module__, f.__name__])
    return ResultTable(result, columns, fname, args_dict, props)


class ResultTable(list):
    """
    A list of result rows with four extra attributes:

    * columns: the column names, one per row entry
    * algorithm: the experiment that generated these rows
    * arguments: the arguments given to 'algorithm'
    * properties: summary values of the run (a dict), such as a
      fitted slope.

    """
    def __init__(self, itr=(), columns=None, algorithm=None, arguments=None, properties=None):
        list.__init__(self, itr)
        self.columns = list(columns) if columns is not None else []
        self.algorithm = algorithm
        self.arguments = arguments
        self.properties = dict(properties) if properties is not None else {}


    def column(self, name):
        """Returns the values of the named column as a list."""
        idx = self.columns.index(name)
        return [row[idx] for row in self]


def format_cell(value):
    """
    Render one CSV cell. Floats use repr() so that output is
    reproducible to the last bit.

    >>> [format_cell(v) for v in (1, 0.1, None, True, 'x')]
    ['1', '0.1', '', '1', 'x']

    """
    if value is None:
        return ''
    if isinstance(value, bool):
        return '1' if value else '0'
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(float(value))
    if hasattr(value, 'dtype'):
        return format_cell(value.item())
    return str(value)


def guess_type(cell):
    """
    Try to convert a CSV cell to an int or float; empty cells become None.

    >>> [guess_type(c) for c in ('3', '2.5', '', 'abc')]
    [3, 2.5, None, 'abc']

    """
    if cell == '':
        return None
    try:
        return int(cell)
    except ValueError:
        try:
            return float(cell)
        except ValueError:
            return cell


def parameter_hash(text):
    """Short SHA-1 digest of the effective configuration text."""
    return hashlib.sha1(text.encode('utf-8')).hexdigest()[:12]


def header_comment(seed=None, params=None):
    """The comment line that starts every CSV file."""
    parts = ['# towerbench {0}'.format(towerbench.__version__)]
    if seed is not None:
        parts.append('seed={0}'.format(seed))
    if params is not None:
        parts.append('params={0}'.format(params))
    return ' '.join(parts)


def write_table(table, stream, comment=None):
    """
    Writes a ResultTable as CSV: comma separated, LF line endings, header
    row mandatory, optionally preceded by a '#' comment line.

    Args:
        * table: A ResultTable.
        * stream: An open text stream.
        * comment: Optional comment line, e.g. from header_comment().

    """
    if comment is not None:
        stream.write(comment.rstrip('\n') + '\n')
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(table.columns)
    for row in table:
        writer.writerow([format_cell(v) for v in row])


def read_table(stream):
    """
    Reads a CSV file written by write_table().

    Comment lines are returned in the 'comments' property.

    """
    lines = stream.read().split('\n')
    comments = [l for l in lines if l.startswith('#')]
    body = [l for l in lines if l and not l.startswith('#')]
    reader = csv.reader(body)
    try:
        columns = next(reader)
    except StopIteration:
        return ResultTable([], properties=dict(comments=comments))
    rows = [[guess_type(c) for c in row] for row in reader]
    return ResultTable(rows, columns, properties=dict(comments=comments))

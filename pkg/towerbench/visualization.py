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

"""Plotting scripts for result files.

Nothing here plots: plot_script() writes a standalone matplotlib script
that reads a CSV written by write_table() and saves one figure.

"""

import os


FORMATS = ('png', 'pdf', 'ps', 'svg', 'jpg', 'jpeg')

#(x, y, log axes) for the tables of the experiments, keyed by first column
DEFAULT_AXES = {
    'eps': ('eps', 'norm_total', True),
    'index': ('y_1', 'Z', False),
    'm': ('m', 'lattice_sum', True),
    'identity': ('term', 'value', False),
}


class PlotError(ValueError):
    pass


_TEMPLATE_ = '''\
"""Plot {y} against {x} from {path}."""

import csv

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt


def read(path):
    with open(path) as f:
        rows = [line for line in f if not line.startswith('#')]
    reader = csv.DictReader(rows)
    return list(reader)


def number(cell):
    try:
        return float(cell)
    except ValueError:
        return None


rows = read({path!r})
xs, ys = [], []
for row in rows:
    x, y = number(row[{x!r}]), number(row[{y!r}])
    if x is not None and y is not None:
        xs.append(x)
        ys.append(y)

fig, ax = plt.subplots()
ax.plot(xs, ys, 'o-')
ax.set_xlabel({x!r})
ax.set_ylabel({y!r})
{scales}fig.savefig({output!r})
'''


def default_axes(columns):
    """The (x, y, log) choice for a table with the given columns."""
    if not columns:
        raise PlotError('table has no columns')
    if columns[0] in DEFAULT_AXES:
        return DEFAULT_AXES[columns[0]]
    if len(columns) < 2:
        raise PlotError('need at least two columns to plot')
    return columns[0], columns[1], False


def plot_script(path, columns, x=None, y=None, log=None, fmt='png', output=None):
    """
    A matplotlib script plotting column y against column x of the CSV at
    'path'.

    Args:
        * path: the CSV file the script will read.
        * columns: its header, used to check and default x and y.
        * x, y: column names; default to the usual axes of the table.
        * log: log-log axes; defaults with the axes.
        * fmt: image format of the figure.
        * output: figure file; defaults to path with the format's extension.

    Returns:
        The script as a string.

    """
    if fmt not in FORMATS:
        raise PlotError('unknown format {0!r}; use one of {1}'.format(fmt, ', '.join(FORMATS)))
    dx, dy, dlog = default_axes(list(columns))
    x = x or dx
    y = y or dy
    log = dlog if log is None else log
    for name in (x, y):
        if name not in columns:
            raise PlotError('no column {0!r} in {1}'.format(name, path))
    output = output or os.path.splitext(path)[0] + '.' + fmt
    scales = "ax.set_xscale('log')\nax.set_yscale('log')\n" if log else ''
    return _TEMPLATE_.format(path=path, x=x, y=y, output=output, scales=scales)

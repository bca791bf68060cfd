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
Run configuration: a flat INI file with one section per concern.

Every key has a default, so an empty file is a valid configuration.
Unknown sections and keys are rejected, and every module precondition is
checked when the file is parsed, before anything is computed. Values
that depend on other values may be given as 'auto'; see the resolve_*
methods of RunConfig.

"""

import configparser

import numpy as np

from towerbench.problem import ProblemError, ProblemParams
from towerbench.quadrature import QuadratureError, QuadratureSpec
from towerbench.weight import ConstantWeight, WeightError, WeightField, default_hessian
from towerbench.results import parameter_hash
from towerbench.bubble import ConfigurationError, TowerConfig, tower_centers
from towerbench.reduction.scaling import lambda_from_t, m_from_eps
from towerbench.reduction.solver import SearchBox


AUTO = 'auto'

IDENTITIES = ('both', 'translation', 'scaling')


class ConfigError(Exception):
    """Invalid configuration; 'key' is the offending section.key."""

    def __init__(self, key, message):
        Exception.__init__(self, '{0}: {1}'.format(key, message))
        self.key = key


#############################################################
# value types
#############################################################

def _int_(text):
    return int(text)


def _float_(text):
    return float(text)


def _bool_(text):
    lowered = text.strip().lower()
    if lowered in ('1', 'true', 'yes', 'on'):
        return True
    if lowered in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError('expected a boolean, got {0!r}'.format(text))


def _floats_(text):
    text = text.strip()
    if not text:
        return ()
    return tuple(float(x) for x in text.split(','))


def _matrix_(text):
    return tuple(_floats_(row) for row in text.split(';'))


def _string_(text):
    return text.strip()


def _auto_(parse):
    def parse_auto(text):
        if text.strip().lower() == AUTO:
            return AUTO
        return parse(text)
    return parse_auto


def _render_(value):
    if value == AUTO:
        return AUTO
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        if value and isinstance(value[0], tuple):
            return '; '.join(_render_(row) for row in value)
        return ', '.join(_render_(x) for x in value)
    return str(value)


#section -> key -> (default text, parser)
SCHEMA = {
    'problem': [
        ('N', '5', _int_),
        ('s', '0.9', _float_),
        ('eps', '0.0', _float_),
        ('eps_list', '1e-4, 1e-5, 1e-6, 1e-7, 1e-8', _floats_),
        ('exponent_sign', '1', _int_),
    ],
    'tower': [
        ('m', AUTO, _auto_(_int_)),
        ('rbar', AUTO, _auto_(_float_)),
        ('ybar', AUTO, _auto_(_floats_)),
        ('lambda', AUTO, _auto_(_float_)),
        ('t', '1.0', _float_),
        ('offset', AUTO, _auto_(_floats_)),
    ],
    'weight': [
        ('enabled', 'true', _bool_),
        ('r0', '1.0', _float_),
        ('y0_pp', AUTO, _auto_(_floats_)),
        ('hessian', AUTO, _auto_(_matrix_)),
        ('cutoff', '0.5', _float_),
    ],
    'quadrature': [
        ('radial_nodes', '16', _int_),
        ('angular_nodes', '24', _int_),
        ('truncation_radius', '1000.0', _float_),
        ('inner_split', '0.01', _float_),
        ('tail_order', '1', _int_),
        ('panel_density', '4', _int_),
        ('sphere_nodes', '6', _int_),
        ('height_nodes', '16', _int_),
        ('ball_nodes', '12', _int_),
    ],
    'grid': [
        ('shells', '8', _int_),
        ('directions', '32', _int_),
        ('reach', '20.0', _float_),
        ('far_points', '10000', _int_),
        ('far_extent', '10.0', _float_),
    ],
    'eval': [
        ('start', AUTO, _auto_(_floats_)),
        ('stop', AUTO, _auto_(_floats_)),
        ('count', '3', _int_),
    ],
    'pohozaev': [
        ('radius', AUTO, _auto_(_float_)),
        ('shift', '0.5', _float_),
        ('index', '3', _int_),
        ('identity', 'both', _string_),
    ],
    'solver': [
        ('t_min', '0.05', _float_),
        ('t_max', '20.0', _float_),
        ('box_halfwidth', '0.1', _float_),
        ('tol', '1e-12', _float_),
        ('max_iter', '100', _int_),
        ('L0', '0.5', _float_),
        ('L1', '2.0', _float_),
    ],
    'tolerances': [
        ('iota', '0.0', _float_),
        ('sigma', '0.0', _float_),
        ('theta', '0.0', _float_),
        ('kappa', '0.5', _float_),
        ('delta', '0.1', _float_),
    ],
    'output': [
        ('path', '-', _string_),
        ('seed', '0', _int_),
    ],
}

SECTIONS = ('problem', 'tower', 'weight', 'quadrature', 'grid', 'eval', 'pohozaev',
            'solver', 'tolerances', 'output')


def _parser_(section, key):
    if section not in SCHEMA:
        raise ConfigError(section, 'unknown section')
    for name, _, parse in SCHEMA[section]:
        if name == key:
            return parse
    raise ConfigError('{0}.{1}'.format(section, key), 'unknown key')


#############################################################
# the configuration
#############################################################

class RunConfig(object):
    """
    Parsed and validated configuration.

    Values are reached as config[section][key]; keys left at 'auto' hold
    the string 'auto'.

    """
    def __init__(self, values=None):
        self.values = dict((section, dict((k, parse(d)) for k, d, parse in SCHEMA[section]))
                           for section in SECTIONS)
        for section, entries in (values or {}).items():
            for key, value in entries.items():
                self.values[section][key] = value
        self.validate()


    @classmethod
    def from_string(cls, text):
        parser = configparser.ConfigParser(interpolation=None)
        parser.optionxform = str
        try:
            parser.read_string(text)
        except configparser.Error as e:
            raise ConfigError('file', str(e).splitlines()[0])
        values = {}
        for section in parser.sections():
            if section not in SCHEMA:
                raise ConfigError(section, 'unknown section')
            for key, text in parser.items(section):
                parse = _parser_(section, key)
                try:
                    values.setdefault(section, {})[key] = parse(text)
                except ValueError as e:
                    raise ConfigError('{0}.{1}'.format(section, key), str(e))
        return cls(values)


    @classmethod
    def from_file(cls, path):
        try:
            with open(path) as f:
                text = f.read()
        except (IOError, OSError) as e:
            raise ConfigError('file', 'cannot read {0}: {1}'.format(path, e))
        return cls.from_string(text)


    def __getitem__(self, section):
        return self.values[section]


    def __eq__(self, other):
        return isinstance(other, RunConfig) and self.values == other.values


    def __ne__(self, other):
        return not self == other


    def replaced(self, section, key, value):
        """A copy with one value replaced; value may be text or parsed."""
        if isinstance(value, str):
            try:
                value = _parser_(section, key)(value)
            except ValueError as e:
                raise ConfigError('{0}.{1}'.format(section, key), str(e))
        _parser_(section, key)
        values = dict((s, dict(v)) for s, v in self.values.items())
        values[section][key] = value
        return RunConfig(values)


    def echo(self):
        """The configuration as INI text; from_string(echo()) equals self."""
        lines = []
        for section in SECTIONS:
            lines.append('[{0}]'.format(section))
            for key, _, _ in SCHEMA[section]:
                lines.append('{0} = {1}'.format(key, _render_(self.values[section][key])))
            lines.append('')
        return '\n'.join(lines)


    def params_hash(self):
        return parameter_hash(self.echo())


    @property
    def seed(self):
        return self.values['output']['seed']


    ##########################################################
    # validation
    ##########################################################

    def validate(self):
        self.problem_params()
        N = self['problem']['N']
        eps_list = self['problem']['eps_list']
        if any(e <= 0 for e in eps_list):
            raise ConfigError('problem.eps_list', 'entries must be positive')
        if any(b >= a for a, b in zip(eps_list[:-1], eps_list[1:])):
            raise ConfigError('problem.eps_list', 'must be strictly decreasing')
        self._check_length_('tower', 'offset', N - 1)
        self._check_length_('tower', 'ybar', N - 2)
        self._check_length_('weight', 'y0_pp', N - 2)
        self._check_length_('eval', 'start', N)
        self._check_length_('eval', 'stop', N)
        for key in ('rbar', 'lambda'):
            value = self['tower'][key]
            if value != AUTO and not value > 0:
                raise ConfigError('tower.{0}'.format(key), 'must be positive')
        if not self['tower']['t'] > 0:
            raise ConfigError('tower.t', 'must be positive')
        m = self['tower']['m']
        if m != AUTO and m < 1:
            raise ConfigError('tower.m', 'need at least one bubble')
        self.weight()
        self.quadrature()
        self.tower()
        grid = self['grid']
        for key in ('shells', 'directions'):
            if grid[key] < 1:
                raise ConfigError('grid.{0}'.format(key), 'must be at least 1')
        if grid['far_points'] < 0:
            raise ConfigError('grid.far_points', 'must be nonnegative')
        for key in ('reach', 'far_extent'):
            if not grid[key] > 0:
                raise ConfigError('grid.{0}'.format(key), 'must be positive')
        if self['eval']['count'] < 0:
            raise ConfigError('eval.count', 'must be nonnegative')
        poh = self['pohozaev']
        if poh['radius'] != AUTO and not poh['radius'] > 0:
            raise ConfigError('pohozaev.radius', 'must be positive')
        if not 3 <= poh['index'] <= N:
            raise ConfigError('pohozaev.index', 'must be in 3..{0}'.format(N))
        if poh['identity'] not in IDENTITIES:
            raise ConfigError('pohozaev.identity', 'must be one of {0}'.format(', '.join(IDENTITIES)))
        solver = self['solver']
        if not 0 < solver['t_min'] < solver['t_max']:
            raise ConfigError('solver.t_min', 'need 0 < t_min < t_max')
        if not 0 < solver['box_halfwidth'] <= self['weight']['cutoff'] / 4.0:
            raise ConfigError('solver.box_halfwidth', 'need 0 < box_halfwidth <= cutoff/4')
        if not solver['tol'] > 0:
            raise ConfigError('solver.tol', 'must be positive')
        if solver['max_iter'] < 1:
            raise ConfigError('solver.max_iter', 'must be at least 1')
        if not 0 < solver['L0'] < solver['L1']:
            raise ConfigError('solver.L0', 'need 0 < L0 < L1')
        if self['output']['seed'] < 0:
            raise ConfigError('output.seed', 'must be nonnegative')


    def _check_length_(self, section, key, length):
        value = self[section][key]
        if value != AUTO and len(value) != length:
            raise ConfigError('{0}.{1}'.format(section, key),
                              'expected {0} entries, got {1}'.format(length, len(value)))


    ##########################################################
    # resolution
    ##########################################################

    def problem_params(self, eps=None):
        pr = self['problem']
        try:
            return ProblemParams(pr['N'], pr['s'], pr['eps'] if eps is None else eps,
                                 pr['exponent_sign'])
        except ProblemError as e:
            msg = str(e)
            key = 'N' if 'dimension' in msg else 'eps' if 'eps' in msg else \
                'exponent_sign' if 'exponent_sign' in msg else 's'
            raise ConfigError('problem.{0}'.format(key), msg)


    def hessian(self):
        N = self['problem']['N']
        H = self['weight']['hessian']
        if H == AUTO:
            return default_hessian(N)
        if any(len(row) != len(H) for row in H):
            raise ConfigError('weight.hessian', 'must be a square matrix')
        return np.array(H, dtype=float)


    def weight(self):
        """The WeightField, or ConstantWeight when weight.enabled is false."""
        N = self['problem']['N']
        w = self['weight']
        try:
            if not w['enabled']:
                if not w['r0'] > 0:
                    raise WeightError('weight.r0 must be positive, got {0}'.format(w['r0']))
                return ConstantWeight(N)
            y0 = None if w['y0_pp'] == AUTO else w['y0_pp']
            return WeightField(N, w['r0'], y0, self.hessian(), w['cutoff'])
        except WeightError as e:
            msg = str(e)
            for key in ('hessian', 'y0_pp', 'r0', 'cutoff'):
                if key in msg:
                    raise ConfigError('weight.{0}'.format(key), msg)
            raise ConfigError('weight.hessian', msg)


    def quadrature(self):
        try:
            return QuadratureSpec(**self['quadrature'])
        except QuadratureError as e:
            msg = str(e)
            key = msg.split()[0] if msg.startswith('quadrature.') else 'quadrature.inner_split'
            raise ConfigError(key, msg)


    def critical_point(self):
        """(r0, y0'') as an array of length N-1."""
        N = self['problem']['N']
        w = self['weight']
        y0 = np.zeros(N - 2) if w['y0_pp'] == AUTO else np.asarray(w['y0_pp'], dtype=float)
        return np.concatenate([[w['r0']], y0])


    def resolve_m(self, p=None):
        p = p or self.problem_params()
        m = self['tower']['m']
        if m != AUTO:
            return m
        if p.eps > 0:
            try:
                return m_from_eps(p, p.eps)
            except ProblemError as e:
                raise ConfigError('problem.eps', str(e))
        return 1


    def tower(self, p=None):
        """The TowerConfig with every 'auto' resolved."""
        p = p or self.problem_params()
        tw = self['tower']
        m = self.resolve_m(p)
        offset = np.zeros(p.N - 1) if tw['offset'] == AUTO else np.asarray(tw['offset'])
        v = self.critical_point() + offset
        rbar = v[0] if tw['rbar'] == AUTO else tw['rbar']
        ybar = tuple(v[1:]) if tw['ybar'] == AUTO else tw['ybar']
        lam = lambda_from_t(p, tw['t'], m) if tw['lambda'] == AUTO else tw['lambda']
        try:
            return TowerConfig(m, float(rbar), ybar, float(lam))
        except ConfigurationError as e:
            raise ConfigError('tower.lambda' if 'lambda' in str(e) else 'tower.rbar', str(e))


    def eval_points(self, p=None):
        """eval.count points on the segment from eval.start to eval.stop."""
        p = p or self.problem_params()
        cfg = self.tower(p)
        ev = self['eval']
        x1 = tower_centers(cfg)[0]
        start = x1 if ev['start'] == AUTO else np.asarray(ev['start'], dtype=float)
        if ev['stop'] == AUTO:
            stop = x1 + 2.0 / cfg.lam * np.eye(p.N)[0]
        else:
            stop = np.asarray(ev['stop'], dtype=float)
        count = ev['count']
        if count == 0:
            return np.zeros((0, p.N))
        frac = np.linspace(0.0, 1.0, count) if count > 1 else np.zeros(1)
        return start + frac[:, None] * (stop - start)


    def search_box(self):
        """The solver box: [t_min, t_max] x (v0 +- box_halfwidth)."""
        sv = self['solver']
        h = sv['box_halfwidth']
        v0 = self.critical_point()
        return SearchBox(sv['t_min'], sv['t_max'], v0 - h, v0 + h)


    def pohozaev_radius(self, cfg):
        radius = self['pohozaev']['radius']
        return 2.0 / cfg.lam if radius == AUTO else radius


    def report_exponents(self):
        """The report-only proof exponents of the [tolerances] section."""
        return dict(self['tolerances'])


def default_config():
    return RunConfig()


def load_config(path=None):
    """The configuration at path, or the defaults for None."""
    if path is None:
        return RunConfig()
    return RunConfig.from_file(path)


import logging
import numpy as np
import vplb.errors as er
from vplb.core.tableau import TABLEAUS, tableau as get_tableau
from vplb.systems.problems import PROBLEMS, get_problem


def parse_flag(value):
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ('on', 'true', 'yes', '1'):
        return True
    if text in ('off', 'false', 'no', '0'):
        return False
    raise er.ConfigurationError("Expected on/off, got %r" % value)


def _optional_float(value):
    if value is None or str(value).strip().lower() in ('', 'none', 'cfl'):
        return None
    return float(value)


def _window(value):
    if isinstance(value, str):
        value = value.replace(',', ' ').split()
    a, b = (float(q) for q in value)
    return (a, b)


# converters for values read from files and the command line
TYPES = {
    'problem': str, 'method': str, 'tableau': str, 'bc': str, 'out': str,
    'nu': float, 'cfl': float, 't_end': float, 'dt': _optional_float,
    'x_min': float, 'x_max': float, 'v_min': float, 'v_max': float,
    'nx': int, 'nv': int, 'p': int, 'snapshot_every': int, 'diagnostics_every': int,
    'clean': parse_flag, 'extended_cells': parse_flag, 'inconsistent_quadrature': parse_flag,
    'field_free': parse_flag, 'advection': parse_flag, 'damping_window': _window,
}

# file keys and CLI flags that differ from the attribute names
ALIASES = {'vmin': 'v_min', 'vmax': 'v_max', 'xmin': 'x_min', 'xmax': 'x_max'}


def read_config_file(path):
    """
    Flat key = value file; '#' starts a comment. Returns converted values
    keyed by RunConfig attribute.
    """
    values = {}
    with open(path) as fh:
        for number, line in enumerate(fh, 1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise er.ConfigurationError("%s:%i: expected key = value" % (path, number))
            key, value = (s.strip() for s in line.split('=', 1))
            key = ALIASES.get(key.replace('-', '_'), key.replace('-', '_'))
            if key not in TYPES:
                raise er.ConfigurationError("%s:%i: unknown key %r" % (path, number, key))
            values[key] = TYPES[key](value)
    return values


class RunConfig(object):
    """
    Parameters of one run: the problem's defaults overridden by keyword
    arguments. Values are checked as they are set; validate() checks the
    rules that involve several fields and applies the problem's forced
    settings.

    Attributes:
        problem, method ('direct' | 'mm'), nu, nx, nv, p, x_min, x_max,
        v_min, v_max, cfl, dt (None: CFL rule), t_end, tableau, bc,
        clean, extended_cells, inconsistent_quadrature, field_free,
        advection, out (directory or None), snapshot_every (0: none),
        diagnostics_every, damping_window ((t_a, t_b) or None)
    """

    def __init__(self, problem='landau', **overrides):
        self.problem = problem
        defaults = dict(get_problem(problem).defaults)
        defaults.update(method='direct', clean=True, extended_cells=True,
                        inconsistent_quadrature=False, out=None, snapshot_every=0,
                        diagnostics_every=1,
                        damping_window=getattr(get_problem(problem), 'damping_window', None))
        for key in overrides:
            if key not in TYPES:
                raise er.ConfigurationError("Unknown configuration key %r" % key)
        defaults.update(dict((k, v) for k, v in overrides.items() if v is not None))
        for key, value in defaults.items():
            setattr(self, key, value)
        self.validate()

    @property
    def problem(self):
        return self._problem

    @problem.setter
    def problem(self, value):
        if value not in PROBLEMS:
            raise er.ConfigurationError("Unknown problem %r" % value)
        self._problem = value

    @property
    def method(self):
        return self._method

    @method.setter
    def method(self, value):
        if value not in ('direct', 'mm'):
            raise er.ConfigurationError("Method must be 'direct' or 'mm', got %r" % value)
        self._method = value

    @property
    def nu(self):
        return self._nu

    @nu.setter
    def nu(self, value):
        if value < 0:
            raise er.ConfigurationError("Collision frequency cannot be negative")
        self._nu = float(value)

    @property
    def nx(self):
        return self._nx

    @nx.setter
    def nx(self, value):
        if int(value) != value or value < 1:
            raise er.ConfigurationError("nx must be a positive integer, got %r" % value)
        self._nx = int(value)

    @property
    def nv(self):
        return self._nv

    @nv.setter
    def nv(self, value):
        if int(value) != value or value < 1:
            raise er.ConfigurationError("nv must be a positive integer, got %r" % value)
        self._nv = int(value)

    @property
    def p(self):
        return self._p

    @p.setter
    def p(self, value):
        if int(value) != value or value < 0:
            raise er.ConfigurationError("p must be a non-negative integer, got %r" % value)
        self._p = int(value)

    @property
    def cfl(self):
        return self._cfl

    @cfl.setter
    def cfl(self, value):
        if not value > 0:
            raise er.ConfigurationError("CFL number must be positive")
        self._cfl = float(value)

    @property
    def dt(self):
        return self._dt

    @dt.setter
    def dt(self, value):
        if value is not None and not value > 0:
            raise er.ConfigurationError("Time step must be positive")
        self._dt = value

    @property
    def t_end(self):
        return self._t_end

    @t_end.setter
    def t_end(self, value):
        if not value > 0:
            raise er.ConfigurationError("t_end must be positive")
        self._t_end = float(value)

    @property
    def tableau(self):
        return self._tableau

    @tableau.setter
    def tableau(self, value):
        if value not in TABLEAUS:
            raise er.ConfigurationError("Unknown tableau %r" % value)
        self._tableau = value

    @property
    def snapshot_every(self):
        return self._snapshot_every

    @snapshot_every.setter
    def snapshot_every(self, value):
        if value < 0:
            raise er.ConfigurationError("snapshot_every cannot be negative")
        self._snapshot_every = int(value)

    @property
    def diagnostics_every(self):
        return self._diagnostics_every

    @diagnostics_every.setter
    def diagnostics_every(self, value):
        if value < 1:
            raise er.ConfigurationError("diagnostics_every must be at least 1")
        self._diagnostics_every = int(value)

    def validate(self):
        if self.method == 'mm' and self.p < 2:
            raise er.ConfigurationError("The micro-macro method needs p >= 2")
        if self.nu > 0:
            t = get_tableau(self.tableau)
            if not (t.implicit and t.gsa):
                raise er.ConfigurationError("nu > 0 needs a GSA IMEX tableau, got %s" % self.tableau)
        if self.problem == 'riemann' and (not self.field_free or self.bc != 'ghost'):
            logging.info('Riemann problem: forcing field_free=on and ghost boundaries')
            self.field_free = True
            self.bc = 'ghost'
        if not self.x_min < self.x_max:
            raise er.ConfigurationError("x_min must be below x_max")
        if not self.v_min < 0 < self.v_max:
            raise er.ConfigurationError("Velocity domain must contain 0 in its interior")
        position = -self.v_min / (self.v_max - self.v_min) * self.nv
        if abs(position - np.round(position)) > 1e-9:
            raise er.ConfigurationError("v=0 is not a velocity interface for nv=%i on [%g, %g]"
                                        % (self.nv, self.v_min, self.v_max))
        if self.damping_window is not None and not self.damping_window[0] < self.damping_window[1]:
            raise er.ConfigurationError("Empty damping window %r" % (self.damping_window,))
        return self

    def mesh_parameters(self):
        return dict(x_min=self.x_min, x_max=self.x_max, nx=self.nx,
                    v_min=self.v_min, v_max=self.v_max, nv=self.nv, p=self.p)

    def system_options(self):
        options = dict(bc=self.bc, nu=self.nu, tableau=self.tableau,
                       field_free=self.field_free, advection=self.advection)
        if self.method == 'mm':
            options.update(clean=self.clean, extended_cells=self.extended_cells,
                           inconsistent_quadrature=self.inconsistent_quadrature)
        return options

    def as_dict(self):
        return dict((key, getattr(self, key)) for key in sorted(TYPES))

    def __repr__(self):
        return "RunConfig(%s)" % ', '.join('%s=%r' % kv for kv in sorted(self.as_dict().items()))

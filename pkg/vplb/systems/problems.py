import numpy as np
import vplb.errors as er
from vplb.core.maxwellian import eval_maxwellian
from vplb.core.mesh import DistributionField, FluidState, build_mesh
from vplb.systems.kinetic_system import DirectSystem, MicroMacroSystem


class Problem(object):
    """
    An initial-boundary value problem with its default run parameters.

    Subclasses provide f0(x, v) (broadcasting) and a defaults dictionary
    with the keys of PARAMETERS.
    """

    name = None
    PARAMETERS = ('x_min', 'x_max', 'nx', 'v_min', 'v_max', 'nv', 'p', 'nu', 'tableau',
                  't_end', 'cfl', 'dt', 'bc', 'field_free', 'advection')

    defaults = {}

    def f0(self, x, v):
        raise NotImplementedError

    def mesh(self, micro_macro=False, **overrides):
        d = dict(self.defaults, **overrides)
        return build_mesh(d['x_min'], d['x_max'], d['nx'], d['v_min'], d['v_max'], d['nv'], d['p'],
                          micro_macro=micro_macro)

    def system(self, mesh, method='direct', **options):
        """
        A DirectSystem or MicroMacroSystem for this problem. options
        override the problem's boundary condition, nu, tableau and flags.
        """
        kwargs = dict(bc=self.defaults['bc'], nu=self.defaults['nu'], tableau=self.defaults['tableau'],
                      field_free=self.defaults['field_free'], advection=self.defaults['advection'])
        kwargs.update(options)
        if method == 'direct':
            for key in ('clean', 'extended_cells', 'inconsistent_quadrature', 'clean_method'):
                kwargs.pop(key, None)
            return DirectSystem(mesh, **kwargs)
        elif method == 'mm':
            return MicroMacroSystem(mesh, **kwargs)
        raise er.ConfigurationError("Unknown method %r" % method)


class Relaxation(Problem):
    """
    Spatially homogeneous relaxation of a double Maxwellian with
    (n, u, theta) = (1, -1.5, 0.5) and (1, 2.5, 0.5), moments (2, 1, 4.75).
    The equilibrium is the Maxwellian with (n, u, theta) = (2, 0.5, 4.5).
    """

    name = 'relaxation'
    defaults = dict(x_min=0.0, x_max=1.0, nx=1, v_min=-12.0, v_max=12.0, nv=48, p=2,
                    nu=1.0e3, tableau='ars111', t_end=1.0, cfl=0.75, dt=1.0e-2,
                    bc='periodic', field_free=True, advection=False)

    components = (FluidState(1.0, -1.5, 0.5), FluidState(1.0, 2.5, 0.5))
    equilibrium = FluidState(2.0, 0.5, 4.5)

    def f0(self, x, v):
        return sum(eval_maxwellian(state, v) for state in self.components) + 0.0 * x


class Riemann(Problem):
    """
    Sod-like shock tube with Maxwellian data (1, 0, 1) for x <= 0 and
    (0.125, 0, 0.8) for x > 0, no electric field and the initial states
    held at the spatial boundaries.
    """

    name = 'riemann'
    defaults = dict(x_min=-1.0, x_max=1.0, nx=256, v_min=-6.0, v_max=6.0, nv=16, p=2,
                    nu=1.0e3, tableau='pdars', t_end=0.1, cfl=0.75, dt=None,
                    bc='ghost', field_free=True, advection=True)

    left = FluidState(1.0, 0.0, 1.0)
    right = FluidState(0.125, 0.0, 0.8)

    def f0(self, x, v):
        return np.where(x <= 0.0, eval_maxwellian(self.left, v), eval_maxwellian(self.right, v))


class TwoStream(Problem):
    """f0 = (1 - cos(x/2) / 2) v^2 exp(-v^2) / sqrt(pi), collisionless."""

    name = 'two_stream'
    defaults = dict(x_min=-2 * np.pi, x_max=2 * np.pi, nx=32, v_min=-2 * np.pi, v_max=2 * np.pi,
                    nv=32, p=2, nu=0.0, tableau='ssprk3', t_end=10.0, cfl=0.75, dt=None,
                    bc='periodic', field_free=False, advection=True)

    def f0(self, x, v):
        return (1.0 - 0.5 * np.cos(0.5 * x)) * v**2 / np.sqrt(np.pi) * np.exp(-v**2)


class Landau(Problem):
    """f0 = (1 + 1e-4 cos(x/2)) exp(-v^2/2) / sqrt(2 pi)."""

    name = 'landau'
    defaults = dict(x_min=-2 * np.pi, x_max=2 * np.pi, nx=32, v_min=-6.0, v_max=6.0, nv=64, p=2,
                    nu=0.0, tableau='pdars', t_end=50.0, cfl=0.75, dt=None,
                    bc='periodic', field_free=False, advection=True)

    amplitude = 1.0e-4
    wavenumber = 0.5
    damping_window = (5.0, 45.0)

    def f0(self, x, v):
        return (1.0 + self.amplitude * np.cos(self.wavenumber * x)) * np.exp(-0.5 * v**2) / np.sqrt(2 * np.pi)


PROBLEMS = dict((p.name, p) for p in (Relaxation, Riemann, TwoStream, Landau))


def get_problem(name):
    try:
        return PROBLEMS[name]()
    except KeyError:
        raise er.ConfigurationError("Unknown problem %r (known: %s)" % (name, ', '.join(sorted(PROBLEMS))))


def init_problem(name, method='direct', mesh=None, **options):
    """
    Sample the initial condition of a problem at the mesh nodes and build
    the initial state. For the micro-macro method rho0 = <e f0> and
    g0 = f0 - P(rho0), cleaned.

    Returns (problem, system, state).
    """
    problem = get_problem(name)
    if mesh is None:
        mesh = problem.mesh(micro_macro=(method == 'mm'))
    system = problem.system(mesh, method, **options)
    f0 = DistributionField.from_function(mesh, problem.f0)
    return problem, system, system.initial_state(f0)

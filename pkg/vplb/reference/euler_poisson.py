import logging
import numpy as np
import vplb.errors as er
from vplb.core.mesh import DistributionField, GhostBoundary, MomentField, element_traces, moments_of, \
    write_moment_snapshot
from vplb.core.micro_macro import MicroMacroForms
from vplb.core.poisson import ElectricField, PoissonSolver, calibrate_ne
from vplb.core.tableau import cfl_dt, tableau
from vplb.systems.problems import get_problem


class Trajectory(object):
    """
    Sampled output of a reference run.

    Attributes:
        times: output times
        moments: list of MomentFields at those times
        potential_energy: 1/2 int E^2 dx at those times
    """

    def __init__(self):
        self.times = []
        self.moments = []
        self.potential_energy = []

    def append(self, t, rho, energy):
        self.times.append(t)
        self.moments.append(rho)
        self.potential_energy.append(energy)

    def totals(self):
        """Global totals of rho at every output time, shape (T, 3)."""
        return np.array([rho.mesh.wx @ rho.values for rho in self.moments])

    def write(self, path, index=-1):
        write_moment_snapshot(path, self.moments[index], self.times[index])


class EulerPoissonSolver(object):
    """
    The macro DG form with g = 0 coupled to the Poisson problem: the
    Euler-Poisson limit of the micro-macro scheme, integrated with an
    explicit Runge-Kutta tableau (SSP-RK2 by default).
    """

    def __init__(self, mesh, n_e=None, bc='periodic', field_free=False, exterior=None,
                 scheme='ssprk2'):
        self.mesh = mesh
        self.n_e = n_e
        self.field_free = field_free
        self.tableau = tableau(scheme)
        if bc == 'ghost' and exterior is None:
            raise er.UsageError("Ghost boundaries need the exterior moment states")
        self.forms = MicroMacroForms(mesh, exterior if bc == 'ghost' else None)
        self._poisson = None

    def field(self, rho):
        if self._poisson is None:
            return ElectricField.zero(self.mesh)
        return self._poisson.solve(rho[:, 0])

    def rate(self, rho):
        field = self.field(rho)
        return self.forms.macro_residual(rho, None, None if self.field_free else field.E)

    def step(self, rho, dt):
        t = self.tableau
        rates = []
        for l in range(t.stages):
            stage = rho.copy()
            for m in range(l):
                if t.a_ex[l, m] != 0.0:
                    stage -= dt * t.a_ex[l, m] * rates[m]
            rates.append(self.rate(stage))
        out = rho.copy()
        for w, r in zip(t.w_ex, rates):
            out -= dt * w * r
        return out

    def potential_energy(self, rho):
        E = self.field(rho).E
        return 0.5 * float(self.mesh.dx @ E**2)

    def run(self, rho0, t_end, dt, every=1):
        """Integrate the MomentField rho0 to t_end; output every `every` steps."""
        if self.n_e is None:
            self.n_e = calibrate_ne(rho0)
        if not self.field_free:
            self._poisson = PoissonSolver(self.mesh, self.n_e)

        rho = rho0.values.copy()
        t = 0.0
        out = Trajectory()
        out.append(t, MomentField(self.mesh, rho.copy()), self.potential_energy(rho))
        nsteps = int(np.ceil(t_end / dt - 1e-12))
        logging.info('Euler-Poisson reference: %i steps of dt=%e' % (nsteps, dt))
        for k in range(nsteps):
            h = min(dt, t_end - t)
            rho = self.step(rho, h)
            t += h
            if (k + 1) % every == 0 or k == nsteps - 1:
                out.append(t, MomentField(self.mesh, rho.copy()), self.potential_energy(rho))
        return out


def euler_poisson_solve(problem, nx=128, t_end=None, p=2, cfl=0.75, every=1, dt=None):
    """
    Reference run of a problem's moment initial condition with the
    Euler-Poisson solver on nx elements. Returns a Trajectory.
    """
    prob = get_problem(problem) if isinstance(problem, str) else problem
    d = prob.defaults
    mesh = prob.mesh(nx=nx, p=p)
    rho0 = moments_of(DistributionField.from_function(mesh, prob.f0))

    exterior = None
    if d['bc'] == 'ghost':
        left, right = element_traces(rho0.blocks, mesh.basis)
        exterior = GhostBoundary(rho=(left[0].copy(), right[-1].copy()))

    solver = EulerPoissonSolver(mesh, bc=d['bc'], field_free=d['field_free'], exterior=exterior)
    if t_end is None:
        t_end = d['t_end']
    if dt is None:
        dt = cfl_dt(mesh, cfl)
    return solver.run(rho0, t_end, dt, every)

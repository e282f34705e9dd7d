import logging
import numpy as np
import vplb.errors as er
from vplb.core.imex import DirectState, MicroMacroState, check_tableau, step_direct, step_mm
from vplb.core.lenard_bernstein import CollisionMatrix
from vplb.core.limiter import CleaningLimiter
from vplb.core.mesh import DistributionField, GhostBoundary, MomentField, fluid_from_moments, moments_of
from vplb.core.micro_macro import MicroMacroForms
from vplb.core.poisson import ElectricField, PoissonSolver, calibrate_ne
from vplb.core.tableau import tableau as get_tableau
from vplb.core.vlasov import VlasovOperator


class KineticSystemBase(object):
    """
    A discretized Vlasov-Poisson-Lenard-Bernstein problem on a fixed mesh.

    Subclasses provide:
        _initial_state(f0): the state at t = 0 from the sampled distribution,
        _step(state, dt): one time step,
        and the diagnostics hooks kinetic_moments(state), micro_moments(state),
        energy_residual(state), f_min(state).

    Attributes:
        mesh: PhaseMesh
        bc: 'periodic' or 'ghost' (frozen initial exterior states)
        nu: collision frequency
        tableau: ButcherTableau
        field_free: if True, E = 0 and Poisson is never solved
        advection: if False, only collisions act (spatially decoupled relaxation)
        n_e: neutralizing background, calibrated from the initial density
             when left as None
    """

    def __init__(self, mesh, bc='periodic', nu=0.0, tableau='ars111', field_free=False,
                 advection=True, n_e=None):
        if bc not in ('periodic', 'ghost'):
            raise er.ConfigurationError("Unknown spatial boundary condition %r" % bc)
        self.mesh = mesh
        self.bc = bc
        self.nu = nu
        self.tableau = get_tableau(tableau) if isinstance(tableau, str) else tableau
        check_tableau(self.tableau, nu)
        self.field_free = field_free
        self.advection = advection
        self.n_e = n_e
        self.boundary = None
        self._poisson = None

    # setup

    def initial_state(self, f0):
        """State at t = 0 for the sampled initial distribution (DistributionField)."""
        if self.n_e is None:
            self.n_e = calibrate_ne(moments_of(f0))
        self._poisson = None if self.field_free else PoissonSolver(self.mesh, self.n_e)
        logging.info('Initializing %s (bc=%s, nu=%g, n_e=%g)'
                     % (self.__class__.__name__, self.bc, self.nu, self.n_e))
        return self._initial_state(f0)

    def _initial_state(self, f0):
        raise NotImplementedError

    def electric_field(self, rho):
        """ElectricField for nodal moments (X, 3)."""
        if self._poisson is None:
            return ElectricField.zero(self.mesh)
        return self._poisson.solve(rho[:, 0])

    def collision_matrix(self, rho):
        state = fluid_from_moments(rho, self.mesh.x)
        return CollisionMatrix(self.mesh, state.u, state.theta)

    # time stepping

    def step(self, state, dt):
        return self._step(state, dt)

    def _step(self, state, dt):
        raise NotImplementedError

    # diagnostics hooks

    def moments(self, state):
        """Evolved nodal moments, (X, 3)."""
        raise NotImplementedError

    def kinetic_moments(self, state):
        """Nodal <e f>, (X, 3)."""
        raise NotImplementedError

    def micro_moments(self, state):
        """Nodal <e g> or None for methods without a micro part."""
        return None

    def energy_residual(self, state):
        return None

    def f_min(self, state):
        raise NotImplementedError


class DirectSystem(KineticSystemBase):
    """Direct DG-IMEX discretization of f."""

    method = 'direct'

    def _initial_state(self, f0):
        if self.bc == 'ghost':
            self.boundary = GhostBoundary.from_distribution(f0)
        exterior = None if self.boundary is None else self.boundary.f
        self._vlasov = VlasovOperator(self.mesh, exterior)
        f = f0.values.copy()
        return DirectState(f, self.electric_field(f @ self.mesh.moment_weights), 0.0)

    def transport_residual(self, f, field):
        if not self.advection:
            return np.zeros_like(f)
        return self._vlasov.residual(f, None if self.field_free else field.E)

    def _step(self, state, dt):
        return step_direct(self, state, self.tableau, dt, self.nu)

    def distribution(self, state):
        return DistributionField(self.mesh, state.f)

    def moments(self, state):
        return state.f @ self.mesh.moment_weights

    def kinetic_moments(self, state):
        return self.moments(state)

    def f_min(self, state):
        return float(state.f.min())


class MicroMacroSystem(KineticSystemBase):
    """
    Micro-macro DG-IMEX discretization: rho and the micro part g with
    f = E[rho] + g.

    Attributes (in addition to KineticSystemBase):
        clean: apply the cleaning limiter after explicit stages
        extended_cells: integrate the Maxwellian terms over the extended
                        boundary cells
        inconsistent_quadrature: GL quadrature for the Maxwellian transport form
        clean_method: 'gram' or 'gglse'
    """

    method = 'mm'

    def __init__(self, mesh, clean=True, extended_cells=True, inconsistent_quadrature=False,
                 clean_method='gram', **kwargs):
        if mesh.p < 2:
            raise er.ConfigurationError("The micro-macro method needs p >= 2, got p=%i" % mesh.p)
        super(MicroMacroSystem, self).__init__(mesh, **kwargs)
        self.clean = clean
        self.extended_cells = extended_cells
        self.inconsistent_quadrature = inconsistent_quadrature
        self.limiter = CleaningLimiter(mesh, clean_method)
        # projections of the initial Maxwellian expansion must use the
        # periodic forms until the ghost states are known
        self.forms = MicroMacroForms(mesh, None, extended_cells, inconsistent_quadrature)

    def _initial_state(self, f0):
        rho = moments_of(f0).values
        g = f0.values - self.forms.projection(rho)
        if self.clean:
            g = self.limiter(g)
        if self.bc == 'ghost':
            self.boundary = GhostBoundary.from_micro_macro(MomentField(self.mesh, rho),
                                                           DistributionField(self.mesh, g))
            self.forms = MicroMacroForms(self.mesh, self.boundary, self.extended_cells,
                                         self.inconsistent_quadrature)
        return MicroMacroState(rho, g, self.electric_field(rho), 0.0)

    def _field(self, field):
        return None if self.field_free else field.E

    def macro_residual(self, rho, g, field):
        if not self.advection:
            return np.zeros_like(rho)
        return self.forms.macro_residual(rho, g, self._field(field))

    def micro_residual(self, rho, g, field):
        if not self.advection:
            return np.zeros_like(g)
        E = self._field(field)
        return self.forms.vlasov.residual(g, E) + self.forms.micro_residual(rho, E)

    def projection(self, rho):
        return self.forms.projection(rho)

    def clean_micro(self, g):
        return self.limiter(g)

    def gamma(self, state):
        return self.forms.gamma(state.rho, state.g, self._field(state.field))

    def _step(self, state, dt):
        return step_mm(self, state, self.tableau, dt, self.nu, self.clean)

    def distribution(self, state):
        return DistributionField(self.mesh, self.projection(state.rho) + state.g)

    def moments(self, state):
        return state.rho

    def micro_moments(self, state):
        return state.g @ self.mesh.moment_weights

    def kinetic_moments(self, state):
        return state.rho + self.micro_moments(state)

    def energy_residual(self, state):
        """-int <v g> E dx, the rate at which the micro part breaks energy conservation."""
        if self.field_free:
            return 0.0
        m = self.mesh
        flux = (state.g * m.v[None, :]) @ m.wv
        return -float(m.wx @ (flux * state.field.nodal(m)))

    def f_min(self, state):
        return float(self.distribution(state).values.min())

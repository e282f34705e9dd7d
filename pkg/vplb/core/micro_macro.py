import logging
import numpy as np
from vplb.core.maxwellian import GaussianMomentTable, abs_v_moments, eval_maxwellian
from vplb.core.mesh import FluidState, element_traces, fluid_from_moments, interface_states
from vplb.core.vlasov import VlasovOperator, upwind_split


def macro_flux(rho, locations=None):
    """F(rho) = (n u, n (u^2 + theta), n (u^2 + 3 theta) u / 2) along the last axis."""
    n, u, theta = fluid_from_moments(rho, locations)
    return np.stack([n * u, n * (u**2 + theta), 0.5 * n * (u**2 + 3.0 * theta) * u], axis=-1)


def macro_numflux(rho_left, rho_right, locations=None):
    """
    Kinetic upwind flux <e v^+ M_L> + <e v^- M_R> written as the central flux
    minus half the jump of <e |v| M>.
    """
    state_left = fluid_from_moments(rho_left, locations)
    state_right = fluid_from_moments(rho_right, locations)
    central = 0.5 * (macro_flux(rho_left, locations) + macro_flux(rho_right, locations))
    return central - 0.5 * (abs_v_moments(state_right) - abs_v_moments(state_left))


def micro_numflux_moments(mesh, g_minus, g_plus):
    """
    <e v^+ g(x^-)> + <e v^- g(x^+)> over D^v for velocity slices (..., V);
    exact under per-element GL since v = 0 is an interface.
    """
    v_plus, v_minus = upwind_split(mesh.v)
    return (v_plus * g_minus + v_minus * g_plus) @ mesh.moment_weights


def _shift(rho):
    # T rho = (0, rho0, rho1)
    out = np.zeros_like(rho)
    out[..., 1:] = rho[..., :-1]
    return out


class MicroMacroForms(object):
    """
    Assembly of the macro moment form and the Maxwellian transport form of
    the micro equation, sharing the mesh tables.

    Options:
        exterior: None (periodic) or a GhostBoundary with rho and g pairs
        extended_cells: integrate Maxwellian terms over (-inf, v_min+dv] and
                        [v_max-dv, inf) in the first/last velocity element
        inconsistent_quadrature: replace the exact Gaussian integrals of the
                                 transport form by (p+1)-point GL sums
    """

    def __init__(self, mesh, exterior=None, extended_cells=True, inconsistent_quadrature=False):
        self.mesh = mesh
        self.exterior = exterior
        self.extended_cells = extended_cells
        self.inconsistent_quadrature = inconsistent_quadrature
        if extended_cells and inconsistent_quadrature:
            logging.warning('Extended cells have no effect with inconsistent quadrature')

        g_exterior = None if exterior is None else exterior.g
        self.vlasov = VlasovOperator(mesh, g_exterior)

        basis = mesh.basis
        self._stiffness = basis.weights[:, None] * basis.diff
        self._x_scale = 2.0 / (mesh.dx[:, None] * basis.weights[None, :])
        self._wv = mesh.wv.reshape(mesh.nv, mesh.n)
        self._positive = mesh.v_centres > 0

    def _rho_interfaces(self, rho):
        m = self.mesh
        left, right = element_traces(rho.reshape(m.nx, m.n, 3), m.basis)
        exterior = None if self.exterior is None else self.exterior.rho
        return interface_states(left, right, exterior)

    def _interface_locations(self):
        return self.mesh.x_edges

    # Maxwellian velocity integrals

    def _table(self, state):
        return GaussianMomentTable(self.mesh, state, self.extended_cells, m_max=self.mesh.p + 1)

    def _velocity_integrals(self, state):
        """int v l_s M dv per element, (K, nv, p+1)."""
        if self.inconsistent_quadrature:
            m = self.mesh
            values = eval_maxwellian(_column(state), m.v[None, :])
            return (m.wv * m.v * values).reshape(-1, m.nv, m.n)
        return self._table(state).velocity_basis_integrals()

    def _derivative_integrals(self, state):
        """int M d_v l_s dv per element, (K, nv, p+1)."""
        if self.inconsistent_quadrature:
            m = self.mesh
            values = eval_maxwellian(_column(state), m.v[None, :]).reshape(-1, m.nv, m.n)
            # W_t l_s'(xi_t) (2/dv) (dv/2) = W_t D[t, s]
            return np.einsum('kjt,ts->kjs', values, self._stiffness)
        return self._table(state).derivative_integrals()

    def projection(self, rho):
        """
        Nodal coefficients of the DG projection of E[rho_h], (X, V):
        int_{I~_j} M_k l_s dv / (dv_j W_s / 2).
        """
        m = self.mesh
        state = fluid_from_moments(rho, m.x)
        integrals = GaussianMomentTable(m, state, self.extended_cells, m_max=m.p).basis_integrals()
        return (integrals / self._wv[None]).reshape(m.shape)

    # forms

    def macro_residual(self, rho, g, E):
        """
        Mass-inverted macro residual (X, 3); d_t rho = -residual.
        g may be None (g = 0), E None (E = 0).
        """
        m = self.mesh
        rho_minus, rho_plus = self._rho_interfaces(rho)
        flux = macro_numflux(rho_minus, rho_plus, self._interface_locations())
        nodal_flux = macro_flux(rho, m.x)

        if g is not None:
            g_minus, g_plus = self._g_interfaces(g)
            flux = flux + micro_numflux_moments(m, g_minus, g_plus)
            nodal_flux = nodal_flux + (g * m.v[None, :]) @ m.moment_weights

        nodal_flux = nodal_flux.reshape(m.nx, m.n, 3)
        volume = np.einsum('rq,irc->iqc', self._stiffness, nodal_flux)
        surface = m.basis.right[None, :, None] * flux[1:, None] - m.basis.left[None, :, None] * flux[:-1, None]
        res = (self._x_scale[:, :, None] * (surface - volume)).reshape(-1, 3)

        if E is not None:
            res = res - np.repeat(E, m.n)[:, None] * _shift(rho)
        return res

    def _g_interfaces(self, g):
        m = self.mesh
        blocks = g.reshape(m.nx, m.n, -1)
        left, right = element_traces(blocks, m.basis)
        exterior = None if self.exterior is None else self.exterior.g
        return interface_states(left, right, exterior)

    def micro_residual(self, rho, E, velocity_boundary_flux=False):
        """
        Mass-inverted residual of the Maxwellian transport form B^micro (X, V).
        velocity_boundary_flux=True keeps the E M flux at v_min/v_max, which
        the zero-flux boundary condition removes; it exists for inspection.
        """
        m = self.mesh
        basis = m.basis
        nx, n, nv = m.nx, m.n, m.nv

        # x transport
        rho_minus, rho_plus = self._rho_interfaces(rho)
        locations = self._interface_locations()
        left_state = fluid_from_moments(rho_minus, locations)
        right_state = fluid_from_moments(rho_plus, locations)
        upwinded = np.where(self._positive[None, :, None],
                            self._velocity_integrals(left_state),
                            self._velocity_integrals(right_state))

        state = fluid_from_moments(rho, m.x)
        nodal = self._velocity_integrals(state).reshape(nx, n, nv, n)
        volume = np.einsum('rq,irjs->iqjs', self._stiffness, nodal)
        surface = basis.right[None, :, None, None] * upwinded[1:, None] \
            - basis.left[None, :, None, None] * upwinded[:-1, None]
        res = self._x_scale[:, :, None, None] * (surface - volume) / self._wv[None, None]

        if E is not None and np.any(E != 0.0):
            res = res + self._micro_field_residual(state, E, velocity_boundary_flux)
        return res.reshape(m.shape)

    def _micro_field_residual(self, state, E, velocity_boundary_flux):
        m = self.mesh
        basis = m.basis
        nx, n, nv = m.nx, m.n, m.nv

        edge_values = eval_maxwellian(_column(state), m.v_edges[None, :]).reshape(nx, n, nv + 1)
        if not velocity_boundary_flux:
            edge_values[:, :, 0] = 0.0
            edge_values[:, :, -1] = 0.0
        derivative = self._derivative_integrals(state).reshape(nx, n, nv, n)

        surface = edge_values[:, :, 1:, None] * basis.right[None, None, None, :] \
            - edge_values[:, :, :-1, None] * basis.left[None, None, None, :]
        return E[:, None, None, None] * (surface - derivative) / self._wv[None, None]

    def gamma(self, rho, g, E):
        """
        Per-node mismatch between the macro residual and the moments of the
        micro residual (Vlasov form of g plus Maxwellian transport form),
        (X, 3). Constraint preservation needs it to vanish.
        """
        m = self.mesh
        micro = self.vlasov.residual(g, E) + self.micro_residual(rho, E)
        return self.macro_residual(rho, g, E) - micro @ m.moment_weights


def _column(state):
    return FluidState(*(np.asarray(a)[:, None] for a in state))


def _forms_for(rho, bc_x, extended_cells=True, inconsistent_quadrature=False):
    exterior = None if isinstance(bc_x, str) else bc_x
    return MicroMacroForms(rho.mesh, exterior, extended_cells, inconsistent_quadrature)


def _field(E):
    return None if E is None else E.E


def macro_form(rho, g, E, bc_x='periodic', extended_cells=True):
    g_values = None if g is None else g.values
    return _forms_for(rho, bc_x, extended_cells).macro_residual(rho.values, g_values, _field(E))


def micro_maxwellian_form(rho, E, extended_cells=True, bc_x='periodic', inconsistent_quadrature=False):
    forms = _forms_for(rho, bc_x, extended_cells, inconsistent_quadrature)
    return forms.micro_residual(rho.values, _field(E))


def gamma_residual(rho, g, E, bc_x='periodic', extended_cells=True, inconsistent_quadrature=False):
    forms = _forms_for(rho, bc_x, extended_cells, inconsistent_quadrature)
    return forms.gamma(rho.values, g.values, _field(E))

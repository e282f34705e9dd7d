import numpy as np
from vplb.core.mesh import DistributionField, element_traces, interface_states


def upwind_split(a):
    """(a^+, a^-) = ((a + |a|)/2, (a - |a|)/2)."""
    return np.maximum(a, 0.0), np.minimum(a, 0.0)


class VlasovOperator(object):
    """
    Upwind DG form of v d_x f + E d_v f, returned mass-inverted: the nodal
    time derivative of f is minus the residual.

    Spatial boundaries are periodic (exterior=None) or use the frozen
    exterior velocity slices exterior = (left, right); the Ef flux vanishes
    at v_min and v_max.
    """

    def __init__(self, mesh, exterior=None):
        self.mesh = mesh
        self.exterior = exterior

        basis = mesh.basis
        w = basis.weights
        # stiffness[r, q] = W_r l_q'(xi_r), the GL volume term against d l_q
        self._stiffness = w[:, None] * basis.diff
        self._x_scale = 2.0 / (mesh.dx[:, None] * w[None, :])
        self._v_scale = 2.0 / (mesh.dv[:, None] * w[None, :])

        v = mesh.v_nodes
        self._v = v
        self._v_plus, self._v_minus = upwind_split(v)

    def x_flux(self, f):
        """Upwind flux v^+ f(x^-) + v^- f(x^+) at the nx+1 spatial interfaces, (nx+1, nv, p+1)."""
        m = self.mesh
        blocks = f.reshape(m.nx, m.n, m.nv, m.n)
        left, right = element_traces(blocks, m.basis)
        minus, plus = interface_states(left, right, self._exterior_blocks())
        return self._v_plus * minus + self._v_minus * plus

    def _exterior_blocks(self):
        if self.exterior is None:
            return None
        m = self.mesh
        return tuple(np.reshape(side, (m.nv, m.n)) for side in self.exterior)

    def x_residual(self, f):
        m = self.mesh
        basis = m.basis
        blocks = f.reshape(m.nx, m.n, m.nv, m.n)
        flux = self.x_flux(f)

        volume = np.einsum('rq,irjs->iqjs', self._stiffness, blocks) * self._v[None, None]
        surface = basis.right[None, :, None, None] * flux[1:, None] \
            - basis.left[None, :, None, None] * flux[:-1, None]
        return self._x_scale[:, :, None, None] * (surface - volume)

    def v_residual(self, f, E):
        m = self.mesh
        basis = m.basis
        blocks = f.reshape(m.nx, m.n, m.nv, m.n)

        top = np.einsum('irjs,s->irj', blocks, basis.right)
        bottom = np.einsum('irjs,s->irj', blocks, basis.left)
        e_plus, e_minus = upwind_split(E)

        flux = np.zeros((m.nx, m.n, m.nv + 1))
        flux[:, :, 1:-1] = e_plus[:, None, None] * top[:, :, :-1] + e_minus[:, None, None] * bottom[:, :, 1:]

        volume = E[:, None, None, None] * np.einsum('ts,irjt->irjs', self._stiffness, blocks)
        surface = flux[:, :, 1:, None] * basis.right[None, None, None, :] \
            - flux[:, :, :-1, None] * basis.left[None, None, None, :]
        return self._v_scale[None, None] * (surface - volume)

    def residual(self, f, E):
        """
        f: (X, V) nodal values; E: (nx,) element field or None for E = 0.
        Returns the mass-inverted residual, shape (X, V).
        """
        res = self.x_residual(f)
        if E is not None and np.any(E != 0.0):
            res = res + self.v_residual(f, E)
        return res.reshape(self.mesh.shape)


def vlasov_form(f, E, bc_x='periodic'):
    """
    Mass-inverted Vlasov residual of a DistributionField for an ElectricField
    (or None). bc_x is 'periodic' or a GhostBoundary.
    """
    exterior = None if isinstance(bc_x, str) else bc_x.f
    field = None if E is None else E.E
    return VlasovOperator(f.mesh, exterior).residual(f.values, field)

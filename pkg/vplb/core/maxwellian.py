import numpy as np
from scipy.special import erf, erfc
import vplb.errors as er
from vplb.core.mesh import FluidState, fluid_from_moments


def _check_state(state):
    if np.any(np.asarray(state.theta) <= 0) or np.any(np.asarray(state.n) <= 0):
        raise er.DomainError("Maxwellian needs n > 0 and theta > 0")


def eval_maxwellian(state, v):
    """n / sqrt(2 pi theta) exp(-(v-u)^2 / (2 theta)), broadcasting state against v."""
    _check_state(state)
    n, u, theta = state
    return n / np.sqrt(2.0 * np.pi * theta) * np.exp(-(v - u)**2 / (2.0 * theta))


def _erf_difference(za, zb):
    # erf(zb) - erf(za) without cancellation when both arguments sit in one tail
    za, zb = np.broadcast_arrays(za, zb)
    right = za > 0
    left = zb < 0
    with np.errstate(invalid='ignore'):
        out = np.where(right, erfc(za) - erfc(zb),
                       np.where(left, erfc(-zb) - erfc(-za), erf(zb) - erf(za)))
    return out


def _edge_power(a, m, ma):
    # a^m M(a), zero at infinite limits
    with np.errstate(invalid='ignore', over='ignore'):
        return np.where(np.isfinite(a), np.where(ma == 0.0, 0.0, a**m * ma), 0.0)


def gaussian_moments(m_max, a, b, n, u, theta):
    """
    Exact integrals int_a^b v^m M[n, u, theta](v) dv for m = 0..m_max.

    a and b may be -inf/+inf. All arguments broadcast; the result gets a
    trailing axis of length m_max+1. Uses the recurrence from
    v M = u M - theta dM/dv:

        I_m = u I_{m-1} + (m-1) theta I_{m-2} - theta [v^{m-1} M]_a^b
    """
    a, b, n, u, theta = np.broadcast_arrays(*(np.asarray(q, dtype=float) for q in (a, b, n, u, theta)))
    scale = np.sqrt(2.0 * theta)
    norm = n / np.sqrt(2.0 * np.pi * theta)

    with np.errstate(invalid='ignore', over='ignore'):
        ma = np.where(np.isfinite(a), norm * np.exp(-((a - u) / scale)**2), 0.0)
        mb = np.where(np.isfinite(b), norm * np.exp(-((b - u) / scale)**2), 0.0)

    out = np.empty(a.shape + (m_max + 1,))
    out[..., 0] = 0.5 * n * _erf_difference((a - u) / scale, (b - u) / scale)
    if m_max >= 1:
        out[..., 1] = u * out[..., 0] - theta * (mb - ma)
    for m in range(2, m_max + 1):
        edge = _edge_power(b, m - 1, mb) - _edge_power(a, m - 1, ma)
        out[..., m] = u * out[..., m - 1] + (m - 1) * theta * out[..., m - 2] - theta * edge
    return out


def gaussian_moment(m, a, b, state):
    """int_a^b v^m M[state] dv."""
    _check_state(state)
    return gaussian_moments(m, a, b, state.n, state.u, state.theta)[..., m]


def abs_v_moments(state):
    """
    (<e_0 |v| M>, <e_1 |v| M>, <e_2 |v| M>) over the whole real line, in
    closed form.
    """
    _check_state(state)
    n, u, theta = (np.asarray(q, dtype=float) for q in state)
    a = n / np.sqrt(2.0 * np.pi * theta)
    ex = np.exp(-u**2 / (2.0 * theta))
    er_ = erf(u / np.sqrt(2.0 * theta))
    s = np.sqrt(2.0 * np.pi * theta)

    c0 = a * (2.0 * theta * ex + u * s * er_)
    c1 = a * (2.0 * u * theta * ex + (u**2 + theta) * s * er_)
    c2 = a * (2.0 * theta * (theta + 0.5 * u**2) * ex + 0.5 * (u**2 + 3.0 * theta) * u * s * er_)
    return np.stack([c0, c1, c2], axis=-1)


def maxwellian_nodal_field(rho):
    """
    Fluid states of the nodal Maxwellian expansion
    E[rho_h](x, v)|_{I_i} = sum_k E[rho_k^i](v) l_k(x): one state per spatial node.
    """
    return fluid_from_moments(rho.values, rho.mesh.x)


class GaussianMomentTable(object):
    """
    Local Gaussian moments of the nodal Maxwellians on every velocity element.

    local[k, j, m] = int_{I~_j} xi_j(v)^m M_k(v) dv, where xi_j is the reference
    coordinate of element j (so the Lagrange polynomials l_s(xi_j) can be
    integrated against M_k from their monomial coefficients) and I~_j is I_j,
    or the semi-infinite extension of the first/last element when
    extended_cells is on.

    Attributes:
        state: FluidState with arrays of shape (K,)
        local: (K, nv, m_max+1)
    """

    def __init__(self, mesh, state, extended_cells=False, m_max=None):
        if m_max is None:
            m_max = mesh.p + 3
        self.mesh = mesh
        self.state = state
        self.extended_cells = extended_cells

        a, b = self.limits(mesh, extended_cells)
        centre = mesh.v_centres
        half = 0.5 * mesh.dv

        n = np.asarray(state.n)[:, None]
        u = np.asarray(state.u)[:, None]
        theta = np.asarray(state.theta)[:, None]

        # moments of the Maxwellian shifted to the element centre
        shifted = gaussian_moments(m_max, a - centre, b - centre, n, u - centre, theta)
        self.local = shifted / half[None, :, None]**np.arange(m_max + 1)

    @staticmethod
    def limits(mesh, extended_cells):
        a = mesh.v_edges[:-1].copy()
        b = mesh.v_edges[1:].copy()
        if extended_cells:
            a[0] = -np.inf
            b[-1] = np.inf
        return a, b

    def raw(self, m_max=None):
        """int_{I~_j} v^m M_k dv for m = 0..m_max, shape (K, nv, m_max+1)."""
        if m_max is None:
            m_max = self.local.shape[-1] - 1
        a, b = self.limits(self.mesh, self.extended_cells)
        return gaussian_moments(m_max, a, b, np.asarray(self.state.n)[:, None],
                                np.asarray(self.state.u)[:, None],
                                np.asarray(self.state.theta)[:, None])

    def basis_integrals(self):
        """int_{I~_j} l_s(v) M_k dv, shape (K, nv, p+1)."""
        c = self.mesh.basis.monomials
        return np.einsum('kjm,sm->kjs', self.local[..., :c.shape[1]], c)

    def velocity_basis_integrals(self):
        """int_{I~_j} v l_s(v) M_k dv, shape (K, nv, p+1)."""
        c = self.mesh.basis.monomials
        p1 = c.shape[1]
        centre = self.mesh.v_centres[None, :, None]
        half = 0.5 * self.mesh.dv[None, :, None]
        return centre * np.einsum('kjm,sm->kjs', self.local[..., :p1], c) \
            + half * np.einsum('kjm,sm->kjs', self.local[..., 1:p1 + 1], c)

    def derivative_integrals(self):
        """int_{I~_j} M_k dl_s/dv dv, shape (K, nv, p+1)."""
        d = self.mesh.basis.dmonomials
        half = 0.5 * self.mesh.dv[None, :, None]
        return np.einsum('kjm,sm->kjs', self.local[..., :d.shape[1]], d) / half

import functools
import logging
import numpy as np
import scipy.linalg
import vplb.errors as er
from vplb.core.mesh import DistributionField, fluid_from_moments
from vplb.helpers.banded import BlockTridiagonalLayout, block_tridiagonal_apply
from vplb.helpers.index import split_node
from vplb.helpers.quadrature import gl_rule, lagrange_basis


@functools.lru_cache(maxsize=None)
def recovery_stencils(p, dv_left, dv_right):
    """
    Stencils of the recovery polynomial at the interface between two velocity
    cells of widths dv_left and dv_right.

    The degree 2p+1 polynomial P shares the L2 projection of both cells'
    data onto their degree-p spaces. Its value and derivative at the shared
    interface are linear in the 2(p+1) nodal values:

        P(0) = value . [f_L, f_R],  P'(0) = derivative . [f_L, f_R]

    Returns (value, derivative), each of length 2(p+1).
    """
    basis = lagrange_basis(p)
    n = p + 1
    rule = gl_rule(2 * n)
    scale = 0.5 * (dv_left + dv_right)
    powers = np.arange(2 * n)

    rows = []
    rhs = []
    for width, sign in ((dv_left, -1.0), (dv_right, 1.0)):
        # the cell is [-width, 0] or [0, width] in the interface coordinate
        v = 0.5 * width * (rule.nodes + sign)
        phi = basis.values(rule.nodes)
        z = (v / scale)[:, None]**powers[None, :]
        rows.append(np.einsum('q,sq,qm->sm', 0.5 * width * rule.weights, phi, z))
        rhs.append(0.5 * width * basis.weights)

    system = np.vstack(rows)
    mass = np.diag(np.concatenate(rhs))
    try:
        coefficients = scipy.linalg.solve(system, mass)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise er.AssemblyError("Singular recovery system: %s" % exc)

    value = coefficients[0]
    derivative = coefficients[1] / scale
    value.setflags(write=False)
    derivative.setflags(write=False)
    return value, derivative


def recovery_interface(f_left, f_right, dv_left, dv_right):
    """
    Value and derivative of the recovery polynomial at the interface between
    the nodal cell data f_left and f_right (trailing axis of length p+1).
    """
    f_left = np.asarray(f_left, dtype=float)
    p = f_left.shape[-1] - 1
    value, derivative = recovery_stencils(p, float(dv_left), float(dv_right))
    data = np.concatenate([f_left, np.asarray(f_right, dtype=float)], axis=-1)
    return data @ value, data @ derivative


class CollisionMatrix(object):
    """
    Mass-inverted Lenard-Bernstein operator L[u, theta] on the velocity slice
    of every spatial node, so that d_t f = -nu L f.

    Stored as block-tridiagonal (per velocity element) blocks of shape
    (K, nv, p+1, p+1). Drift surface terms are upwinded with w = u - v,
    diffusion surface terms use the recovery value and derivative, volume
    terms are GL sums at the nodes. At v_min and v_max the combined flux and
    the recovered value vanish, which removes every boundary term.

    Attributes:
        u, theta: (K,) bulk velocity and temperature per spatial node
        diag, lower, upper: blocks
    """

    def __init__(self, mesh, u, theta):
        self.mesh = mesh
        self.u = np.atleast_1d(np.asarray(u, dtype=float))
        self.theta = np.atleast_1d(np.asarray(theta, dtype=float))
        self.layout = BlockTridiagonalLayout(mesh.nv, mesh.n)
        self.diag, self.lower, self.upper = _assemble(mesh, self.u, self.theta)

    def apply(self, f):
        """L f for f of shape (K, V)."""
        return block_tridiagonal_apply(self.diag, self.lower, self.upper, f)

    def dense(self, k=0):
        """Dense V x V matrix at spatial node k."""
        return self.layout.to_dense(self.diag[k], self.lower[k], self.upper[k])

    def solve(self, rhs, lam):
        """
        Solve (I + lam L) f = rhs independently per spatial node with banded
        LU (partial pivoting).
        """
        rhs = np.asarray(rhs, dtype=float)
        if lam < 0:
            raise er.UsageError("Implicit weight must be non-negative, got %r" % lam)
        if lam == 0:
            return rhs.copy()

        layout = self.layout
        ab = layout.to_banded(lam * self.diag, lam * self.lower, lam * self.upper)
        ab[:, layout.bandwidth, :] += 1.0

        out = np.empty_like(rhs)
        bands = (layout.bandwidth, layout.bandwidth)
        for k in range(rhs.shape[0]):
            try:
                out[k] = scipy.linalg.solve_banded(bands, ab[k], rhs[k], check_finite=False)
            except (np.linalg.LinAlgError, scipy.linalg.LinAlgError, ValueError) as exc:
                element, node = split_node(k, self.mesh.n)
                raise er.SolverError("Collision solve failed at spatial element %i, node %i: %s"
                                     % (element, node, exc))
        logging.debug('Solved %i banded collision systems (lambda=%e)' % (rhs.shape[0], lam))
        return out


def _assemble(mesh, u, theta):
    basis = mesh.basis
    n, nv = mesh.n, mesh.nv
    K = len(u)
    w = basis.weights
    D, D2 = basis.diff, basis.diff2
    lp, lm, dlp, dlm = basis.right, basis.left, basis.dright, basis.dleft
    h = mesh.dv
    v = mesh.v_nodes
    edges = mesh.v_edges

    diag = np.zeros((K, nv, n, n))
    lower = np.zeros((K, nv, n, n))
    upper = np.zeros((K, nv, n, n))

    # volume: -(w f, d_v l_s) - (theta f, d_vv l_s), w = u - v
    wt = u[:, None, None] - v[None, :, :]
    diag -= np.einsum('t,kjt,ts->kjst', w, wt, D)
    diag -= theta[:, None, None, None] * np.einsum('j,t,ts->jst', 2.0 / h, w, D2)[None]

    if nv > 1:
        w_plus, w_minus = np.maximum(u[:, None] - edges[None, 1:-1], 0.0), \
            np.minimum(u[:, None] - edges[None, 1:-1], 0.0)
        value = np.empty((nv - 1, 2 * n))
        deriv = np.empty((nv - 1, 2 * n))
        for k in range(nv - 1):
            value[k], deriv[k] = recovery_stencils(mesh.p, float(h[k]), float(h[k + 1]))
        aL, aR = value[:, :n], value[:, n:]
        bL, bR = deriv[:, :n], deriv[:, n:]
        th = theta[:, None, None, None]

        # top interface of elements 0..nv-2
        h_top = (2.0 / h[:-1])[:, None, None]
        diag[:, :-1] += w_plus[:, :, None, None] * np.outer(lp, lp)
        upper[:, :-1] += w_minus[:, :, None, None] * np.outer(lp, lm)
        diag[:, :-1] -= th * (lp[None, :, None] * bL[:, None, :] - h_top * dlp[None, :, None] * aL[:, None, :])
        upper[:, :-1] -= th * (lp[None, :, None] * bR[:, None, :] - h_top * dlp[None, :, None] * aR[:, None, :])

        # bottom interface of elements 1..nv-1
        h_bot = (2.0 / h[1:])[:, None, None]
        lower[:, 1:] -= w_plus[:, :, None, None] * np.outer(lm, lp)
        diag[:, 1:] -= w_minus[:, :, None, None] * np.outer(lm, lm)
        lower[:, 1:] += th * (lm[None, :, None] * bL[:, None, :] - h_bot * dlm[None, :, None] * aL[:, None, :])
        diag[:, 1:] += th * (lm[None, :, None] * bR[:, None, :] - h_bot * dlm[None, :, None] * aR[:, None, :])

    scale = (2.0 / (h[:, None] * w[None, :]))[None, :, :, None]
    return diag * scale, lower * scale, upper * scale


def collision_matrix(rho):
    """CollisionMatrix for the fluid states of a MomentField."""
    state = rho.fluid()
    return CollisionMatrix(rho.mesh, state.u, state.theta)


def lb_form(f, rho):
    """Mass-inverted Lenard-Bernstein residual L[rho] f (without nu)."""
    return collision_matrix(rho).apply(f.values)


def implicit_lb_solve(f_star, rho_star, lam):
    """Backward-Euler collision update (I + lam L[rho_star]) f = f_star."""
    if lam == 0:
        return f_star.copy()
    return DistributionField(f_star.mesh, collision_matrix(rho_star).solve(f_star.values, lam))

import logging
import numpy as np
import vplb.errors as er
from vplb.helpers.quadrature import lagrange_basis


class PhaseMesh(object):
    """
    Tensor-product phase-space mesh I_ij = I_i^x x I_j^v with (p+1)
    Gauss-Legendre nodes per element and direction.

    Nodal arrays are flat: spatial nodes are numbered element-major
    (k = i*(p+1) + r), velocity nodes likewise (l = j*(p+1) + s).
    A distribution is stored as an (X, V) array, one contiguous velocity
    slice per spatial node, so the global DOF order is (i, r, j, s):
    spatial element, spatial node, velocity element, velocity node.
    Snapshot files are written in (i, j, r, s) order instead, see
    write_snapshot.

    Attributes:
        p: polynomial degree
        basis: the LagrangeBasis of degree p
        x_edges, v_edges: element edges
        nx, nv: number of elements
        dx, dv: element widths
        x, v: flat nodal coordinates, shapes (X,) and (V,)
        wx, wv: flat physical quadrature weights (Delta W / 2)
        e: (V, 3) nodal values of (1, v, v^2/2)
        moment_weights: wv[:, None] * e, so that f @ moment_weights = <e f>
    """

    def __init__(self, x_edges, v_edges, p):
        self.p = p
        self.n = p + 1
        self.basis = lagrange_basis(p)

        self.x_edges = np.asarray(x_edges, dtype=float)
        self.v_edges = np.asarray(v_edges, dtype=float)
        self.nx = len(self.x_edges) - 1
        self.nv = len(self.v_edges) - 1
        self.dx = np.diff(self.x_edges)
        self.dv = np.diff(self.v_edges)

        xi, w = self.basis.nodes, self.basis.weights
        x_centres = 0.5 * (self.x_edges[1:] + self.x_edges[:-1])
        v_centres = 0.5 * (self.v_edges[1:] + self.v_edges[:-1])

        self.x_nodes = x_centres[:, None] + 0.5 * self.dx[:, None] * xi[None, :]
        self.v_nodes = v_centres[:, None] + 0.5 * self.dv[:, None] * xi[None, :]
        self.v_centres = v_centres

        self.x = self.x_nodes.ravel()
        self.v = self.v_nodes.ravel()
        self.wx = (0.5 * self.dx[:, None] * w[None, :]).ravel()
        self.wv = (0.5 * self.dv[:, None] * w[None, :]).ravel()

        self.e = np.stack([np.ones_like(self.v), self.v, 0.5 * self.v**2], axis=1)
        self.moment_weights = self.wv[:, None] * self.e

    @property
    def shape(self):
        return (self.nx * self.n, self.nv * self.n)

    @property
    def length(self):
        return self.x_edges[-1] - self.x_edges[0]

    @property
    def v_min(self):
        return self.v_edges[0]

    @property
    def v_max(self):
        return self.v_edges[-1]

    def same_as(self, other):
        return self.p == other.p and np.array_equal(self.x_edges, other.x_edges) \
            and np.array_equal(self.v_edges, other.v_edges)


def build_mesh(x_min, x_max, nx, v_min, v_max, nv, p, micro_macro=False):
    """
    Build a uniform phase mesh.

    v = 0 has to coincide with a velocity-element edge, so that the upwind
    splittings of v are polynomial on every element. Degrees below 2 void the
    conservation properties: this is a warning for the direct method and an
    error for the micro-macro method.
    """
    if nx < 1 or nv < 1:
        raise er.ConfigurationError("Need at least one element per direction (nx=%i, nv=%i)" % (nx, nv))
    if not x_min < x_max or not v_min < v_max:
        raise er.ConfigurationError("Domain bounds must be increasing")
    if p < 0:
        raise er.ConfigurationError("Polynomial degree must be non-negative")
    if p < 2:
        if micro_macro:
            raise er.ConfigurationError("The micro-macro method needs p >= 2, got p=%i" % p)
        logging.warning('Degree p=%i < 2: discrete moments are not conserved' % p)

    x_edges = np.linspace(x_min, x_max, nx + 1)
    v_edges = np.linspace(v_min, v_max, nv + 1)

    scale = max(abs(v_min), abs(v_max))
    zero = np.argmin(np.abs(v_edges))
    if abs(v_edges[zero]) > 1e-12 * scale:
        raise er.ConfigurationError("v=0 is not a velocity interface of [%g, %g] with nv=%i"
                                    % (v_min, v_max, nv))
    v_edges[zero] = 0.0

    return PhaseMesh(x_edges, v_edges, p)


class FluidState(object):
    """
    Density n, bulk velocity u and temperature theta; scalars or arrays of
    equal shape (one entry per spatial node).
    """

    def __init__(self, n, u, theta):
        self.n = n
        self.u = u
        self.theta = theta

    def moments(self):
        return moments_from_fluid(self)

    def __iter__(self):
        return iter((self.n, self.u, self.theta))

    def __repr__(self):
        return "FluidState(n=%r, u=%r, theta=%r)" % (self.n, self.u, self.theta)


def fluid_from_moments(rho, locations=None):
    """
    Invert rho = (n, n u, n (u^2 + theta) / 2) along the last axis of rho.

    Nonpositive density or temperature raises DomainError; if locations
    (one x coordinate per state) are given, the first offending one is
    reported.
    """
    rho = np.asarray(rho, dtype=float)
    n = rho[..., 0]
    with np.errstate(divide='ignore', invalid='ignore'):
        u = rho[..., 1] / n
        theta = 2.0 * rho[..., 2] / n - u**2

    bad = ~((n > 0) & (theta > 0) & np.isfinite(theta))
    if np.any(bad):
        where = None
        if locations is not None:
            where = np.asarray(locations).ravel()[np.flatnonzero(bad)[0]]
        raise er.DomainError("Moments do not admit a fluid state (n > 0, theta > 0)", where)

    return FluidState(n, u, theta)


def moments_from_fluid(state):
    n, u, theta = (np.asarray(a, dtype=float) for a in state)
    return np.stack([n, n * u, 0.5 * n * (u**2 + theta)], axis=-1)


class DistributionField(object):
    """
    Nodal DG representation of f_h (or g_h) on a PhaseMesh.

    values[k, l] = f_h(x_k, v_l) with flat spatial index k and flat velocity
    index l; blocks exposes the (i, r, j, s) view.
    """

    def __init__(self, mesh, values=None):
        self.mesh = mesh
        if values is None:
            values = np.zeros(mesh.shape)
        values = np.asarray(values, dtype=float)
        if values.shape != mesh.shape:
            raise er.UsageError("Distribution values of shape %r do not fit mesh %r"
                                % (values.shape, mesh.shape))
        self.values = values

    @classmethod
    def from_function(cls, mesh, func):
        """Pointwise nodal sampling of func(x, v)."""
        return cls(mesh, func(mesh.x[:, None], mesh.v[None, :]) + np.zeros(mesh.shape))

    @property
    def blocks(self):
        m = self.mesh
        return self.values.reshape(m.nx, m.n, m.nv, m.n)

    def copy(self):
        return DistributionField(self.mesh, self.values.copy())

    def check_finite(self):
        bad = ~np.isfinite(self.values)
        if np.any(bad):
            k, _ = np.unravel_index(np.flatnonzero(bad)[0], bad.shape)
            raise er.DomainError("Non-finite distribution value", self.mesh.x[k])
        return self


class MomentField(object):
    """
    Nodal values of rho = (rho0, rho1, rho2) at the spatial GL nodes, shape (X, 3).
    """

    def __init__(self, mesh, values=None):
        self.mesh = mesh
        if values is None:
            values = np.zeros((mesh.shape[0], 3))
        values = np.asarray(values, dtype=float)
        if values.shape != (mesh.shape[0], 3):
            raise er.UsageError("Moment values of shape %r do not fit mesh" % (values.shape,))
        self.values = values

    @classmethod
    def from_fluid(cls, mesh, n, u, theta):
        """Nodal moments of fluid profiles given as callables of x (or constants)."""
        x = mesh.x
        state = FluidState(*(np.broadcast_to(f(x) if callable(f) else f, x.shape) for f in (n, u, theta)))
        return cls(mesh, moments_from_fluid(state))

    @property
    def blocks(self):
        return self.values.reshape(self.mesh.nx, self.mesh.n, 3)

    def fluid(self):
        return fluid_from_moments(self.values, self.mesh.x)

    def copy(self):
        return MomentField(self.mesh, self.values.copy())


def moments_of(f):
    """Nodal moments <e f> at every spatial node (GL per velocity element)."""
    return MomentField(f.mesh, f.values @ f.mesh.moment_weights)


def global_totals(field):
    """Integrate the moments of a DistributionField or MomentField over D^x."""
    if isinstance(field, DistributionField):
        field = moments_of(field)
    return field.mesh.wx @ field.values


def element_traces(nodal, basis):
    """
    Left and right traces of element-wise nodal data.

    nodal has shape (nx, p+1, ...); returns two arrays of shape (nx, ...).
    """
    left = np.tensordot(basis.left, nodal, axes=(0, 1))
    right = np.tensordot(basis.right, nodal, axes=(0, 1))
    return left, right


class GhostBoundary(object):
    """
    Frozen exterior states for non-periodic spatial boundaries, taken from the
    initial condition at x_min and x_max. Each attribute holds a
    (left, right) pair or None.

    Attributes:
        f: velocity slices of the distribution (direct method), shape (V,)
        rho: moment vectors, shape (3,)
        g: velocity slices of the micro distribution, shape (V,)
    """

    def __init__(self, f=None, rho=None, g=None):
        self.f = f
        self.rho = rho
        self.g = g

    @classmethod
    def from_distribution(cls, f):
        left, right = element_traces(f.blocks.reshape(f.mesh.nx, f.mesh.n, -1), f.mesh.basis)
        return cls(f=(left[0].copy(), right[-1].copy()))

    @classmethod
    def from_micro_macro(cls, rho, g):
        mesh = rho.mesh
        rho_left, rho_right = element_traces(rho.blocks, mesh.basis)
        g_left, g_right = element_traces(g.blocks.reshape(mesh.nx, mesh.n, -1), mesh.basis)
        return cls(rho=(rho_left[0].copy(), rho_right[-1].copy()),
                   g=(g_left[0].copy(), g_right[-1].copy()))


def interface_states(left_traces, right_traces, exterior=None):
    """
    States on either side of the nx+1 spatial interfaces.

    Returns (minus, plus) of shape (nx+1, ...): minus[k] is the trace of
    element k-1 at x_{k-1/2}^-, plus[k] the trace of element k. With
    exterior=None the domain is periodic, otherwise exterior = (left, right)
    supplies the states outside x_min and x_max.
    """
    minus = np.concatenate([right_traces[-1:], right_traces], axis=0)
    plus = np.concatenate([left_traces, left_traces[:1]], axis=0)
    if exterior is not None:
        minus[0] = exterior[0]
        plus[-1] = exterior[1]
    return minus, plus


def _snapshot_header(mesh, t):
    return "nx=%i,nv=%i,p=%i,x_min=%.17g,x_max=%.17g,v_min=%.17g,v_max=%.17g,t=%.17g" % (
        mesh.nx, mesh.nv, mesh.p, mesh.x_edges[0], mesh.x_edges[-1],
        mesh.v_edges[0], mesh.v_edges[-1], t)


def write_snapshot(path, f, t):
    """
    Write a distribution snapshot: one header line, then x, v, value per node,
    ordered by (spatial element, velocity element, spatial node, velocity node).
    """
    m = f.mesh
    blocks = f.blocks.transpose(0, 2, 1, 3)
    x = np.broadcast_to(m.x_nodes[:, None, :, None], blocks.shape)
    v = np.broadcast_to(m.v_nodes[None, :, None, :], blocks.shape)
    rows = np.stack([x.ravel(), v.ravel(), blocks.ravel()], axis=1)
    np.savetxt(path, rows, fmt='%.17g', delimiter=',', header=_snapshot_header(m, t))


def write_moment_snapshot(path, rho, t):
    """Write x, n, u, theta per spatial node in the snapshot format."""
    state = rho.fluid()
    rows = np.stack([rho.mesh.x, state.n, state.u, state.theta], axis=1)
    np.savetxt(path, rows, fmt='%.17g', delimiter=',', header=_snapshot_header(rho.mesh, t))

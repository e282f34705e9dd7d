import logging
import numpy as np
import vplb.errors as er
from vplb.helpers.banded import solve_tridiagonal


COMPATIBILITY_TOLERANCE = 1e-8


class ElectricField(object):
    """
    Continuous piecewise-linear potential and the element-constant field.

    Attributes:
        phi: nodal potential at the nx+1 element edges (periodic: phi[-1] == phi[0])
        E: (nx,) element values, E_i = -(phi_{i+1/2} - phi_{i-1/2}) / dx_i
    """

    def __init__(self, phi, E):
        self.phi = phi
        self.E = E

    @classmethod
    def zero(cls, mesh):
        return cls(np.zeros(mesh.nx + 1), np.zeros(mesh.nx))

    def nodal(self, mesh):
        """E repeated at the spatial GL nodes, shape (X,)."""
        return np.repeat(self.E, mesh.n)


def calibrate_ne(rho):
    """Background density: the spatial mean of the initial number density."""
    mesh = rho.mesh
    return float(mesh.wx @ rho.values[:, 0]) / mesh.length


class PoissonSolver(object):
    """
    Linear finite elements for -phi'' = n - n_e on the element edges.

    The load is the DG nodal density integrated element-wise against the hat
    functions with the (p+1)-point GL rule. Periodic problems are singular:
    phi at x_min is pinned, the remaining tridiagonal system is solved and
    the gauge is then moved to sum(phi) = 0 over the distinct nodes. With
    bc='fixed' the potential vanishes at both ends.
    """

    def __init__(self, mesh, n_e, bc='periodic'):
        if bc not in ('periodic', 'fixed'):
            raise er.ConfigurationError("Unknown Poisson boundary condition %r" % bc)
        self.mesh = mesh
        self.n_e = n_e
        self.bc = bc

        xi, w = mesh.basis.nodes, mesh.basis.weights
        # element-wise quadrature weights against the left and right hat function
        self._hat_left = 0.5 * w * 0.5 * (1.0 - xi)
        self._hat_right = 0.5 * w * 0.5 * (1.0 + xi)

        inv = 1.0 / mesh.dx
        nx = mesh.nx
        # unknowns are phi_1..phi_{nx-1} in both cases (phi_0 = phi_nx = 0)
        self._diag = inv[:-1] + inv[1:]
        self._lower = np.concatenate([[0.0], -inv[1:nx - 1]]) if nx > 1 else np.zeros(0)
        self._upper = np.concatenate([-inv[1:nx - 1], [0.0]]) if nx > 1 else np.zeros(0)

    def load(self, density):
        """Load vector b_k = int (n - n_e) psi_k dx over all nx+1 edges."""
        mesh = self.mesh
        source = (density - self.n_e).reshape(mesh.nx, mesh.n)
        left = mesh.dx * (source @ self._hat_left)
        right = mesh.dx * (source @ self._hat_right)
        b = np.zeros(mesh.nx + 1)
        b[:-1] += left
        b[1:] += right
        return b

    def solve(self, density):
        """Field for the nodal density (X,)."""
        mesh = self.mesh
        b = self.load(density)

        if self.bc == 'periodic':
            b[0] += b[-1]
            b = b[:-1]
            residual = b.sum()
            scale = np.abs(b).sum() + abs(self.n_e) * mesh.length
            logging.debug('Poisson compatibility residual %e' % residual)
            if abs(residual) > COMPATIBILITY_TOLERANCE * max(scale, 1.0):
                raise er.SolverError("Periodic Poisson problem is incompatible", residual)
            interior = b[1:]
        else:
            interior = b[1:-1]

        phi = np.zeros(mesh.nx + 1)
        if len(interior) > 0:
            phi[1:-1] = solve_tridiagonal(self._lower, self._diag, self._upper, interior)

        if self.bc == 'periodic':
            phi -= phi[:-1].mean()
            phi[-1] = phi[0]

        E = -(phi[1:] - phi[:-1]) / mesh.dx
        return ElectricField(phi, E)


def solve_poisson(mesh, density, n_e, bc='periodic'):
    return PoissonSolver(mesh, n_e, bc).solve(density)

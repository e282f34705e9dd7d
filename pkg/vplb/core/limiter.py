import numpy as np
import scipy.linalg
from scipy.linalg.lapack import dgglse
import vplb.errors as er
from vplb.core.mesh import DistributionField


class CleaningLimiter(object):
    """
    Minimal L2 correction of a micro distribution restoring <e g> = 0 at
    every spatial node.

    Since e lies in the DG velocity space for p >= 2, the constrained least
    squares minimizer is g - sum_k lambda_k e_k with G lambda = <e g>,
    G = <e e^T> (GL quadrature, exact). G does not depend on the data and is
    factorized once. method='gglse' solves the same weighted problem per
    node with LAPACK's generalized RQ routine instead.
    """

    def __init__(self, mesh, method='gram'):
        if method not in ('gram', 'gglse'):
            raise er.ConfigurationError("Unknown cleaning method %r" % method)
        self.mesh = mesh
        self.method = method
        self.gram = mesh.e.T @ mesh.moment_weights
        try:
            self._factor = scipy.linalg.cho_factor(self.gram)
        except np.linalg.LinAlgError as exc:
            raise er.SolverError("Singular Gram matrix of the velocity domain: %s" % exc)

    def multipliers(self, g):
        """lambda per spatial node, shape (K, 3) for g of shape (K, V)."""
        return scipy.linalg.cho_solve(self._factor, (g @ self.mesh.moment_weights).T).T

    def __call__(self, g):
        if isinstance(g, DistributionField):
            return DistributionField(g.mesh, self(g.values))
        g = np.asarray(g, dtype=float)
        single = g.ndim == 1
        g2 = np.atleast_2d(g)
        if self.method == 'gram':
            out = g2 - self.multipliers(g2) @ self.mesh.e.T
        else:
            out = np.array([self._gglse(row) for row in g2])
        return out[0] if single else out

    def clean_slice(self, g_slice):
        return self(np.asarray(g_slice, dtype=float))

    def _gglse(self, g):
        m = self.mesh
        root = np.sqrt(m.wv)
        a = np.diag(root)
        b = np.ascontiguousarray(m.moment_weights.T)
        c = root * g
        d = np.zeros(3)
        _, _, _, x, info = dgglse(a, b, c, d)
        if info != 0:
            raise er.SolverError("Generalized RQ cleaning failed (info=%i)" % info)
        return x


def clean(g, method='gram'):
    """Clean every velocity slice of a DistributionField."""
    return CleaningLimiter(g.mesh, method)(g)

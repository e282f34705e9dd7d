import functools
import numpy as np
from numpy.polynomial import Polynomial
import vplb.errors as er


NEWTON_TOLERANCE = 1e-15
NEWTON_MAX_ITERATIONS = 100


class GLRule(object):
    """
    Gauss-Legendre rule on the reference interval [-1, 1].

    Attributes:
        order: number of points n; integrates monomials up to degree 2n-1 exactly
        nodes: strictly increasing nodes, symmetric about 0
        weights: positive weights summing to 2
    """

    def __init__(self, nodes, weights):
        self.order = len(nodes)
        self.nodes = _frozen(nodes)
        self.weights = _frozen(weights)


@functools.lru_cache(maxsize=None)
def gl_rule(n):
    """
    Compute the n-point Gauss-Legendre rule by Newton iteration on P_n,
    starting from the asymptotic (Tricomi) guess for the roots.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise er.InvalidOrderError(n)
    n = int(n)

    k = np.arange(1, n + 1)
    x = -np.cos(np.pi * (k - 0.25) / (n + 0.5))

    for _ in range(NEWTON_MAX_ITERATIONS):
        p, dp = _legendre(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) <= NEWTON_TOLERANCE:
            break

    _, dp = _legendre(n, x)
    w = 2.0 / ((1.0 - x**2) * dp**2)

    # exact symmetry about 0
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return GLRule(x, w)


def _legendre(n, x):
    # P_n(x) and P_n'(x) by the three-term recurrence
    p_prev = np.ones_like(x)
    p = np.array(x, dtype=float)
    if n == 0:
        return p_prev, np.zeros_like(x)
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    dp = n * (x * p - p_prev) / (x**2 - 1.0)
    return p, dp


class LagrangeBasis(object):
    """
    Nodal Lagrange basis of degree p on the (p+1) Gauss-Legendre nodes.

    Indices q run from 0 to p. Everything tabulated here is computed once
    per degree (see lagrange_basis) and is read-only.

    Attributes:
        degree: p
        nodes, weights: the (p+1)-point GL rule
        diff: diff[r, q] = l_q'(xi_r)
        diff2: diff2[r, q] = l_q''(xi_r)
        right, left: l_q(+1), l_q(-1)
        dright, dleft: l_q'(+1), l_q'(-1)
        monomials: monomials[q, m], coefficient of xi^m in l_q
        dmonomials: dmonomials[q, m], coefficient of xi^m in l_q' (padded to p+1)
    """

    def __init__(self, degree):
        if degree < 0:
            raise er.ConfigurationError("Polynomial degree must be non-negative, got %i" % degree)

        self.degree = degree
        self.cardinality = degree + 1

        rule = gl_rule(degree + 1)
        self.nodes = rule.nodes
        self.weights = rule.weights

        self._polys = []
        for q in range(self.cardinality):
            others = np.delete(self.nodes, q)
            denominator = np.prod(self.nodes[q] - others)
            self._polys.append(Polynomial.fromroots(others) / denominator)
        self._d1 = [poly.deriv() for poly in self._polys]
        self._d2 = [poly.deriv(2) for poly in self._polys]

        self.diff = _frozen(self.values(self.nodes, derivative=1).T)
        self.diff2 = _frozen(self.values(self.nodes, derivative=2).T)
        self.right = _frozen(self.values(1.0))
        self.left = _frozen(self.values(-1.0))
        self.dright = _frozen(self.values(1.0, derivative=1))
        self.dleft = _frozen(self.values(-1.0, derivative=1))

        n = self.cardinality
        self.monomials = _frozen(np.array([_padded(poly.coef, n) for poly in self._polys]))
        self.dmonomials = _frozen(np.array([_padded(poly.coef, n) for poly in self._d1]))

    def values(self, xi, derivative=0):
        """
        Evaluate all basis functions (or their first/second derivative) at xi.
        Returns an array of shape (p+1,) + shape(xi).
        """
        polys = (self._polys, self._d1, self._d2)[derivative]
        xi = np.asarray(xi, dtype=float)
        return np.array([poly(xi) for poly in polys])

    def eval(self, q, xi):
        return self._polys[self._check(q)](xi)

    def deriv(self, q, xi):
        return self._d1[self._check(q)](xi)

    def deriv2(self, q, xi):
        return self._d2[self._check(q)](xi)

    def _check(self, q):
        if not (0 <= q <= self.degree) or int(q) != q:
            raise er.BasisIndexError(q, self.degree)
        return int(q)


@functools.lru_cache(maxsize=None)
def lagrange_basis(degree):
    return LagrangeBasis(degree)


def lagrange_eval(basis, q, xi):
    return basis.eval(q, xi)


def lagrange_deriv(basis, q, xi):
    return basis.deriv(q, xi)


def lagrange_deriv2(basis, q, xi):
    return basis.deriv2(q, xi)


def _padded(coef, n):
    out = np.zeros(n)
    out[:len(coef)] = coef[:n]
    return out


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a

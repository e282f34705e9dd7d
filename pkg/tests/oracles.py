import numpy as np
from numpy.polynomial.legendre import leggauss


def composite(a, b, cells=200, order=10):
    """Nodes and weights of a composite Gauss rule on [a, b]."""
    x, w = leggauss(order)
    edges = np.linspace(a, b, cells + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def integrate(func, a, b, cells=200, order=10):
    nodes, weights = composite(a, b, cells, order)
    return np.sum(weights * func(nodes), axis=-1)


def maxwellian(n, u, theta, v):
    return n / np.sqrt(2.0 * np.pi * theta) * np.exp(-(v - u)**2 / (2.0 * theta))


def maxwellian_moments(n, u, theta, func, width=12.0, cells=400):
    """int func(v) M dv by dense quadrature over u +- width sqrt(theta)."""
    s = np.sqrt(theta)
    return integrate(lambda v: func(v) * maxwellian(n, u, theta, v), u - width * s, u + width * s, cells)


def e(v):
    return np.array([np.ones_like(v), v, 0.5 * v**2])


def lagrange_product(nodes, q, xi):
    """l_q(xi) in product form."""
    out = 1.0
    for r, x_r in enumerate(nodes):
        if r != q:
            out = out * (xi - x_r) / (nodes[q] - x_r)
    return out


def fluid_moments(n, u, theta):
    return np.array([n, n * u, 0.5 * n * (u**2 + theta)])

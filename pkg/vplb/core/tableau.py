import numpy as np
import vplb.errors as er


class ButcherTableau(object):
    """
    Paired explicit/implicit Runge-Kutta coefficients of an s-stage IMEX
    scheme. Purely explicit SSP-RK schemes carry a zero implicit part.

    Attributes:
        a_ex, w_ex: explicit matrix (strictly lower triangular) and weights
        a_im, w_im: implicit matrix (lower triangular) and weights
        c_ex, c_im: abscissae (row sums)
    """

    def __init__(self, name, a_ex, w_ex, a_im=None, w_im=None):
        self.name = name
        self.a_ex = np.array(a_ex, dtype=float)
        self.w_ex = np.array(w_ex, dtype=float)
        stages = len(self.w_ex)
        self.a_im = np.zeros((stages, stages)) if a_im is None else np.array(a_im, dtype=float)
        self.w_im = np.zeros(stages) if w_im is None else np.array(w_im, dtype=float)

        if self.a_ex.shape != (stages, stages) or self.a_im.shape != (stages, stages) \
                or self.w_im.shape != (stages,):
            raise er.UsageError("Inconsistent tableau dimensions for %s" % name)
        if np.any(np.triu(self.a_ex) != 0.0):
            raise er.UsageError("Explicit tableau of %s is not strictly lower triangular" % name)
        if np.any(np.triu(self.a_im, 1) != 0.0):
            raise er.UsageError("Implicit tableau of %s is not lower triangular" % name)

        self.c_ex = self.a_ex.sum(axis=1)
        self.c_im = self.a_im.sum(axis=1)

    @property
    def stages(self):
        return len(self.w_ex)

    @property
    def implicit(self):
        return np.any(self.a_im != 0.0)

    @property
    def gsa(self):
        """Globally stiffly accurate: the last stage of both tableaus is the update."""
        return np.array_equal(self.a_ex[-1], self.w_ex) and np.array_equal(self.a_im[-1], self.w_im)

    def __repr__(self):
        return "ButcherTableau(%s, stages=%i, gsa=%s)" % (self.name, self.stages, self.gsa)


def _ars111():
    return ButcherTableau('ars111',
                          [[0.0, 0.0], [1.0, 0.0]], [1.0, 0.0],
                          [[0.0, 0.0], [0.0, 1.0]], [0.0, 1.0])


def _pdars():
    return ButcherTableau('pdars',
                          [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, 0.5, 0.0]], [0.5, 0.5, 0.0],
                          [[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.5, 0.5]], [0.0, 0.5, 0.5])


def _ssprk2():
    return ButcherTableau('ssprk2', [[0.0, 0.0], [1.0, 0.0]], [0.5, 0.5])


def _ssprk3():
    return ButcherTableau('ssprk3',
                          [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.25, 0.25, 0.0]],
                          [1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0])


TABLEAUS = {
    'ars111': _ars111,
    'pdars': _pdars,
    'ssprk2': _ssprk2,
    'ssprk3': _ssprk3,
}


def tableau(name):
    try:
        return TABLEAUS[name]()
    except KeyError:
        raise er.ConfigurationError("Unknown tableau %r (known: %s)" % (name, ', '.join(sorted(TABLEAUS))))


def cfl_dt(mesh, C):
    """Dt = C / (2p + 1) * min dx / max(|v_min|, |v_max|)."""
    if C <= 0:
        raise er.ConfigurationError("CFL number must be positive, got %r" % C)
    return C / (2 * mesh.p + 1) * mesh.dx.min() / max(abs(mesh.v_min), abs(mesh.v_max))

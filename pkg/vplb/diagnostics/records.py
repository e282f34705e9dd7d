import csv
import numpy as np
from scipy.signal import correlate, correlation_lags, find_peaks
from scipy.stats import linregress
import vplb.errors as er


COLUMNS = ['t', 'M0', 'M1', 'M2', 'Mf0', 'Mf1', 'Mf2', 'E_total', 'E_pot',
           'g_max0', 'g_max1', 'g_max2', 'g_l1_0', 'g_l1_1', 'g_l1_2',
           'energy_residual', 'f_min']


class DiagnosticsRecord(object):
    """
    Conserved quantities and constraint measures of one state.

    Attributes:
        t: time
        M: global totals of the evolved moments (rho for mM, <e f> for direct)
        Mf: global totals of <e f> (for mM: rho + <e g>)
        E_total: int rho2 dx + 1/2 int E^2 dx
        E_pot: 1/2 int E^2 dx
        g_max, g_l1: max and L1 norm in x of <e_k g> (mM only, else None)
        energy_residual: -int <v g> E dx (mM only, else None)
        f_min: minimum nodal value of f
    """

    def __init__(self, t, M, Mf, E_total, E_pot, g_max=None, g_l1=None, energy_residual=None,
                 f_min=None):
        self.t = t
        self.M = np.asarray(M)
        self.Mf = np.asarray(Mf)
        self.E_total = E_total
        self.E_pot = E_pot
        self.g_max = g_max
        self.g_l1 = g_l1
        self.energy_residual = energy_residual
        self.f_min = f_min

    def row(self):
        """Values in COLUMNS order, None for columns the method does not have."""
        def three(a):
            return [None] * 3 if a is None else [float(q) for q in a]
        return [self.t] + three(self.M) + three(self.Mf) + [self.E_total, self.E_pot] \
            + three(self.g_max) + three(self.g_l1) + [self.energy_residual, self.f_min]


def potential_energy(mesh, field):
    """1/2 int E^2 dx for element-constant E."""
    return 0.5 * float(mesh.dx @ field.E**2)


def total_energy(system, state):
    """Kinetic energy from the evolved energy moment plus the field energy."""
    mesh = system.mesh
    kinetic = float(mesh.wx @ system.moments(state)[:, 2])
    return kinetic + potential_energy(mesh, state.field)


def record(system, state):
    mesh = system.mesh
    M = mesh.wx @ system.moments(state)
    Mf = mesh.wx @ system.kinetic_moments(state)
    E_pot = potential_energy(mesh, state.field)
    out = DiagnosticsRecord(state.t, M, Mf, float(M[2]) + E_pot, E_pot, f_min=system.f_min(state))

    micro = system.micro_moments(state)
    if micro is not None:
        out.g_max = np.abs(micro).max(axis=0)
        out.g_l1 = mesh.wx @ np.abs(micro)
        out.energy_residual = system.energy_residual(state)
    return out


class DiagnosticsWriter(object):
    """CSV stream of DiagnosticsRecords: one header row, 17 significant digits."""

    def __init__(self, path):
        self._file = open(path, 'w', newline='')
        self._writer = csv.writer(self._file)
        self._writer.writerow(COLUMNS)

    def write(self, rec):
        self._writer.writerow(['' if v is None else '%.17g' % v for v in rec.row()])

    def flush(self):
        self._file.flush()

    def close(self):
        self._file.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def read_diagnostics(path):
    """Columns of a diagnostics CSV as a dict of float arrays (NaN where empty)."""
    with open(path, newline='') as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    return dict((name, np.array([float(r[k]) if r[k] else np.nan for r in body]))
                for k, name in enumerate(header))


def _values(a):
    return a.values if hasattr(a, 'values') else np.asarray(a, dtype=float)


def error_norm(x, x_ref, mesh=None):
    """
    Relative discrete L1 deviation ||x - x_ref||_1 / ||x_ref||_1 with the
    spatial GL weights. x and x_ref are nodal arrays (first axis spatial) or
    MomentFields.
    """
    if hasattr(x, 'mesh') and hasattr(x_ref, 'mesh'):
        if not x.mesh.same_as(x_ref.mesh):
            raise er.MeshMismatchError(x.mesh.shape, x_ref.mesh.shape)
        mesh = x.mesh
    a, b = _values(x), _values(x_ref)
    if a.shape != b.shape:
        raise er.MeshMismatchError(a.shape, b.shape)

    weights = np.ones(a.shape[0]) if mesh is None else mesh.wx
    if len(weights) != a.shape[0]:
        raise er.MeshMismatchError(a.shape, (len(weights),))
    reference = weights @ np.abs(b)
    return np.sum(weights @ np.abs(a - b)) / np.sum(reference)


def reference_average(x_a, x_b):
    return 0.5 * (_values(x_a) + _values(x_b))


def reference_floor(x_a, x_b, mesh=None):
    """Half the deviation between two reference solutions, the resolution floor of error_norm."""
    return 0.5 * error_norm(x_a, x_b, mesh)


def velocity_dofs(method, nv, p):
    """Velocity degrees of freedom per spatial node."""
    if method == 'direct':
        return nv * (p + 1)
    elif method == 'mm':
        return nv * (p + 1) + 3
    raise er.ConfigurationError("Unknown method %r" % method)


def damping_rate(t, e_pot, window=(5.0, 45.0)):
    """
    Decay rate of the field amplitude from the potential energy: the least
    squares slope of log E_pot through its local maxima inside window, halved.
    """
    t = np.asarray(t, dtype=float)
    e_pot = np.asarray(e_pot, dtype=float)
    peaks, _ = find_peaks(e_pot)
    peaks = peaks[(t[peaks] >= window[0]) & (t[peaks] <= window[1])]
    if len(peaks) < 2:
        raise er.UsageError("Need two maxima of E_pot in [%g, %g], found %i"
                            % (window[0], window[1], len(peaks)))
    fit = linregress(t[peaks], np.log(e_pot[peaks]))
    return -0.5 * fit.slope


def phase_lag(a, b, max_lag=None):
    """
    Shift (in samples) of b relative to a that maximizes their normalized
    cross-correlation; positive when b lags a.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise er.UsageError("Time series of different lengths")
    a = a - a.mean()
    b = b - b.mean()
    norm = np.linalg.norm(a) * np.linalg.norm(b)
    if norm == 0:
        return 0
    corr = correlate(b, a, mode='full') / norm
    lags = correlation_lags(len(b), len(a), mode='full')
    if max_lag is not None:
        keep = np.abs(lags) <= max_lag
        corr, lags = corr[keep], lags[keep]
    return int(lags[np.argmax(corr)])

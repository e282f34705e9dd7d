from tests.assertions import CustomAssertions
from mock import MagicMock
import os
import tempfile
import numpy as np
import vplb.core.mesh as m
import vplb.diagnostics.records as rc
import vplb.errors as er
import vplb.systems.problems as pr


class TestDiagnosticsRecord(CustomAssertions):
    def test_columns(self):
        self.assertEqual(len(rc.COLUMNS), 17)
        self.assertEqual(rc.COLUMNS[0], 't')
        self.assertEqual(rc.COLUMNS[-1], 'f_min')

    def test_row_of_direct_record(self):
        rec = rc.DiagnosticsRecord(0.5, [1.0, 2.0, 3.0], [1.0, 2.0, 3.0], 3.5, 0.5, f_min=-1e-3)
        row = rec.row()
        self.assertEqual(len(row), len(rc.COLUMNS))
        self.assertEqual(row[:4], [0.5, 1.0, 2.0, 3.0])
        self.assertEqual(row[9:16], [None] * 7)
        self.assertEqual(row[16], -1e-3)


class TestRecordOfSystem(CustomAssertions):
    def setUp(self):
        self.problem = pr.get_problem('relaxation')
        self.mesh = self.problem.mesh()
        self.f0 = m.DistributionField.from_function(self.mesh, self.problem.f0)

    def test_direct_relaxation(self):
        system = self.problem.system(self.mesh, 'direct')
        state = system.initial_state(self.f0)
        rec = rc.record(system, state)
        self.assertArrayEqual(rec.M, [2.0, 1.0, 4.75], 4)
        self.assertArrayEqual(rec.Mf, rec.M, 15)
        self.assertEqual(rec.E_pot, 0.0)
        self.assertAlmostEqualWithDecimals(rc.total_energy(system, state), 4.75, 4)
        self.assertIsNone(rec.g_max)
        self.assertIsNone(rec.energy_residual)
        self.assertTrue(rec.f_min >= 0.0)

    def test_micro_macro_relaxation(self):
        system = self.problem.system(self.mesh, 'mm')
        state = system.initial_state(self.f0)
        rec = rc.record(system, state)
        self.assertArrayEqual(rec.Mf, rec.M, 12)
        self.assertArrayEqual(rec.g_max, np.zeros(3), 12)
        self.assertArrayEqual(rec.g_l1, np.zeros(3), 12)
        self.assertEqual(rec.energy_residual, 0.0)

    def test_zero_state_has_no_energy(self):
        system = self.problem.system(self.mesh, 'direct')
        state = system.initial_state(m.DistributionField(self.mesh))
        self.assertEqual(rc.total_energy(system, state), 0.0)

    def test_potential_energy(self):
        mesh = m.build_mesh(0, 2, 2, -1, 1, 2, 2)
        field = MagicMock()
        field.E = np.array([1.0, -2.0])
        self.assertAlmostEqual(rc.potential_energy(mesh, field), 2.5, places=15)


class TestDiagnosticsFile(CustomAssertions):
    def test_empty_columns_read_back_as_nan(self):
        records = [rc.DiagnosticsRecord(0.0, [1.0, 0.0, 2.0], [1.0, 0.0, 2.0], 2.0, 0.0, f_min=0.1),
                   rc.DiagnosticsRecord(0.1, [1.0, 0.0, 2.0], [1.0, 1e-17, 2.0], 2.0, 0.0,
                                        g_max=np.zeros(3), g_l1=np.zeros(3),
                                        energy_residual=0.0, f_min=0.1)]
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'diagnostics.csv')
            with rc.DiagnosticsWriter(path) as writer:
                for rec in records:
                    writer.write(rec)
            with open(path) as fh:
                header = fh.readline().strip()
            data = rc.read_diagnostics(path)

        self.assertEqual(header, ','.join(rc.COLUMNS))
        self.assertArrayEqual(data['t'], [0.0, 0.1], 17)
        self.assertEqual(data['Mf1'][1], 1e-17)
        self.assertTrue(np.isnan(data['g_max0'][0]))
        self.assertEqual(data['g_max0'][1], 0.0)


class TestErrorNorm(CustomAssertions):
    def setUp(self):
        self.mesh = m.build_mesh(0, 1, 4, -2, 2, 2, 2)
        self.rho = m.MomentField.from_fluid(self.mesh, lambda x: 1 + x, 0.5, 1.0)

    def test_identical(self):
        self.assertEqual(rc.error_norm(self.rho, self.rho), 0.0)

    def test_doubled(self):
        doubled = m.MomentField(self.mesh, 2 * self.rho.values)
        self.assertAlmostEqualWithDecimals(rc.error_norm(doubled, self.rho), 1.0, 14)

    def test_weights_follow_the_mesh(self):
        x = np.zeros(self.mesh.x.shape)
        x_ref = self.mesh.x.copy()
        self.assertEqual(rc.error_norm(x, x_ref, self.mesh), 1.0)
        self.assertAlmostEqualWithDecimals(self.mesh.wx @ x_ref, 0.5, 14)

    def test_mesh_mismatch(self):
        other = m.MomentField.from_fluid(m.build_mesh(0, 1, 8, -2, 2, 2, 2), 1.0, 0.0, 1.0)
        with self.assertRaises(er.MeshMismatchError):
            rc.error_norm(self.rho, other)

    def test_shape_mismatch(self):
        with self.assertRaises(er.MeshMismatchError):
            rc.error_norm(np.ones(12), np.ones(6))

    def test_reference_floor(self):
        a = np.ones(12)
        b = 3 * np.ones(12)
        self.assertArrayEqual(rc.reference_average(a, b), 2 * np.ones(12), 15)
        self.assertAlmostEqualWithDecimals(rc.reference_floor(a, b, self.mesh), 1.0 / 3, 14)


class TestVelocityDofs(CustomAssertions):
    def test_counts(self):
        self.assertEqual(rc.velocity_dofs('direct', 16, 2), 48)
        self.assertEqual(rc.velocity_dofs('mm', 16, 2), 51)

    def test_unknown_method(self):
        with self.assertRaises(er.ConfigurationError):
            rc.velocity_dofs('pic', 16, 2)


class TestDampingRate(CustomAssertions):
    def setUp(self):
        self.t = np.linspace(0, 50, 50001)

    def test_synthetic_decay(self):
        gamma = 0.15
        e_pot = np.exp(-2 * gamma * self.t) * np.cos(1.4 * self.t)**2
        self.assertAlmostEqual(rc.damping_rate(self.t, e_pot), gamma, places=3)

    def test_window_restricts_peaks(self):
        e_pot = np.exp(-0.2 * self.t) * np.cos(1.4 * self.t)**2
        e_pot[self.t > 20] = e_pot[self.t > 20] * 10.0
        self.assertAlmostEqual(rc.damping_rate(self.t, e_pot, (1.0, 19.0)), 0.1, places=3)

    def test_needs_two_peaks(self):
        with self.assertRaises(er.UsageError):
            rc.damping_rate(self.t, np.exp(-self.t))


class TestPhaseLag(CustomAssertions):
    def setUp(self):
        n = np.arange(400)
        self.a = np.exp(-(n - 100.0)**2 / 50)
        self.b = np.exp(-(n - 103.0)**2 / 50)

    def test_delayed_pulse(self):
        self.assertEqual(rc.phase_lag(self.a, self.b), 3)
        self.assertEqual(rc.phase_lag(self.b, self.a), -3)

    def test_max_lag(self):
        self.assertEqual(rc.phase_lag(self.a, self.b, max_lag=1), 1)

    def test_constant_series(self):
        self.assertEqual(rc.phase_lag(np.ones(5), np.ones(5)), 0)

    def test_lengths_must_match(self):
        with self.assertRaises(er.UsageError):
            rc.phase_lag(np.ones(5), np.ones(4))

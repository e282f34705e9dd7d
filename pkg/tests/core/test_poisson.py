from tests.assertions import CustomAssertions
import numpy as np
import vplb.core.mesh as m
import vplb.core.poisson as ps
import vplb.errors as er


class TestPeriodicPoisson(CustomAssertions):
    def setUp(self):
        self.mesh = m.build_mesh(-2 * np.pi, 2 * np.pi, 64, -6, 6, 4, 2)

    def test_neutral_plasma_has_no_field(self):
        field = ps.solve_poisson(self.mesh, np.ones(self.mesh.shape[0]), 1.0)
        self.assertArrayEqual(field.E, np.zeros(64), 13)
        self.assertArrayEqual(field.phi, np.zeros(65), 13)

    def test_cosine_perturbation(self):
        a, k = 1e-2, 0.5
        density = 1.0 + a * np.cos(k * self.mesh.x)
        field = ps.solve_poisson(self.mesh, density, 1.0)

        phi_exact = a / k**2 * np.cos(k * self.mesh.x_edges)
        E_exact = -np.diff(phi_exact) / self.mesh.dx
        self.assertArrayClose(field.phi, phi_exact, 1e-2)
        self.assertArrayClose(field.E, E_exact, 1e-2)

    def test_gauge_and_periodicity(self):
        density = 1.0 + 0.1 * np.sin(0.5 * self.mesh.x) + 0.05 * np.cos(self.mesh.x)
        field = ps.solve_poisson(self.mesh, density, 1.0)
        self.assertAlmostEqualWithDecimals(field.phi[:-1].sum(), 0.0, 12)
        self.assertEqual(field.phi[0], field.phi[-1])
        # the field of a periodic potential has zero mean
        self.assertAlmostEqualWithDecimals(self.mesh.dx @ field.E, 0.0, 12)

    def test_incompatible_background(self):
        with self.assertRaises(er.SolverError):
            ps.solve_poisson(self.mesh, np.ones(self.mesh.shape[0]), 0.5)

    def test_single_element(self):
        mesh = m.build_mesh(0, 1, 1, -1, 1, 2, 2)
        field = ps.solve_poisson(mesh, np.ones(3), 1.0)
        self.assertArrayEqual(field.E, [0.0], 15)

    def test_nodal_field(self):
        field = ps.ElectricField(np.zeros(65), np.arange(64.0))
        nodal = field.nodal(self.mesh)
        self.assertEqual(nodal.shape, (192,))
        self.assertArrayEqual(nodal[3:6], [1.0, 1.0, 1.0], 15)


class TestFixedPoisson(CustomAssertions):
    def test_parabola(self):
        mesh = m.build_mesh(0, 1, 8, -1, 1, 2, 2)
        field = ps.PoissonSolver(mesh, 0.0, bc='fixed').solve(np.ones(mesh.shape[0]))
        x = mesh.x_edges
        self.assertArrayEqual(field.phi, 0.5 * x * (1 - x), 14)
        self.assertArrayEqual(field.E, -(0.5 - (x[1:] + x[:-1]) / 2), 13)

    def test_unknown_boundary(self):
        mesh = m.build_mesh(0, 1, 8, -1, 1, 2, 2)
        with self.assertRaises(er.ConfigurationError):
            ps.PoissonSolver(mesh, 1.0, bc='neumann')


class TestCalibration(CustomAssertions):
    def test_two_stream_background(self):
        mesh = m.build_mesh(-2 * np.pi, 2 * np.pi, 16, -2 * np.pi, 2 * np.pi, 16, 2)
        rho = m.MomentField.from_fluid(mesh, lambda x: 0.5 * (1 + 0.05 * np.cos(0.5 * x)), 0.0, 1.0)
        self.assertAlmostEqualWithDecimals(ps.calibrate_ne(rho), 0.5, 12)

    def test_load_is_conservative(self):
        mesh = m.build_mesh(0, 2, 5, -1, 1, 2, 2)
        solver = ps.PoissonSolver(mesh, 0.0)
        density = 1 + mesh.x**2
        self.assertAlmostEqualWithDecimals(solver.load(density).sum(), mesh.wx @ density, 14)

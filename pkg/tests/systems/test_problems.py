from tests.assertions import CustomAssertions
import numpy as np
import vplb.core.mesh as m
import vplb.errors as er
import vplb.systems.problems as pr
from vplb.systems.kinetic_system import DirectSystem, MicroMacroSystem


class TestRegistry(CustomAssertions):
    def test_names(self):
        self.assertEqual(sorted(pr.PROBLEMS), ['landau', 'relaxation', 'riemann', 'two_stream'])

    def test_unknown(self):
        with self.assertRaises(er.ConfigurationError):
            pr.get_problem('bump_on_tail')

    def test_defaults_are_complete(self):
        for name in pr.PROBLEMS:
            problem = pr.get_problem(name)
            self.assertEqual(set(problem.defaults), set(pr.Problem.PARAMETERS))


class TestInitialConditions(CustomAssertions):
    def test_relaxation_moments(self):
        problem = pr.get_problem('relaxation')
        mesh = problem.mesh()
        f0 = m.DistributionField.from_function(mesh, problem.f0)
        self.assertArrayEqual(m.global_totals(f0), [2.0, 1.0, 4.75], 4)

    def test_relaxation_equilibrium(self):
        eq = pr.Relaxation.equilibrium
        self.assertArrayEqual(m.moments_from_fluid(eq), [2.0, 1.0, 4.75], 14)

    def test_riemann_data(self):
        problem = pr.get_problem('riemann')
        v = np.array([0.0])
        self.assertAlmostEqual(problem.f0(-0.5, v)[0], 1 / np.sqrt(2 * np.pi), places=14)
        self.assertAlmostEqual(problem.f0(0.0, v)[0], 1 / np.sqrt(2 * np.pi), places=14)
        self.assertAlmostEqual(problem.f0(0.5, v)[0], 0.125 / np.sqrt(2 * np.pi * 0.8), places=14)

    def test_two_stream_vanishes_at_rest(self):
        problem = pr.get_problem('two_stream')
        self.assertEqual(problem.f0(1.0, 0.0), 0.0)
        self.assertAlmostEqual(problem.f0(0.0, 1.0), 0.5 / np.sqrt(np.pi) * np.exp(-1.0), places=15)

    def test_landau_perturbation(self):
        problem = pr.get_problem('landau')
        self.assertAlmostEqual(problem.f0(0.0, 0.0), (1 + 1e-4) / np.sqrt(2 * np.pi), places=15)
        self.assertAlmostEqual(problem.f0(2 * np.pi, 0.0), (1 - 1e-4) / np.sqrt(2 * np.pi), places=15)

    def test_landau_mesh(self):
        mesh = pr.get_problem('landau').mesh(nx=8, nv=16)
        self.assertEqual(mesh.shape, (24, 48))
        self.assertEqual(mesh.v_max, 6.0)


class TestSystemFactory(CustomAssertions):
    def setUp(self):
        self.problem = pr.get_problem('landau')
        self.mesh = self.problem.mesh(nx=4, nv=8)

    def test_direct_ignores_micro_macro_options(self):
        system = self.problem.system(self.mesh, 'direct', clean=False, extended_cells=False)
        self.assertIsInstance(system, DirectSystem)
        self.assertEqual(system.tableau.name, 'pdars')

    def test_micro_macro(self):
        system = self.problem.system(self.mesh, 'mm', clean=False, nu=0.0)
        self.assertIsInstance(system, MicroMacroSystem)
        self.assertFalse(system.clean)

    def test_unknown_method(self):
        with self.assertRaises(er.ConfigurationError):
            self.problem.system(self.mesh, 'pic')

    def test_init_problem(self):
        problem, system, state = pr.init_problem('landau', 'mm', mesh=self.mesh)
        self.assertEqual(state.rho.shape, (12, 3))
        self.assertEqual(state.g.shape, self.mesh.shape)
        self.assertEqual(state.t, 0.0)
        self.assertAlmostEqualWithDecimals(system.n_e, state.rho[:, 0] @ self.mesh.wx / self.mesh.length, 14)

    def test_init_problem_micro_macro_mesh(self):
        problem, system, state = pr.init_problem('riemann', 'mm', mesh=pr.get_problem('riemann').mesh(nx=8, nv=8))
        self.assertIsNotNone(system.boundary)
        self.assertArrayEqual(system.boundary.rho[0], [1.0, 0.0, 0.5], 3)

from tests.assertions import CustomAssertions
import numpy as np
import vplb.core.lenard_bernstein as lb
import vplb.core.maxwellian as mx
import vplb.core.mesh as m
import vplb.errors as er
from vplb.helpers.quadrature import gl_rule, lagrange_basis


class TestRecovery(CustomAssertions):
    def cell_nodes(self, width, side, p=2):
        basis = lagrange_basis(p)
        return 0.5 * width * (basis.nodes + side)

    def test_reproduces_cubic(self):
        poly = np.polynomial.Polynomial([1.0, 2.0, -1.0, 0.5])
        for dl, dr in [(1.0, 1.0), (0.5, 1.5)]:
            value, derivative = lb.recovery_interface(poly(self.cell_nodes(dl, -1)),
                                                      poly(self.cell_nodes(dr, 1)), dl, dr)
            self.assertAlmostEqualWithDecimals(value, 1.0, 12)
            self.assertAlmostEqualWithDecimals(derivative, 2.0, 11)

    def test_symmetric_data(self):
        data = np.array([0.3, 0.7, 1.1])
        value, derivative = lb.recovery_interface(data, data[::-1], 1.0, 1.0)
        self.assertAlmostEqualWithDecimals(derivative, 0.0, 13)

    def test_stencils_cached_and_frozen(self):
        a = lb.recovery_stencils(2, 1.0, 1.0)
        self.assertIs(a, lb.recovery_stencils(2, 1.0, 1.0))
        with self.assertRaises(ValueError):
            a[0][0] = 1.0

    def test_batched_interfaces(self):
        rng = np.random.RandomState(0)
        left, right = rng.rand(4, 3), rng.rand(4, 3)
        values, derivatives = lb.recovery_interface(left, right, 0.5, 0.5)
        value, derivative = lb.recovery_interface(left[2], right[2], 0.5, 0.5)
        self.assertAlmostEqual(values[2], value, places=15)
        self.assertAlmostEqual(derivatives[2], derivative, places=15)


class TestCollisionMatrix(CustomAssertions):
    def setUp(self):
        self.mesh = m.build_mesh(0, 1, 1, -8, 8, 16, 2)
        self.matrix = lb.CollisionMatrix(self.mesh, np.array([0.0, 0.5, -1.0]), np.array([1.0, 2.0, 0.5]))

    def test_block_shapes(self):
        self.assertEqual(self.matrix.diag.shape, (3, 16, 3, 3))
        self.assertEqual(self.matrix.dense(1).shape, (48, 48))

    def test_apply_matches_dense(self):
        f = np.random.RandomState(3).rand(3, 48)
        out = self.matrix.apply(f)
        for k in range(3):
            self.assertArrayEqual(out[k], self.matrix.dense(k) @ f[k], 12)

    def test_conserves_mass(self):
        f = np.random.RandomState(6).rand(3, 48)
        self.assertArrayEqual(self.matrix.apply(f) @ self.mesh.wv, np.zeros(3), 11)

    def test_maxwellian_is_nearly_steady(self):
        mesh = m.build_mesh(0, 1, 1, -8, 8, 32, 2)
        matrix = lb.CollisionMatrix(mesh, 0.5, 2.0)
        f = mx.eval_maxwellian(m.FluidState(1.0, 0.5, 2.0), mesh.v)[None, :]
        relaxed = matrix.solve(f, 1e3)
        self.assertArrayClose(relaxed, f, 5e-2)
        self.assertArrayClose(relaxed @ mesh.wv, f @ mesh.wv, 1e-12)

    def test_solve(self):
        rhs = np.random.RandomState(7).rand(3, 48)
        lam = 0.3
        x = self.matrix.solve(rhs, lam)
        self.assertArrayEqual(x + lam * self.matrix.apply(x), rhs, 11)

    def test_solve_conserves_mass(self):
        rhs = np.random.RandomState(2).rand(3, 48)
        x = self.matrix.solve(rhs, 10.0)
        self.assertArrayEqual(x @ self.mesh.wv, rhs @ self.mesh.wv, 10)

    def test_zero_weight_is_identity(self):
        rhs = np.ones((3, 48))
        x = self.matrix.solve(rhs, 0.0)
        self.assertArrayEqual(x, rhs, 15)
        self.assertIsNot(x, rhs)

    def test_negative_weight(self):
        with self.assertRaises(er.UsageError):
            self.matrix.solve(np.ones((3, 48)), -1.0)


class TestForms(CustomAssertions):
    def setUp(self):
        self.mesh = m.build_mesh(0, 1, 2, -6, 6, 8, 2)
        self.f = m.DistributionField.from_function(
            self.mesh, lambda x, v: (1 + 0.1 * x) * np.exp(-(v - 0.3)**2 / 2) / np.sqrt(2 * np.pi))
        self.rho = m.moments_of(self.f)

    def test_lb_form(self):
        expected = lb.collision_matrix(self.rho).apply(self.f.values)
        self.assertArrayEqual(lb.lb_form(self.f, self.rho), expected, 15)

    def test_implicit_solve(self):
        out = lb.implicit_lb_solve(self.f, self.rho, 0.5)
        residual = out.values + 0.5 * lb.lb_form(out, self.rho)
        self.assertArrayEqual(residual, self.f.values, 11)

    def test_implicit_solve_zero_weight(self):
        out = lb.implicit_lb_solve(self.f, self.rho, 0)
        self.assertArrayEqual(out.values, self.f.values, 15)

    def test_invalid_moments(self):
        rho = self.rho.copy()
        rho.values[0, 2] = 0.0
        with self.assertRaises(er.DomainError):
            lb.collision_matrix(rho)


def bimodal(x, v):
    return (1 + 0.3 * np.sin(2 * np.pi * x)) * (np.exp(-(v - 1.5)**2 / 0.8) + 0.6 * np.exp(-(v + 2.0)**2 / 1.2))


class TestMomentPreservation(CustomAssertions):
    def setUp(self):
        self.mesh = m.build_mesh(0, 1, 3, -6, 6, 8, 2)
        self.f = m.DistributionField.from_function(self.mesh, bimodal)
        self.rho = m.moments_of(self.f)

    def test_solve_keeps_all_moments(self):
        for lam in (1e-3, 1.0, 1e3):
            out = lb.implicit_lb_solve(self.f, self.rho, lam)
            self.assertArrayClose(m.moments_of(out).values, self.rho.values, 1e-11)

    def test_own_moments_annihilate_the_form(self):
        moments = lb.lb_form(self.f, self.rho) @ self.mesh.moment_weights
        self.assertArrayEqual(moments, np.zeros((9, 3)), 11)


class TestMomentsOfForm(CustomAssertions):
    def setUp(self):
        self.mesh = m.build_mesh(0, 1, 3, -6, 6, 8, 2)
        self.f = m.DistributionField.from_function(self.mesh, bimodal)
        # drift and temperature unrelated to f, so no moment vanishes
        self.rho = m.MomentField.from_fluid(self.mesh, 1.0, lambda x: 0.4 - 0.3 * x, 0.7)

    def dense_moments(self, weight):
        """<weight(v) f> per spatial node on a 10-point GL rule per velocity element."""
        mesh = self.mesh
        rule = gl_rule(10)
        phi = mesh.basis.values(rule.nodes)
        v = mesh.v_centres[:, None] + 0.5 * mesh.dv[:, None] * rule.nodes[None, :]
        f = np.einsum('kjs,sq->kjq', self.f.values.reshape(-1, mesh.nv, mesh.n), phi)
        w = 0.5 * mesh.dv[:, None] * rule.weights[None, :]
        return np.einsum('jq,kjq->k', w, weight(v) * f)

    def test_against_dense_quadrature(self):
        state = self.rho.fluid()
        u, theta = state.u[:, None, None], state.theta
        mass = self.dense_moments(lambda v: 1.0)
        drift = self.dense_moments(lambda v: u - v)
        drift_v = self.dense_moments(lambda v: v * (u - v))
        expected = -np.stack([np.zeros_like(mass), drift, drift_v + theta * mass], axis=1)

        moments = lb.lb_form(self.f, self.rho) @ self.mesh.moment_weights
        self.assertArrayClose(moments, expected, 1e-12)

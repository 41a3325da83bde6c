""" Tests of the value functions of the layer problems

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits import oracle
from edp_limits.oracle import BruteForceConvergenceError, ProfileProblem
from numpy.testing import assert_allclose
from scipy import integrate
import math
import numpy as np
import unittest


class GTestCase(unittest.TestCase):

    def test_g_closed(self):
        self.assertAlmostEqual(oracle.g_closed(0., 1., 4.), 2. * (1. - 2.) ** 2, delta=1e-13)
        self.assertAlmostEqual(oracle.g_closed(0., 0.3, 2.2), 2. * (math.sqrt(0.3) - math.sqrt(2.2)) ** 2, delta=1e-13)
        self.assertEqual(oracle.g_closed(0., 1., 1.), 0.)
        self.assertAlmostEqual(oracle.g_closed(2., 1., 1.), 4. * math.asinh(1.) - 2. * math.sqrt(8.) + 4., delta=1e-13)
        self.assertAlmostEqual(oracle.g_closed(2., 1., 1.), 1.86864, delta=1e-5)

    def test_g_convex_and_symmetric(self):
        alpha = np.linspace(-4., 4., 81)
        values = np.array([oracle.g_closed(a, 0.7, 1.9) for a in alpha])
        self.assertGreaterEqual(np.min(values[:-2] - 2 * values[1:-1] + values[2:]), -1e-8)
        for a in (-2., 0.3, 1.):
            self.assertAlmostEqual(oracle.g_closed(a, 0.7, 1.9), oracle.g_closed(-a, 1.9, 0.7), delta=1e-13)

    def test_g_minimizer(self):
        self.assertEqual(oracle.g_minimizer(0., 1., 1.).b, 0.)
        self.assertEqual(oracle.g_minimizer(3., 1., 4.).b, 0.)
        parabola = oracle.g_minimizer(1.5, 0.5, 2.)
        assert_allclose(parabola(np.array([0., 1.])), [0.5, 2.], rtol=1e-15)

        # the minimizer has the closed-form cost
        x = np.linspace(0., 1., 20001)
        u = parabola(x)
        du = np.gradient(u, x)
        cost = integrate.trapezoid((1.5 ** 2 + du ** 2) / (2. * u), x)
        self.assertAlmostEqual(cost, oracle.g_closed(1.5, 0.5, 2.), delta=1e-6)

    def test_g_brute(self):
        for alpha, u0, u1 in [(0., 1., 1.), (1.5, 0.5, 2.), (-2.5, 2.5, 0.4)]:
            value, x, profile = oracle.g_brute(alpha, u0, u1, grid_points=200, full_output=True)
            closed = oracle.g_closed(alpha, u0, u1)
            self.assertLess(abs(value - closed) / (1. + closed), 1e-3)
            self.assertLess(np.max(np.abs(profile - oracle.g_minimizer(alpha, u0, u1)(x))), 1e-2)

    def test_g_brute_convergence_error(self):
        with self.assertRaises(BruteForceConvergenceError) as context:
            oracle.g_brute(2., 1., 1., grid_points=50, max_iter=1)
        self.assertEqual(context.exception.last_iterate.size, 49)
        self.assertIn('did not converge', str(context.exception))


class GHatTestCase(unittest.TestCase):

    def test_a_star(self):
        self.assertAlmostEqual(oracle.a_star(lambda y: 1., lambda y: 1.), 1., delta=1e-14)
        self.assertAlmostEqual(oracle.a_star(lambda y: 1., lambda y: math.exp(-y)), 1. / (math.e - 1.), delta=1e-12)
        self.assertAlmostEqual(oracle.a_star(lambda y: 3., lambda y: math.exp(-y)), 3. / (math.e - 1.), delta=1e-12)

    def test_reduces_to_g(self):
        for alpha, u0, u1 in [(0., 1., 2.), (1.2, 0.4, 0.9)]:
            self.assertAlmostEqual(oracle.g_hat(alpha, u0, u1, lambda y: 1., lambda y: 1.),
                                   oracle.g_closed(alpha, u0, u1), delta=1e-12)

    def test_rescaling(self):
        def A_fun(y):
            return 1. + 0.5 * y

        def W_fun(y):
            return math.exp(-y)

        a = oracle.a_star(A_fun, W_fun)
        alpha, u0, u1 = 0.8, 1.1, 0.6
        self.assertAlmostEqual(oracle.g_hat(alpha, u0, u1, A_fun, W_fun),
                               a * oracle.g_closed(alpha / a, u0 / W_fun(0.), u1 / W_fun(1.)), delta=1e-12)

    def test_g_hat_brute(self):
        def A_fun(y):
            return 1. + 0.5 * math.sin(3. * y)

        def W_fun(y):
            return math.exp(-y)

        problem = ProfileProblem(0.8, 1.1, 0.6, A_fun=A_fun, W_fun=W_fun)
        closed = problem.closed()
        self.assertAlmostEqual(closed, oracle.g_hat(0.8, 1.1, 0.6, A_fun, W_fun), delta=1e-14)
        self.assertLess(abs(problem.brute(grid_points=200) - closed) / closed, 1e-3)

        plain = ProfileProblem(0.8, 1.1, 0.6)
        self.assertAlmostEqual(plain.a_star, 1., delta=1e-14)
        self.assertEqual(plain.closed(), oracle.g_closed(0.8, 1.1, 0.6))

        with self.assertRaisesRegex(ValueError, 'positive'):
            ProfileProblem(0., -1., 1.)


class NTestCase(unittest.TestCase):

    def test_n_closed(self):
        self.assertEqual(oracle.n_closed(0., 2., 2.), 0.)
        self.assertAlmostEqual(oracle.n_closed(math.log(3.) - math.log(0.5), 0.5, 3.), 0., delta=1e-13)
        self.assertAlmostEqual(oracle.n_closed(0., 1., 4.), 2., delta=1e-13)

    def test_n_brute(self):
        for delta, v0, v1 in [(0., 1., 4.), (1.2, 0.5, 1.5), (-0.7, 2., 0.6)]:
            closed = oracle.n_closed(delta, v0, v1)
            self.assertLess(abs(oracle.n_brute(delta, v0, v1, grid_points=200) - closed) / (1. + abs(closed)), 1e-3)

    def test_bridge(self):
        for delta, v0, v1 in [(0., 1., 4.), (1.2, 0.5, 1.5), (-0.7, 2., 0.6)]:
            self.assertAlmostEqual(oracle.n_closed(delta, v0, v1), -oracle.g_star(delta, v0, v1), delta=1e-4)

    def test_m_identity(self):
        random_state = np.random.RandomState(5)
        z = np.linspace(0., 1., 41)
        for _ in range(5):
            coefficients = random_state.uniform(-0.5, 0.5, size=3)
            v = 1. + coefficients[0] * z + coefficients[1] * np.sin(np.pi * z) + 0.3 * coefficients[2] * np.cos(3 * z)
            delta = random_state.uniform(-2., 2.)
            formula = oracle.m_of_profile(delta, v)
            self.assertAlmostEqual(oracle.m_sup_zeta(delta, v), formula, delta=1e-4)
            self.assertAlmostEqual(oracle.m_min_alpha(delta, v), formula, delta=1e-4)

    def test_n_of_profile(self):
        z = np.linspace(0., 1., 11)
        v = np.ones(11)
        self.assertAlmostEqual(oracle.n_of_profile(v, 2. * z), -2., delta=1e-12)
        self.assertAlmostEqual(oracle.m_of_profile(2., v), -2., delta=1e-12)


class OracleTableTestCase(unittest.TestCase):

    def test_random_instance(self):
        self.assertEqual(oracle.random_instance(7), oracle.random_instance(7))
        alpha, u0, u1, delta = oracle.random_instance(7)
        self.assertTrue(-3. <= alpha <= 3.)
        self.assertTrue(0.2 <= u0 <= 3. and 0.2 <= u1 <= 3.)
        self.assertTrue(-2. <= delta <= 2.)

    def test_oracle_table(self):
        rows = oracle.oracle_table([1, 2], grid_points=200)
        self.assertEqual(len(rows), 2)
        for row in rows:
            self.assertLess(row.g_gap, 1e-3)
            self.assertLess(row.parabola_gap, 1e-2)
            self.assertLess(row.n_gap, 1e-3)
            self.assertLess(row.bridge_gap, 1e-4)
            self.assertEqual(len(row.to_list()), len(oracle.OracleRow.HEADER))
        self.assertEqual(rows[0].alpha, oracle.random_instance(1)[0])

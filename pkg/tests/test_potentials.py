""" Tests of the scalar convex-analysis kernel

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits import potentials
from edp_limits.potentials import (DissipationPair, EntropyDensity, DomainError, OutOfRangeError,
                                   UnboundedSupremumError)
from numpy.testing import assert_allclose
from scipy import optimize
import math
import numpy as np
import unittest


class CoshPairTestCase(unittest.TestCase):

    def test_cosh_star(self):
        self.assertEqual(potentials.cosh_star(0.), 0.)
        self.assertAlmostEqual(potentials.cosh_star(2.), 4. * (math.cosh(1.) - 1.), delta=1e-14)
        self.assertAlmostEqual(potentials.cosh_star(2.), 2.1723225, delta=1e-7)
        self.assertEqual(potentials.cosh_star(-3.), potentials.cosh_star(3.))
        assert_allclose(potentials.cosh_star(np.array([-1., 0., 1.])), [4. * (math.cosh(.5) - 1.), 0., 4. * (math.cosh(.5) - 1.)],
                        rtol=1e-14)

    def test_cosh_star_overflow(self):
        with self.assertRaisesRegex(OutOfRangeError, 'overflows'):
            potentials.cosh_star(1e4)

    def test_elementary_relations(self):
        grid = np.arange(1, 20) * 0.05
        p, q = np.meshgrid(grid, grid)
        assert_allclose(np.sqrt(p * q) * potentials.cosh_star(np.log(p) - np.log(q)),
                        2. * (np.sqrt(p) - np.sqrt(q)) ** 2, rtol=0, atol=1e-12)
        assert_allclose(np.sqrt(p * q) * potentials.cosh_star_prime(np.log(p) - np.log(q)),
                        p - q, rtol=0, atol=1e-12)
        self.assertAlmostEqual(2. * potentials.cosh_star(np.log(4.)), 2., delta=1e-14)

    def test_cosh_c(self):
        self.assertEqual(potentials.cosh_c(0.), 0.)
        self.assertLess(abs(potentials.cosh_c(1e-3) - 0.5e-6), 1e-12)
        v = np.linspace(-4., 4., 17)
        assert_allclose(potentials.cosh_c(v), 2 * v * np.arcsinh(v / 2) - 2 * np.sqrt(4 + v ** 2) + 4, atol=1e-13)
        assert_allclose(potentials.cosh_c_prime(v), 2 * np.arcsinh(v / 2), atol=1e-14)

        result = optimize.minimize_scalar(lambda xi: -(3. * xi - potentials.cosh_star(xi)),
                                          bracket=(0., 1., 5.), method='golden', tol=1e-12)
        self.assertAlmostEqual(potentials.cosh_c(3.), -result.fun, delta=1e-10)

    def test_arsinh(self):
        x = np.array([-1e8, -10., -1e-9, 0., 1e-9, 3., 1e8])
        assert_allclose(potentials.arsinh(x), np.arcsinh(x), rtol=1e-14)

    def test_convexity(self):
        x = np.linspace(-6., 6., 241)
        for fun in (potentials.cosh_c, potentials.cosh_star):
            values = fun(x)
            self.assertGreaterEqual(np.min(values[:-2] - 2 * values[1:-1] + values[2:]), 0.)

    def test_derivatives(self):
        xi = np.linspace(-3., 3., 13)
        assert_allclose(potentials.cosh_star_prime(xi), 2 * np.sinh(xi / 2), rtol=1e-14)
        assert_allclose(potentials.cosh_star_second(xi), np.cosh(xi / 2), rtol=1e-14)
        assert_allclose(potentials.cosh_c_prime(potentials.cosh_star_prime(xi)), xi, atol=1e-13)


class LegendreTestCase(unittest.TestCase):

    def test_quadratic(self):
        self.assertAlmostEqual(potentials.legendre(lambda v: v ** 2 / 2., 3.), 4.5, delta=1e-10)
        value, v = potentials.legendre(lambda v: v ** 2 / 2., -2., full_output=True)
        self.assertAlmostEqual(value, 2., delta=1e-10)
        self.assertAlmostEqual(v, -2., delta=1e-6)

    def test_cosh_duality(self):
        xi = np.linspace(-5., 5., 201)
        numeric = np.array([potentials.legendre(potentials.cosh_c, x) for x in xi])
        assert_allclose(numeric, potentials.cosh_star(xi), rtol=0, atol=1e-8)

    def test_biconjugation(self):
        v = np.linspace(-5., 5., 41)
        numeric = np.array([potentials.legendre(potentials.cosh_star, x) for x in v])
        assert_allclose(numeric, potentials.cosh_c(v), rtol=0, atol=1e-8)

        def quadratic(v):
            return v ** 2 / 2.

        double = np.array([potentials.legendre(lambda xi: potentials.legendre(quadratic, xi), x) for x in v[::4]])
        assert_allclose(double, quadratic(v[::4]), rtol=0, atol=1e-8)

    def test_unbounded(self):
        with self.assertRaises(UnboundedSupremumError) as context:
            potentials.legendre(lambda v: abs(v), 2., search_bound=100.)
        self.assertGreater(len(context.exception.trace), 2)
        self.assertIn('not attained', str(context.exception))


class BoltzmannLogMeanTestCase(unittest.TestCase):

    def test_boltzmann(self):
        self.assertEqual(potentials.boltzmann(1.), 0.)
        self.assertEqual(potentials.boltzmann(0.), 1.)
        self.assertAlmostEqual(potentials.boltzmann(math.e), 1., delta=1e-14)
        self.assertAlmostEqual(potentials.boltzmann_prime(math.e), 1., delta=1e-14)
        self.assertAlmostEqual(potentials.boltzmann_second(4.), 0.25, delta=1e-14)
        with self.assertRaisesRegex(DomainError, 'z >= 0'):
            potentials.boltzmann(-1.)
        with self.assertRaisesRegex(DomainError, 'z > 0'):
            potentials.boltzmann_prime(0.)

    def test_log_mean(self):
        self.assertEqual(potentials.log_mean(2., 2.), 2.)
        self.assertAlmostEqual(potentials.log_mean(4., 1.), 3. / math.log(4.), delta=1e-14)
        self.assertAlmostEqual(potentials.log_mean(4., 1.), 2.16404, delta=1e-5)
        self.assertAlmostEqual(potentials.log_mean(1., 1. + 1e-7), 1. + 0.5e-7, delta=1e-14)
        with self.assertRaisesRegex(DomainError, 'positive'):
            potentials.log_mean(0., 1.)

    def test_log_mean_between_means(self):
        random_state = np.random.RandomState(3)
        a, b = random_state.uniform(1e-3, 10., size=(2, 500))
        mean = potentials.log_mean(a, b)
        self.assertTrue(np.all(np.sqrt(a * b) <= mean * (1 + 1e-14)))
        self.assertTrue(np.all(mean <= (a + b) / 2. * (1 + 1e-14)))

    def test_log_mean_continuity(self):
        a = 3.
        b = a * (1. + np.array([-2e-4, -1e-4, -5e-5, 5e-5, 1e-4, 2e-4]))
        direct = (a - b) / (np.log(a) - np.log(b))
        assert_allclose(potentials.log_mean(a, b), direct, rtol=1e-10)


class InfConvolutionTestCase(unittest.TestCase):

    def test_closed_form(self):
        self.assertEqual(potentials.inf_convolution_cosh(1., 2., 0.), 0.)
        self.assertAlmostEqual(potentials.inf_convolution_cosh(1., 1., 2.), 8. * (math.cosh(.5) - 1.), delta=1e-13)
        self.assertAlmostEqual(potentials.inf_convolution_cosh(1., 1., 2.), 1.0211, delta=1e-4)
        with self.assertRaisesRegex(DomainError, 'positive'):
            potentials.inf_convolution_cosh(0., 1., 1.)

    def test_closed_form_vs_numeric(self):
        random_state = np.random.RandomState(11)
        for a, b, xi in zip(random_state.uniform(0.1, 3., 20), random_state.uniform(0.1, 3., 20),
                            random_state.uniform(-6., 6., 20)):
            numeric = potentials.inf_convolution(lambda tau: a * potentials.cosh_star(tau),
                                                 lambda tau: b * potentials.cosh_star(tau), xi)
            self.assertAlmostEqual(potentials.inf_convolution_cosh(a, b, xi), numeric, delta=1e-8)


class DissipationPairTestCase(unittest.TestCase):

    def test_axioms(self):
        for pair in (DissipationPair.quadratic(), DissipationPair.cosh()):
            self.assertEqual(pair.psi(0.), 0.)
            self.assertEqual(pair.psi_star(0.), 0.)
            self.assertEqual(pair.dpsi(0.), 0.)
            self.assertEqual(pair.dpsi_star(0.), 0.)
            self.assertEqual(pair.psi(-1.5), pair.psi(1.5))

    def test_young_fenchel(self):
        grid = np.linspace(-4., 4., 33)
        for pair in (DissipationPair.quadratic(), DissipationPair.cosh()):
            for v in grid:
                for xi in grid:
                    self.assertGreaterEqual(pair.young_fenchel_gap(v, xi), -1e-12)
                self.assertLessEqual(abs(pair.young_fenchel_gap(v, pair.dpsi(v))), 1e-8)

    def test_fenchel_equivalences(self):
        pair = DissipationPair.cosh()
        v = 1.3
        checks = pair.fenchel_equivalences(v, pair.dpsi(v))
        self.assertEqual(set(checks.values()), set([True]))

        checks = pair.fenchel_equivalences(v, pair.dpsi(v) + 0.5)
        self.assertEqual(set(checks.values()), set([False]))

    def test_from_dual(self):
        pair = DissipationPair.from_dual(potentials.cosh_star, potentials.cosh_star_prime)
        self.assertEqual(pair.kind, 'custom')
        for v in (-2., 0.5, 3.):
            self.assertAlmostEqual(pair.psi(v), potentials.cosh_c(v), delta=1e-8)
            self.assertAlmostEqual(pair.dpsi(v), potentials.cosh_c_prime(v), delta=1e-6)

    def test_mobility(self):
        x = np.array([0.2, 1., 3.])
        y = np.array([0.7, 1., 0.1])
        assert_allclose(DissipationPair.cosh().mobility(x, y), np.sqrt(x * y), rtol=1e-14)
        assert_allclose(DissipationPair.quadratic().mobility(x, y), potentials.log_mean(x, y), rtol=1e-14)

        custom = DissipationPair(potentials.cosh_c, potentials.cosh_star, potentials.cosh_c_prime,
                                 potentials.cosh_star_prime)
        assert_allclose(custom.mobility(x, y), np.sqrt(x * y), rtol=1e-10)
        self.assertAlmostEqual(custom.mobility(2., 2.), 2., delta=1e-12)

        with self.assertRaisesRegex(DomainError, 'positive'):
            DissipationPair.cosh().mobility(-1., 1.)


class EntropyDensityTestCase(unittest.TestCase):

    def test_boltzmann(self):
        phi = EntropyDensity.boltzmann()
        self.assertEqual(phi.kind, 'boltzmann')
        self.assertEqual(phi.phi(1.), 0.)
        self.assertAlmostEqual(phi.dphi(2.), math.log(2.), delta=1e-15)
        self.assertAlmostEqual(phi.ddphi(2.), 0.5, delta=1e-15)

    def test_quadratic(self):
        phi = EntropyDensity.quadratic()
        self.assertEqual(phi.phi(2.), 2.)
        self.assertEqual(phi.dphi(2.), 2.)
        self.assertEqual(phi.ddphi(2.), 1.)

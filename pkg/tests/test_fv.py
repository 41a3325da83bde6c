""" Tests of the finite-volume meshes and operators

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits import fv
from edp_limits.fv import GridFunction1D, GridFunction2D, Mesh1D
from numpy.testing import assert_allclose
import math
import numpy as np
import unittest


class MeshTestCase(unittest.TestCase):

    def test_uniform(self):
        mesh = Mesh1D.uniform(-1., 1., 4)
        assert_allclose(mesh.faces, [-1., -0.5, 0., 0.5, 1.])
        assert_allclose(mesh.centers, [-0.75, -0.25, 0.25, 0.75])
        assert_allclose(mesh.widths, 0.5)
        self.assertEqual(mesh.size, 4)
        assert_allclose(mesh.mass_matrix().diagonal(), 0.5)

    def test_validation(self):
        with self.assertRaisesRegex(ValueError, 'at least two'):
            Mesh1D([0.])
        with self.assertRaisesRegex(ValueError, 'strictly increasing'):
            Mesh1D([0., 1., 1.])
        with self.assertRaisesRegex(ValueError, 'adjacent'):
            Mesh1D.join(Mesh1D.uniform(0., 1., 2), Mesh1D.uniform(1.5, 2., 2))

    def test_join(self):
        mesh = Mesh1D.join(Mesh1D.uniform(-1., 0., 2), Mesh1D.uniform(0., 2., 2))
        assert_allclose(mesh.faces, [-1., -0.5, 0., 1., 2.])

    def test_layered(self):
        epsilon = 0.01
        mesh = Mesh1D.layered(epsilon, 50, 20, 1.15)
        self.assertEqual(mesh.size, 120)
        self.assertEqual(mesh.faces[0], -1.)
        self.assertEqual(mesh.faces[-1], 1.)
        self.assertIn(0., mesh.faces)
        self.assertIn(epsilon, mesh.faces)

        layer = mesh.cells_in(0., epsilon)
        self.assertEqual(np.count_nonzero(layer), 20)
        widths = mesh.widths[layer]
        self.assertAlmostEqual(np.sum(widths), epsilon, delta=1e-15)
        assert_allclose(widths, widths[::-1], rtol=1e-10)
        self.assertAlmostEqual(widths[1] / widths[0], 1.15, delta=1e-10)
        self.assertAlmostEqual(np.min(widths), widths[0], delta=1e-15)
        assert_allclose(mesh.widths[~layer], [0.02] * 50 + [(1. - epsilon) / 50] * 50, rtol=1e-10)

        with self.assertRaisesRegex(ValueError, 'inside'):
            Mesh1D.layered(2., 10, 10, 1.1)
        with self.assertRaisesRegex(ValueError, 'ratio'):
            Mesh1D.layered(0.1, 10, 10, 0.9)

    def test_locate(self):
        mesh = Mesh1D.uniform(0., 1., 4)
        np.testing.assert_array_equal(mesh.locate([0., 0.1, 0.25, 0.99, 1.]), [0, 0, 1, 3, 3])
        self.assertEqual(mesh.face_index(0.49), 2)

    def test_transform(self):
        mesh = Mesh1D.uniform(0., 1., 4).transform(lambda x: 2. * x)
        assert_allclose(mesh.faces, [0., 0.5, 1., 1.5, 2.])


class GridFunctionTestCase(unittest.TestCase):

    def test_mass_and_evaluation(self):
        mesh = Mesh1D.uniform(0., 2., 4)
        f = GridFunction1D(mesh, [1., 2., 3., 4.])
        self.assertAlmostEqual(f.mass(), 5., delta=1e-14)
        assert_allclose(f([0.1, 0.6, 1.9]), [1., 2., 4.])

        g = GridFunction1D.sample(mesh, lambda x: x ** 2)
        assert_allclose(g.values, mesh.centers ** 2)

        with self.assertRaisesRegex(ValueError, 'Expected 4'):
            GridFunction1D(mesh, [1., 2.])

    def test_l1_distance(self):
        coarse = GridFunction1D(Mesh1D.uniform(0., 1., 2), [0.5, 0.5])
        fine = GridFunction1D(Mesh1D.uniform(0., 1., 7), [0.5] * 7)
        self.assertAlmostEqual(coarse.l1_distance(fine), 0., delta=1e-15)

        step = GridFunction1D(Mesh1D.uniform(0., 1., 2), [0., 1.])
        self.assertAlmostEqual(step.l1_distance(coarse), 0.5, delta=1e-15)
        self.assertAlmostEqual(step.l1_distance(fine), fine.l1_distance(step), delta=1e-15)

    def test_2d(self):
        mesh_x = Mesh1D.uniform(0., 1., 2)
        mesh_y = Mesh1D.uniform(0., 4., 4)
        values = np.array([[1., 0., 0., 3.], [2., 0., 0., 2.]])
        f = GridFunction2D(mesh_x, mesh_y, values)
        self.assertAlmostEqual(f.mass(), 4., delta=1e-14)
        assert_allclose(f.marginal_x().values, [4., 4.])
        assert_allclose(f.marginal_y().values, [1.5, 0., 0., 2.5])
        assert_allclose(f.band_marginal(0., 1.).values, [1., 2.])
        assert_allclose(f.band_marginal(3., 4.).values, [3., 2.])
        assert_allclose(f.band_marginal(0., 2.5).values + f.band_marginal(2.5, 4.).values, f.marginal_x().values)
        assert_allclose(f.band_marginal(0., 1.5).values, [1., 2.])

        with self.assertRaisesRegex(ValueError, 'Expected'):
            GridFunction2D(mesh_x, mesh_y, np.ones((4, 2)))


class FittedOperatorTestCase(unittest.TestCase):

    def test_exact_for_exponential_equilibrium(self):
        mesh = Mesh1D.uniform(0., 1., 10)
        w = np.exp(-mesh.centers)
        K = fv.fitted_transmissivities(mesh, np.ones(mesh.size), w)
        assert_allclose(fv.face_fluxes(K, w, w), 0., atol=1e-15)

        # a constant flux F is carried by u = w (c - F e^x)
        F = 0.3
        u = w * (5. - F * np.exp(mesh.centers))
        assert_allclose(fv.face_fluxes(K, u, w), F, rtol=1e-10)

    def test_harmonic_mobility(self):
        mesh = Mesh1D([0., 1., 3.])
        K = fv.fitted_transmissivities(mesh, np.array([1., 4.]), np.ones(2))
        assert_allclose(K, [1. / (0.5 + 0.25)])

        with self.assertRaisesRegex(ValueError, 'positive'):
            fv.fitted_transmissivities(mesh, np.array([1., 0.]), np.ones(2))

    def test_operator(self):
        mesh = Mesh1D.layered(0.05, 20, 20, 1.2)
        a = np.where(mesh.cells_in(0., 0.05), 0.05, 1. + mesh.centers ** 2)
        w = np.exp(-np.sin(3. * mesh.centers))
        K = fv.fitted_transmissivities(mesh, a, w)
        L = fv.diffusion_operator(mesh, K, w)

        assert_allclose(np.asarray(L.sum(axis=0)).ravel(), 0., atol=1e-9 * np.max(K))
        assert_allclose(L @ w, 0., atol=1e-12 * np.max(K))

        with self.assertRaisesRegex(ValueError, 'face coefficients'):
            fv.diffusion_operator(mesh, K[1:], w)

    def test_implicit_euler(self):
        mesh = Mesh1D.layered(0.05, 20, 20, 1.2)
        w = np.exp(-mesh.centers)
        w /= np.dot(mesh.widths, w)
        K = fv.fitted_transmissivities(mesh, np.ones(mesh.size), w)
        L = fv.diffusion_operator(mesh, K, w)
        M = mesh.mass_matrix()

        assert_allclose(fv.implicit_euler_step(M, L, w, 0.01), w, rtol=1e-10)

        u = 0.5 + 0.3 * mesh.centers
        u /= np.dot(mesh.widths, u)
        u_new = fv.implicit_euler_step(M, L, u, 0.01)
        self.assertAlmostEqual(np.dot(mesh.widths, u_new), 1., delta=1e-13)
        self.assertTrue(np.all(u_new > 0))

        step = fv.implicit_euler_solver(M, L, 0.01)
        assert_allclose(step(u), u_new, rtol=1e-12)

        I = fv.flux_integral(mesh, (u_new - u) / 0.01)
        self.assertEqual(I[0], 0.)
        self.assertAlmostEqual(I[-1], 0., delta=1e-11)
        assert_allclose(I[1:-1], -fv.face_fluxes(K, u_new, w), rtol=1e-8, atol=1e-10)

    def test_neumann_mode_decay(self):
        mesh = Mesh1D.uniform(-1., 1., 100)
        w = np.full(mesh.size, 0.5)
        K = fv.fitted_transmissivities(mesh, np.ones(mesh.size), w)
        dt = 1e-3
        step = fv.implicit_euler_solver(mesh.mass_matrix(), fv.diffusion_operator(mesh, K, w), dt)

        mode = np.cos(math.pi * (mesh.centers + 1.) / 2.)
        u = 0.5 + 0.2 * mode
        T = 0.2
        for _ in range(int(round(T / dt))):
            u = step(u)

        amplitude = np.dot(mesh.widths, (u - 0.5) * mode) / np.dot(mesh.widths, mode ** 2)
        rate = -math.log(amplitude / 0.2) / T
        self.assertLess(abs(rate / (math.pi ** 2 / 4.) - 1.), 1e-2)

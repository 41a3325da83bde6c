""" Tests of finite-dimensional gradient systems

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits import gradsys
from edp_limits.gradsys import (AdmissibilityError, DetailedBalanceError, GradientSystem, Reaction,
                                StepSizeUnderflowError, Trajectory)
from edp_limits.potentials import DissipationPair
from numpy.testing import assert_allclose
import csv
import math
import numpy as np
import os
import shutil
import tempfile
import unittest


def exact_two_state(t):
    return 0.5 + 0.4 * np.exp(-2. * t)


class EvolveTestCase(unittest.TestCase):

    def test_two_state_systems(self):
        for gs in (gradsys.two_state_quadratic_gs(1.), gradsys.two_state_entropic_gs(0.5)):
            traj = gradsys.evolve(gs, [0.9], 3., 1e-3)
            self.assertEqual(traj.states.shape, (3001, 1))
            self.assertLess(np.max(np.abs(traj.states[:, 0] - exact_two_state(traj.times))), 1e-6)
            self.assertLessEqual(np.max(np.diff(traj.energies)), 1e-8)
            self.assertLess(np.max(np.abs(traj.edb_residual)), 1e-7)

    def test_vector_fields_agree(self):
        quadratic = gradsys.two_state_quadratic_gs(1.)
        entropic = gradsys.two_state_entropic_gs(0.5)
        for p in np.linspace(0.05, 0.95, 19):
            self.assertAlmostEqual(quadratic.vector_field([p])[0], 1. - 2. * p, delta=1e-14)
            self.assertAlmostEqual(entropic.vector_field([p])[0], 1. - 2. * p, delta=1e-12)

    def test_equilibrium(self):
        gs = gradsys.two_state_entropic_gs(0.5)
        traj = gradsys.evolve(gs, [0.5], 1., 1e-2)
        assert_allclose(traj.states[:, 0], 0.5, rtol=0, atol=1e-15)
        self.assertAlmostEqual(gradsys.degiorgi(gs, traj), 0., delta=1e-15)
        self.assertAlmostEqual(gradsys.rate_functional(gs, traj), 0., delta=1e-15)

    def test_implicit_euler(self):
        gs = gradsys.two_state_quadratic_gs(1.)
        traj = gradsys.evolve(gs, [0.9], 3., 1e-3, integrator='implicit_euler')
        self.assertLess(np.max(np.abs(traj.states[:, 0] - exact_two_state(traj.times))), 2e-3)
        self.assertLessEqual(np.max(np.diff(traj.energies)), 1e-8)

    def test_errors(self):
        gs = gradsys.two_state_entropic_gs(0.5)
        with self.assertRaises(AdmissibilityError):
            gradsys.evolve(gs, [1.5], 1., 1e-2)
        with self.assertRaisesRegex(ValueError, 'dt must be positive'):
            gradsys.evolve(gs, [0.9], 1., 0.)

    def test_step_size_underflow(self):
        # the flow leaves the admissible set immediately, so that every step is rejected
        gs = GradientSystem(
            dim=1,
            energy=lambda u: float(u[0] ** 2 / 2.),
            d_energy=lambda u: np.array(u, dtype=float),
            r_star=lambda u, xi: float(xi[0] ** 2 / 2.),
            d_r_star=lambda u, xi: np.array(xi, dtype=float),
            admissible=lambda u: u[0] >= 1.)
        with self.assertRaises(StepSizeUnderflowError) as context:
            gradsys.evolve(gs, [1.], 1., 0.1, with_edb=False)
        self.assertLess(context.exception.dt, context.exception.dt_min)
        assert_allclose(context.exception.last_iterate, [1.])
        self.assertIn('fell below', str(context.exception))


class DissipationFunctionalTestCase(unittest.TestCase):

    def test_energy_dissipation_balance(self):
        gs = gradsys.two_state_entropic_gs(0.5)
        traj = gradsys.evolve(gs, [0.9], 3., 1e-3)
        self.assertLess(abs(gradsys.edb_gap(gs, traj)), 1e-4)
        self.assertLess(abs(gradsys.rate_functional(gs, traj)), 1e-4)
        self.assertGreater(gradsys.degiorgi(gs, traj), 0.)

    def test_frozen_path(self):
        for gs in (gradsys.two_state_quadratic_gs(1.), gradsys.two_state_entropic_gs(0.5)):
            times = np.linspace(0., 1., 101)
            traj = Trajectory.from_path(gs, times, np.full(times.size, 0.9))
            self.assertGreater(gradsys.edb_gap(gs, traj), 0.1)

    def test_reversed_solution(self):
        gs = gradsys.two_state_entropic_gs(0.5)
        traj = gradsys.evolve(gs, [0.9], 1., 1e-3)
        backward = traj.reversed()
        assert_allclose(backward.states[0], traj.states[-1])
        self.assertGreater(gradsys.rate_functional(gs, backward), 0.1)

    def test_random_paths(self):
        gs = gradsys.two_state_entropic_gs(0.5)
        random_state = np.random.RandomState(17)
        times = np.linspace(0., 1., 101)
        for _ in range(100):
            coefficients = random_state.uniform(-0.1, 0.1, size=4)
            path = 0.5 + coefficients[0] + sum(c * np.sin((k + 1) * np.pi * times) for k, c in enumerate(coefficients[1:]))
            traj = Trajectory.from_path(gs, times, path)
            self.assertGreaterEqual(gradsys.rate_functional(gs, traj), -1e-8)

    def test_fenchel_equality_along_flow(self):
        gs = gradsys.two_state_entropic_gs(0.5)
        for p in (0.1, 0.3, 0.77):
            u = np.array([p])
            xi = -gs.d_energy(u)
            v = gs.d_r_star(u, xi)
            self.assertLessEqual(gs.r(u, v) + gs.r_star(u, xi) - np.dot(xi, v), 1e-6)

    def test_numeric_primal_dissipation(self):
        closed = gradsys.two_state_entropic_gs(0.5)
        numeric = gradsys.two_state_entropic_gs(0.5)
        numeric.r_closed = None
        for p, v in [(0.2, 0.3), (0.6, -1.1), (0.9, 0.)]:
            self.assertAlmostEqual(numeric.r([p], [v]), closed.r([p], [v]), delta=1e-8)

    def test_axioms(self):
        for gs in (gradsys.two_state_quadratic_gs(1.), gradsys.two_state_entropic_gs(0.5)):
            checks = gs.check_axioms(np.array([0.3]), np.array([1.2]))
            self.assertEqual(set(checks.values()), set([True]))

        broken = GradientSystem(
            dim=1,
            energy=lambda u: 0.,
            d_energy=lambda u: np.zeros(1),
            r_star=lambda u, xi: float(1. - np.cos(xi[0])),
            d_r_star=lambda u, xi: np.sin(xi))
        self.assertFalse(broken.check_axioms(np.zeros(1), np.array([3.]))['convex_along_line'])


class TrajectoryTestCase(unittest.TestCase):

    def setUp(self):
        self.dirname = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dirname)

    def test_to_csv(self):
        gs = gradsys.two_state_quadratic_gs(1.)
        traj = gradsys.evolve(gs, [0.9], 0.1, 0.05)
        filename = os.path.join(self.dirname, 'traj.csv')
        traj.to_csv(filename)

        with open(filename, 'r') as file:
            rows = list(csv.reader(file))
        self.assertEqual(rows[0], ['t', 'u_1', 'E', 'edb_residual'])
        self.assertEqual(len(rows), 4)
        self.assertEqual(float(rows[1][1]), 0.9)
        self.assertEqual(float(rows[1][3]), 0.)
        self.assertEqual(float(rows[3][2]), traj.energies[-1])

    def test_velocities(self):
        times = np.linspace(0., 1., 11)
        traj = Trajectory(times, 3. * times ** 2)
        assert_allclose(traj.velocities()[:, 0], 6. * times, atol=1e-12)


class ReactionSystemTestCase(unittest.TestCase):

    def test_single_reaction(self):
        reactions = [Reaction([1, 0], [0, 1], 1., 1.)]
        gs = gradsys.build_reaction_gs(reactions, [0.5, 0.5])
        self.assertEqual(gs.dim, 2)

        random_state = np.random.RandomState(2)
        for c in random_state.uniform(0.05, 1., size=(20, 2)):
            assert_allclose(gs.vector_field(c), [c[1] - c[0], c[0] - c[1]], rtol=1e-9, atol=1e-13)
            assert_allclose(gs.vector_field(c), gradsys.mass_action_field(reactions, c), rtol=1e-9, atol=1e-13)
            mu = random_state.normal(size=2)
            self.assertAlmostEqual(gs.r_star(c, mu),
                                   math.sqrt(c[0] * c[1]) * 4. * (math.cosh((mu[1] - mu[0]) / 2.) - 1.), delta=1e-12)

        assert_allclose(gs.vector_field([0.5, 0.5]), [0., 0.], atol=1e-15)

    def test_quadratic_and_cosh_fields_agree(self):
        reactions = [Reaction([2, 0, 0], [0, 1, 0], 1., 4.), Reaction([0, 1, 0], [0, 0, 1], 3., 1.)]
        w = np.array([1., 0.25, 0.75])
        cosh_gs = gradsys.build_reaction_gs(reactions, w, DissipationPair.cosh())
        quadratic_gs = gradsys.build_reaction_gs(reactions, w, DissipationPair.quadratic())
        grid = np.linspace(0.1, 1.5, 6)
        for c in np.array(np.meshgrid(grid, grid, grid)).reshape(3, -1).T:
            field = gradsys.mass_action_field(reactions, c)
            assert_allclose(cosh_gs.vector_field(c), field, rtol=1e-9, atol=1e-12)
            assert_allclose(quadratic_gs.vector_field(c), field, rtol=1e-9, atol=1e-12)

    def test_primal_dissipation(self):
        gs = gradsys.build_reaction_gs([Reaction([1, 0], [0, 1], 1., 1.)], [0.5, 0.5])
        c = np.array([0.8, 0.2])
        xi = -gs.d_energy(c)
        v = gs.d_r_star(c, xi)
        self.assertLessEqual(abs(gs.r(c, v) + gs.r_star(c, xi) - np.dot(xi, v)), 1e-6)

    def test_detailed_balance_violation(self):
        with self.assertRaises(DetailedBalanceError) as context:
            gradsys.build_reaction_gs([Reaction([1, 0], [0, 1], 2., 1.)], [0.5, 0.5])
        self.assertAlmostEqual(context.exception.residual, 0.5, delta=1e-14)
        self.assertIn('detailed balance', str(context.exception))


class WigglyTestCase(unittest.TestCase):

    def test_play_operator(self):
        assert_allclose(gradsys.play_operator([0., 1., 2., 1., 0., -1.], 0.5), [0., 0.5, 1.5, 1.5, 0.5, -0.5])
        assert_allclose(gradsys.play_operator([0., 1., 2.], 0.), [0., 1., 2.])

    def test_no_wiggles(self):
        epsilon = 1e-2
        report = gradsys.demo_wiggly(epsilon, 0., lambda t: t, 1., n_points=501)
        self.assertLessEqual(np.max(np.abs(report.u - report.ell)), 1.01 * epsilon)
        self.assertLessEqual(report.sup_gap, 1.01 * epsilon)

    def test_monotone_loading(self):
        report = gradsys.demo_wiggly(1e-3, 0.5, lambda t: t, 1.5, n_points=1501)
        assert_allclose(report.play, np.maximum(0., report.times - 0.5), atol=1e-15)
        self.assertLess(report.sup_gap, 2e-2)

    def test_hysteresis(self):
        def triangle(t):
            return 2. - abs(t - 2.) if t < 6. else t - 8.

        report = gradsys.demo_wiggly(1e-2, 0.5, triangle, 8., n_points=4001)
        self.assertAlmostEqual(report.hysteresis_width, 1., delta=0.05)
        self.assertLess(report.sup_gap, 0.1)


class TwoStructuresTestCase(unittest.TestCase):

    def test_envelopes(self):
        report = gradsys.demo_two_structures(lambda y: 2. + math.sin(2. * math.pi * y), [0.1, 0.01])
        self.assertAlmostEqual(report.a_min, 1., delta=1e-6)
        self.assertAlmostEqual(report.a_max, 3., delta=1e-6)
        self.assertAlmostEqual(report.envelope_first, math.exp(-1.), delta=1e-12)
        self.assertAlmostEqual(report.envelope_second, math.exp(-3.), delta=1e-12)

        row = dict(zip(report.HEADER, report.rows[-1]))
        self.assertEqual(row['epsilon'], 0.01)
        self.assertLess(abs(row['min_ratio'] / math.exp(-3.) - 1.), 0.01)
        self.assertLess(abs(row['max_ratio'] / math.exp(-1.) - 1.), 0.01)

    def test_recovery_sequences_are_exclusive(self):
        report = gradsys.demo_two_structures(lambda y: 2. + math.sin(2. * math.pi * y), [0.01])
        row = dict(zip(report.HEADER, report.rows[0]))
        limits = report.limit_energies

        self.assertLess(abs(row['E_first'] - limits['E_first']), 0.05)
        self.assertLess(abs(row['E_hat_second'] - limits['E_hat_second']), 0.05)
        self.assertGreater(row['E_hat_first'] - limits['E_hat_second'], 0.5)
        self.assertGreater(row['E_second'] - limits['E_first'], 1.5)

    def test_constant_coefficient(self):
        report = gradsys.demo_two_structures(lambda y: 2., [0.1])
        self.assertEqual(report.envelope_first, report.envelope_second)
        row = dict(zip(report.HEADER, report.rows[0]))
        self.assertAlmostEqual(row['min_ratio'], row['max_ratio'], delta=1e-15)
        self.assertAlmostEqual(row['E_first'], row['E_second'], delta=1e-12)

""" Tests of reversible finite-state Markov chains

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from concurrent import futures
from edp_limits import gradsys
from edp_limits import markov
from edp_limits.markov import (InvalidGeneratorError, MarkovGenerator, NoUniqueStationaryError,
                               ReversibilityError)
from edp_limits.gradsys import Trajectory
from numpy.testing import assert_allclose
import csv
import json
import math
import numpy as np
import os
import shutil
import tempfile
import unittest


def random_interior_points(size, n, seed):
    random_state = np.random.RandomState(seed)
    c = random_state.uniform(0.05, 1., size=(n, size))
    return c / np.sum(c, axis=1)[:, np.newaxis]


class MarkovGeneratorTestCase(unittest.TestCase):

    def setUp(self):
        self.dirname = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dirname)

    def test_validation(self):
        with self.assertRaisesRegex(InvalidGeneratorError, 'square'):
            MarkovGenerator([[0., 0.]])
        with self.assertRaisesRegex(InvalidGeneratorError, 'nonnegative'):
            MarkovGenerator([[1., -1.], [-1., 1.]])
        with self.assertRaisesRegex(InvalidGeneratorError, 'sum to 0'):
            MarkovGenerator([[-1., 1.], [2., -1.]])

    def test_from_rates(self):
        gen = MarkovGenerator.from_rates([[7., 1., 2.], [0., 0., 3.], [4., 5., 0.]])
        assert_allclose(gen.a, [[-3., 0., 4.], [1., -3., 5.], [2., 3., -9.]])
        assert_allclose(gen.q, gen.a.T)
        assert_allclose(gen.exit_rates, [3., 3., 9.])
        self.assertEqual(gen.size, 3)
        self.assertLessEqual(np.max(np.abs(np.sum(gen.a, axis=0))), 1e-12)

    def test_from_json(self):
        a = [[-1., 2.], [1., -2.]]
        assert_allclose(MarkovGenerator.from_json(json.dumps(a)).a, a)
        assert_allclose(MarkovGenerator.from_json(json.dumps({'a': a})).a, a)
        assert_allclose(MarkovGenerator.from_json(json.dumps({'rates': [[0., 1.], [2., 0.]]})).a, a)
        with self.assertRaisesRegex(InvalidGeneratorError, 'JSON'):
            MarkovGenerator.from_json(json.dumps({'matrix': a}))

    def test_from_csv(self):
        filename = os.path.join(self.dirname, 'gen.csv')
        with open(filename, 'w') as file:
            file.write('-1,2\n1,-2\n')
        assert_allclose(MarkovGenerator.from_csv(filename).a, [[-1., 2.], [1., -2.]])

    def test_three_state_generator(self):
        gen = markov.three_state_generator(0.5)
        assert_allclose(gen.a[:, 1], [5., -10., 5.])
        with self.assertRaises(ValueError):
            markov.three_state_generator(0.)


class DetailedBalanceTestCase(unittest.TestCase):

    def test_three_state_family(self):
        cert = markov.detailed_balance(markov.three_state_generator(0.1))
        assert_allclose(cert.w, np.array([1., 0.1, 1.]) / 2.1, rtol=1e-10)
        self.assertTrue(cert.reversible)
        self.assertLess(cert.residual, 1e-10)
        assert_allclose(cert.m, cert.m.T, rtol=1e-10)

    def test_symmetric(self):
        cert = markov.detailed_balance(MarkovGenerator.from_rates([[0., 1., 2.], [1., 0., 3.], [2., 3., 0.]]))
        assert_allclose(cert.w, np.full(3, 1. / 3.), rtol=1e-10)

    def test_cycle(self):
        q = np.zeros((3, 3))
        for i in range(3):
            q[i, (i + 1) % 3] = 1.
            q[i, (i - 1) % 3] = 2.
        with self.assertRaises(ReversibilityError) as context:
            markov.detailed_balance(MarkovGenerator.from_rates(q))
        self.assertAlmostEqual(context.exception.certificate.residual, 0.5, delta=1e-10)
        assert_allclose(context.exception.certificate.w, np.full(3, 1. / 3.), rtol=1e-10)
        self.assertIn('not reversible', str(context.exception))

    def test_reducible(self):
        gen = MarkovGenerator([[-1., 1., 0., 0.], [1., -1., 0., 0.], [0., 0., -1., 1.], [0., 0., 1., -1.]])
        with self.assertRaises(NoUniqueStationaryError) as context:
            markov.detailed_balance(gen)
        self.assertEqual(context.exception.dimension, 2)
        self.assertIn('reducible', str(context.exception))

    def test_transient_state(self):
        gen = MarkovGenerator.from_rates([[0., 1.], [0., 0.]])
        with self.assertRaisesRegex(NoUniqueStationaryError, 'not positive'):
            markov.detailed_balance(gen)

    def test_random_reversible(self):
        for seed in range(5):
            gen = markov.random_reversible_generator(5, seed)
            cert = markov.detailed_balance(gen)
            self.assertTrue(cert.reversible)
            self.assertAlmostEqual(np.sum(cert.w), 1., delta=1e-14)


class EntropicStructureTestCase(unittest.TestCase):

    def test_two_state_chain(self):
        gen = markov.two_state_generator(1., 1.)
        cert = markov.detailed_balance(gen)
        gs = markov.entropic_gs(gen, cert, normalization='half')
        reduced = gradsys.two_state_entropic_gs(0.5)
        for p in np.linspace(0.1, 0.9, 9):
            c = np.array([p, 1. - p])
            assert_allclose(gs.vector_field(c), [1. - 2. * p, 2. * p - 1.], rtol=1e-9, atol=1e-14)
            self.assertAlmostEqual(gs.energy(c) - reduced.energy([p]), math.log(2.) / 2., delta=1e-14)
            for delta in (-1.5, 0.3, 2.):
                self.assertAlmostEqual(gs.r_star(c, np.array([delta, 0.])), reduced.r_star([p], [delta]), delta=1e-13)

    def test_field_is_forward_equation(self):
        for size, seed in [(3, 1), (4, 2), (6, 3)]:
            gen = markov.random_reversible_generator(size, seed)
            cert = markov.detailed_balance(gen)
            for normalization in ('half', 'unit'):
                gs = markov.entropic_gs(gen, cert, normalization=normalization)
                for c in random_interior_points(size, 20, seed):
                    assert_allclose(gs.vector_field(c), gen.a.dot(c), rtol=1e-9, atol=1e-12)
                assert_allclose(gs.vector_field(cert.w), np.zeros(size), atol=1e-13)

    def test_normalizations(self):
        gen = markov.random_reversible_generator(4, 8)
        cert = markov.detailed_balance(gen)
        half = markov.entropic_gs(gen, cert, normalization='half')
        unit = markov.entropic_gs(gen, cert, normalization='unit')
        c = random_interior_points(4, 1, 9)[0]
        xi = np.array([0.3, -0.2, 1.1, 0.])
        self.assertAlmostEqual(unit.energy(c), 2. * half.energy(c), delta=1e-14)
        self.assertAlmostEqual(unit.r_star(c, xi), 2. * half.r_star(c, xi / 2.), delta=1e-13)

        with self.assertRaisesRegex(ValueError, 'Normalization'):
            markov.entropic_gs(gen, cert, normalization='third')

    def test_axioms(self):
        gen = markov.random_reversible_generator(4, 4)
        cert = markov.detailed_balance(gen)
        gs = markov.entropic_gs(gen, cert)
        checks = gs.check_axioms(random_interior_points(4, 1, 5)[0], np.array([0.4, -1., 0.2, 0.]))
        self.assertEqual(set(checks.values()), set([True]))


class HFunctionalTestCase(unittest.TestCase):

    def test_vanishes_at_zero(self):
        gen = markov.random_reversible_generator(4, 11)
        rho = random_interior_points(4, 1, 12)[0]
        self.assertAlmostEqual(markov.h_functional(gen, rho, np.zeros(4)), 0., delta=1e-14)

    def test_two_formulas(self):
        random_state = np.random.RandomState(13)
        for size, seed in [(3, 14), (5, 15)]:
            gen = markov.random_reversible_generator(size, seed)
            cert = markov.detailed_balance(gen)
            for normalization in ('half', 'unit'):
                gs = markov.entropic_gs(gen, cert, normalization=normalization)
                for rho in random_interior_points(size, 10, seed):
                    xi = random_state.normal(size=size)
                    via_h = markov.r_star_via_h(gen, cert, rho, xi, normalization=normalization)
                    self.assertAlmostEqual(via_h, gs.r_star(rho, xi), delta=1e-9 * (1. + abs(via_h)))
                    self.assertAlmostEqual(via_h, markov.r_star_via_h(gen, cert, rho, -xi, normalization=normalization),
                                           delta=1e-9 * (1. + abs(via_h)))
                    self.assertGreaterEqual(via_h, -1e-12)


class ForwardSolveTestCase(unittest.TestCase):

    def test_stationary(self):
        gen = markov.three_state_generator(0.3)
        cert = markov.detailed_balance(gen)
        traj = markov.forward_solve(gen, cert.w, 1., 0.01)
        assert_allclose(traj.states, np.tile(cert.w, (101, 1)), atol=1e-12)

    def test_two_state(self):
        traj = markov.forward_solve(markov.two_state_generator(1., 1.), [0.9, 0.1], 3., 1e-2)
        assert_allclose(traj.states[:, 0], 0.5 + 0.4 * np.exp(-2. * traj.times), atol=1e-12)
        self.assertIsNone(traj.energies)

    def test_invalid_initial_distribution(self):
        with self.assertRaisesRegex(ValueError, 'probability vector'):
            markov.forward_solve(markov.two_state_generator(1., 1.), [0.9, 0.2], 1., 0.1)

    def test_agrees_with_gradient_flow(self):
        gen = markov.random_reversible_generator(3, 21)
        cert = markov.detailed_balance(gen)
        c0 = np.array([0.7, 0.2, 0.1])
        linear = markov.forward_solve(gen, c0, 1., 1e-3, cert=cert)
        flow = gradsys.evolve(markov.entropic_gs(gen, cert), c0, 1., 1e-3, with_edb=False)
        self.assertLess(np.max(np.abs(linear.states - flow.states)), 1e-6)
        self.assertLess(np.max(np.abs(np.sum(flow.states, axis=1) - 1.)), 1e-10)
        self.assertLessEqual(np.max(np.diff(linear.energies)), 1e-12)

    def test_energy_dissipation_balance(self):
        gen = markov.random_reversible_generator(4, 22)
        cert = markov.detailed_balance(gen)
        gs = markov.entropic_gs(gen, cert)
        traj = gradsys.evolve(gs, [0.55, 0.2, 0.15, 0.1], 0.5, 1e-3, with_edb=False)
        self.assertLess(abs(gradsys.edb_gap(gs, traj)), 1e-4)


class EmpiricalProcessTestCase(unittest.TestCase):

    def setUp(self):
        self.dirname = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dirname)

    def test_frozen_particle(self):
        emp = markov.simulate_empirical(markov.two_state_generator(0., 0.), [1., 0.], 1, 1., seed=3, n_points=11)
        self.assertEqual(emp.n_particles, 1)
        assert_allclose(emp.densities, np.tile([1., 0.], (11, 1)))

    def test_reproducible(self):
        gen = markov.three_state_generator(0.5)
        one = markov.simulate_empirical(gen, [1., 0., 0.], 200, 1., seed=5, n_points=21, n_batches=4)
        two = markov.simulate_empirical(gen, [1., 0., 0.], 200, 1., seed=5, n_points=21, n_batches=4)
        np.testing.assert_array_equal(one.counts, two.counts)

        with futures.ThreadPoolExecutor(max_workers=2) as executor:
            three = markov.simulate_empirical(gen, [1., 0., 0.], 200, 1., seed=5, n_points=21, n_batches=4,
                                              map_fn=executor.map)
        np.testing.assert_array_equal(one.counts, three.counts)
        self.assertTrue(np.all(np.sum(one.counts, axis=1) == 200))

        with self.assertRaisesRegex(ValueError, 'positive'):
            markov.simulate_empirical(gen, [1., 0., 0.], 0, 1., seed=5)

    def test_law_of_large_numbers(self):
        gen = markov.three_state_generator(0.5)
        n_particles = 10000
        c0 = [0.8, 0.1, 0.1]
        emp = markov.simulate_empirical(gen, c0, n_particles, 1., seed=7, n_points=101, n_batches=2)
        deterministic = markov.forward_solve(gen, c0, 1., 0.01)
        self.assertLess(np.max(np.abs(emp.densities - deterministic.states)), 5. / math.sqrt(n_particles))

    def test_rate_functional_of_smoothed_path(self):
        emp = markov.simulate_empirical(markov.two_state_generator(1., 1.), [0.9, 0.1], 10000, 1., seed=9,
                                        n_points=1001)
        gs = gradsys.two_state_entropic_gs(0.5)
        path = Trajectory.from_path(gs, emp.times, emp.smoothed(101)[:, 0])
        value = gradsys.rate_functional(gs, path)
        self.assertGreaterEqual(value, -1e-8)
        self.assertLess(value, 2e-2)

    def test_to_csv(self):
        emp = markov.simulate_empirical(markov.two_state_generator(1., 1.), [0.5, 0.5], 10, 1., seed=1, n_points=5)
        filename = os.path.join(self.dirname, 'emp.csv')
        markov.empirical_trajectory_to_csv(emp, filename)
        with open(filename, 'r') as file:
            rows = list(csv.reader(file))
        self.assertEqual(rows[0], ['t', 'rho_1', 'rho_2'])
        self.assertEqual(len(rows), 6)
        self.assertAlmostEqual(float(rows[1][1]) + float(rows[1][2]), 1., delta=1e-15)

""" Tests of the experiments of the command-line interface

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits import experiments
from edp_limits.config import ExtraValuesError, InvalidConfigError
from edp_limits.experiments import Check, ExperimentConfig, ExperimentResult, InvalidExperimentConfigError
from edp_limits.util.rand import derive_seeds
import mock
import unittest


def checks_by_name(result):
    return {check.name: check for check in result.checks}


class ExperimentConfigTestCase(unittest.TestCase):

    def test_defaults(self):
        cfg = ExperimentConfig.resolve('three-state')
        self.assertEqual(cfg.name, 'three-state')
        self.assertEqual(cfg.params['case'], 'cosh')
        self.assertEqual(cfg.params['epsilons'], [0.3, 0.1, 0.03, 0.01])
        self.assertEqual(cfg.seed, experiments.DEFAULT_SEED)
        self.assertFalse(cfg.quick)

    def test_quick_and_user_parameters(self):
        cfg = ExperimentConfig.resolve('reaction', quick=True)
        self.assertEqual(cfg.params['omega_cells'], 4)
        self.assertEqual(cfg.params['epsilons'], [0.2, 0.1])
        self.assertTrue(cfg.quick)

        cfg = ExperimentConfig.resolve('reaction', {'omega_cells': 8}, quick=True)
        self.assertEqual(cfg.params['omega_cells'], 8)
        self.assertEqual(cfg.params['upsilon_cells'], 140)

    def test_seed(self):
        self.assertEqual(ExperimentConfig.resolve('oracle', seed=7).seed, 7)

    def test_schema_violations(self):
        with self.assertRaisesRegex(InvalidConfigError, r'edp_limits\.experiments\.oracle\.n_instances'):
            ExperimentConfig.resolve('oracle', {'n_instances': 0})
        with self.assertRaisesRegex(InvalidConfigError, r'edp_limits\.experiments\.three_state\.case'):
            ExperimentConfig.resolve('three-state', {'case': 'cubic'})
        with self.assertRaisesRegex(ExtraValuesError, 'bogus'):
            ExperimentConfig.resolve('oracle', {'bogus': 1})

    def test_invalid_parameters(self):
        with self.assertRaises(InvalidExperimentConfigError) as context:
            ExperimentConfig.resolve('membrane', {'epsilons': [0.01, 0.1]})
        self.assertEqual(str(context.exception), 'edp_limits.experiments.membrane.epsilons :: must be strictly decreasing')

        with self.assertRaisesRegex(InvalidExperimentConfigError, 'epsilons :: must be positive'):
            ExperimentConfig.resolve('reaction', {'epsilons': [0.1, -0.1]})
        with self.assertRaisesRegex(InvalidExperimentConfigError, 'dt :: must be positive'):
            ExperimentConfig.resolve('two-state', {'dt': 0.})
        with self.assertRaisesRegex(InvalidExperimentConfigError, 'p0 :: must be less than 1'):
            ExperimentConfig.resolve('two-state', {'p0': 1.})
        with self.assertRaisesRegex(InvalidExperimentConfigError, 'must not exceed the duration'):
            ExperimentConfig.resolve('two-state', {'dt': 5.})
        with self.assertRaisesRegex(InvalidExperimentConfigError, 'unknown experiment'):
            ExperimentConfig.resolve('four-state')

    def test_to_dict(self):
        cfg = ExperimentConfig('oracle', {'n_instances': 3, 'grid_points': 200}, 5, quick=True)
        self.assertEqual(cfg.to_dict(), {
            'experiment': 'oracle',
            'params': {'n_instances': 3, 'grid_points': 200},
            'seed': 5,
            'quick': True,
        })


class CheckTestCase(unittest.TestCase):

    def test_below(self):
        self.assertTrue(Check.below('gap', 1e-13, 1e-12).passed)
        self.assertFalse(Check.below('gap', 1e-11, 1e-12).passed)
        self.assertFalse(Check.below('gap', float('nan'), 1e-12).passed)
        self.assertEqual(Check.below('gap', 1e-13, 1e-12).to_dict(),
                         {'name': 'gap', 'value': 1e-13, 'threshold': 1e-12, 'passed': True})

    def test_holds(self):
        self.assertTrue(Check.holds('converging', True).passed)
        self.assertIsNone(Check.holds('converging', False).value)

    def test_result(self):
        result = ExperimentResult('oracle', ('a',), [[1.]], [Check.holds('one', True), Check.holds('two', False)])
        self.assertEqual(result.header, ['a'])
        self.assertFalse(result.passed)
        self.assertEqual(result.failed_checks, ['two'])


class ExperimentsTestCase(unittest.TestCase):

    def test_identities(self):
        cfg = ExperimentConfig('identities', {'grid_step': 0.25, 'xi_points': 5}, 0)
        result = experiments.run(cfg)
        self.assertTrue(result.passed, result.failed_checks)
        self.assertEqual(len(result.rows), 9)
        self.assertEqual(result.rows[0][:2], [0.25, 0.25])
        header, rows = result.tables['legendre']
        self.assertEqual(len(rows), 5)
        self.assertEqual(header[0], 'xi')

    def test_two_state(self):
        cfg = ExperimentConfig('two-state', {'p0': 0.9, 'duration': 0.5, 'dt': 1e-3,
                                             'wiggly_epsilon': 0.01, 'wiggly_r': 0.5}, 0)
        result = experiments.run(cfg)
        self.assertTrue(result.passed, result.failed_checks)
        self.assertEqual(len(result.rows), 501)
        self.assertEqual(result.header, ['t', 'p_quadratic', 'p_entropic', 'p_chain', 'p_exact'])

        checks = checks_by_name(result)
        for name in ('wiggly_hysteresis_width', 'envelope_of_first_structure', 'envelope_of_second_structure'):
            self.assertTrue(checks[name].passed, name)
        self.assertLess(checks['wiggly_hysteresis_width'].value, 0.05)

        header, rows = result.tables['wiggly']
        self.assertEqual(header, ['t', 'ell', 'u', 'play'])
        self.assertEqual(len(rows), 4001)
        self.assertEqual(rows[-1][0], 8.)
        header, rows = result.tables['two_structures']
        self.assertEqual(header[0], 'epsilon')
        self.assertEqual([row[0] for row in rows], [0.1, 0.01])

    def test_two_state_wiggly_parameters(self):
        cfg = ExperimentConfig.resolve('two-state')
        self.assertEqual(cfg.params['wiggly_epsilon'], 0.01)
        self.assertEqual(cfg.params['wiggly_r'], 0.5)
        with self.assertRaisesRegex(InvalidExperimentConfigError, 'wiggly_r :: must be positive'):
            ExperimentConfig.resolve('two-state', {'wiggly_r': 0.})

    def test_markov(self):
        params = {'n_chains': 2, 'max_states': 4, 'n_points': 20, 'edb_states': 3, 'duration': 0.2, 'dt': 1e-3,
                  'mc_epsilon': 0.5, 'n_particles': 10000, 'n_seeds': 2}
        result = experiments.run(ExperimentConfig('markov', params, 3))
        self.assertTrue(result.passed, result.failed_checks)
        self.assertEqual([row[0] for row in result.rows], derive_seeds(3, 4)[:2])
        for row in result.rows:
            self.assertTrue(2 <= row[1] <= 4)
        self.assertEqual(len(result.tables['montecarlo'][1]), 2)

        again = experiments.run(ExperimentConfig('markov', params, 3))
        self.assertEqual(again.rows, result.rows)
        self.assertEqual(again.tables['montecarlo'][1], result.tables['montecarlo'][1])

    def test_markov_success_rate_over_seeds(self):
        self.assertEqual(ExperimentConfig.resolve('markov').params['n_seeds'], 20)
        self.assertEqual(ExperimentConfig.resolve('markov', quick=True).params['n_seeds'], 20)
        with self.assertRaisesRegex(InvalidConfigError, r'edp_limits\.experiments\.markov\.n_seeds'):
            ExperimentConfig.resolve('markov', {'n_seeds': 4})

        params = {'n_chains': 1, 'max_states': 3, 'n_points': 5, 'edb_states': 3, 'duration': 0.2, 'dt': 1e-3,
                  'mc_epsilon': 0.5, 'n_particles': 10000, 'n_seeds': 20}
        result = experiments.run(ExperimentConfig('markov', params, 5))
        header, rows = result.tables['montecarlo']
        self.assertEqual(header, ['seed', 'sup_gap'])
        self.assertEqual(len(rows), 20)
        self.assertEqual(len(set(row[0] for row in rows)), 20)

        check = checks_by_name(result)['empirical_process_success_rate']
        self.assertEqual(check.value, sum(row[1] < 0.05 for row in rows) / 20.)
        self.assertTrue(check.passed)

    def test_three_state(self):
        params = {'case': 'cosh', 'epsilons': [0.3, 0.1], 'p0': 0.9, 'duration': 0.2, 'dt': 1e-3,
                  'p_points': 2, 'eta_points': 2, 'growth_b': 0.25, 'growth_points': 2}
        result = experiments.run(ExperimentConfig('three-state', params, 0))
        self.assertEqual([row[0] for row in result.rows], [0.3, 0.1])
        checks = checks_by_name(result)
        for name in ('all_scales_integrated', 'closed_sigma', 'closed_r_star', 'growth_ratio', 'growth_bound',
                     'commutes_with_two_state_chain'):
            self.assertTrue(checks[name].passed, name)
        self.assertEqual(len(result.tables['closed_forms'][1]), 8)
        self.assertEqual(len(result.tables['growth'][1]), 2)

    def test_membrane(self):
        params = {'epsilons': [0.1], 'duration': 0.01, 'dt': 1e-3}
        result = experiments.run(ExperimentConfig('membrane', params, 0))
        self.assertEqual(len(result.rows), 1)
        checks = checks_by_name(result)
        for name in ('a_star_of_flat_profile', 'all_widths_solved', 'l1_gaps_decrease',
                     'commutes_with_membrane_structure'):
            self.assertTrue(checks[name].passed, name)

    def test_reaction(self):
        params = {'epsilons': [0.2], 'duration': 0.02, 'dt': 0.01, 'omega_cells': 4, 'upsilon_cells': 70}
        result = experiments.run(ExperimentConfig('reaction', params, 0))
        self.assertEqual(len(result.rows), 1)
        checks = checks_by_name(result)
        for name in ('kramers_ratio_gap', 'equilibrium_split', 'limit_field_identity', 'commutes_with_two_state_chain',
                     'all_temperatures_solved'):
            self.assertTrue(checks[name].passed, name)
        self.assertEqual(len(result.tables['kramers'][1]), 3)

    def test_oracle(self):
        result = experiments.run(ExperimentConfig('oracle', {'n_instances': 2, 'grid_points': 200}, 0))
        self.assertTrue(result.passed, result.failed_checks)
        self.assertEqual(len(result.rows), 2)
        self.assertEqual(len(result.rows[0]), len(result.header))

    def test_map_function(self):
        calls = []

        def map_fn(fn, *iterables):
            calls.append(fn)
            return map(fn, *iterables)

        cfg = ExperimentConfig('oracle', {'n_instances': 1, 'grid_points': 200}, 0)
        self.assertEqual(experiments.run(cfg, map_fn=map_fn).rows, experiments.run(cfg).rows)
        self.assertEqual(len(calls), 1)

    def test_dispatch(self):
        result = ExperimentResult('oracle', ['a'], [], [])
        runner = mock.Mock(return_value=result)
        with mock.patch.dict(experiments.RUNNERS, {'oracle': runner}):
            self.assertIs(experiments.run(ExperimentConfig('oracle', {}, 0)), result)
        runner.assert_called_once()

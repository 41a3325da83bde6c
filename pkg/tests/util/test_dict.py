""" Tests of the nested dictionary utilities

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from copy import deepcopy
from edp_limits.config import get_config
from edp_limits.util.dict import DictUtil
import configobj
import unittest


class DictUtilTestCase(unittest.TestCase):

    def setUp(self):
        self.dict = {
            'a': {
                'b': {
                    'c': 1,
                    'd': 2,
                },
            },
            'e': {
                'f': 3,
                'g': 4,
            },
        }

    def test_nested_get(self):
        self.assertEqual(DictUtil.nested_get(self.dict, 'a.b'), self.dict['a']['b'])
        self.assertEqual(DictUtil.nested_get(self.dict, 'a.b.c'), 1)
        self.assertEqual(DictUtil.nested_get(self.dict, ['e', 'g']), 4)
        self.assertEqual(DictUtil.nested_get(self.dict, 'a/b/d', key_delimiter='/'), 2)
        with self.assertRaises(KeyError):
            DictUtil.nested_get(self.dict, 'a.x')

    def test_nested_set(self):
        expected = deepcopy(self.dict)
        expected['a']['b'] = 3
        self.assertEqual(DictUtil.nested_set(deepcopy(self.dict), 'a.b', 3), expected)

        expected = deepcopy(self.dict)
        expected['a']['b']['c'] = 10
        self.assertEqual(DictUtil.nested_set(deepcopy(self.dict), ['a', 'b', 'c'], 10), expected)

        expected = deepcopy(self.dict)
        expected['h'] = {'i': {'j': 'k'}}
        self.assertEqual(DictUtil.nested_set(deepcopy(self.dict), 'h.i.j', 'k'), expected)

    def test_to_builtin(self):
        config = configobj.ConfigObj()
        config.merge({'a': {'b': {'c': [1, 2]}, 'd': (3, 4)}})
        builtin = DictUtil.to_builtin(config)
        self.assertIs(type(builtin), dict)
        self.assertIs(type(builtin['a']), dict)
        self.assertIs(type(builtin['a']['b']), dict)
        self.assertEqual(builtin, {'a': {'b': {'c': [1, 2]}, 'd': [3, 4]}})

    def test_configuration_sections(self):
        config = get_config()
        section = DictUtil.nested_get(config, 'edp_limits.experiments.three_state')
        self.assertEqual(DictUtil.to_builtin(section)['epsilons'], [0.3, 0.1, 0.03, 0.01])

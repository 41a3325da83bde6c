""" Tests of the report writers

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits.util import io
import json
import numpy as np
import os
import shutil
import tempfile
import unittest


class IoTestCase(unittest.TestCase):

    def setUp(self):
        self.dirname = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dirname)

    def test_make_json_safe(self):
        self.assertEqual(io.make_json_safe({'a': (np.float64(0.5), np.int64(2)), 1: np.array([True, False])}),
                         {'a': [0.5, 2], '1': [True, False]})
        self.assertEqual(io.make_json_safe([float('nan'), float('inf'), -np.inf]), ['nan', 'inf', '-inf'])
        self.assertIs(io.make_json_safe(np.bool_(True)), True)
        self.assertIsNone(io.make_json_safe(None))

    def test_write_csv(self):
        path = os.path.join(self.dirname, 'sub', 'table.csv')
        io.write_csv(path, ['case', 'p', 'n'], [['cosh', 0.1, np.int64(3)], ['quadratic', 1e-17, None]])
        with open(path, 'r') as file:
            self.assertEqual(file.read().splitlines(), ['case,p,n', 'cosh,0.1,3', 'quadratic,1e-17,'])

        with open(path, 'rb') as file:
            first = file.read()
        io.write_csv(path, ['case', 'p', 'n'], [['cosh', 0.1, np.int64(3)], ['quadratic', 1e-17, None]])
        with open(path, 'rb') as file:
            self.assertEqual(file.read(), first)

    def test_write_tsv(self):
        path = os.path.join(self.dirname, 'table.tsv')
        io.write_csv(path, ['x', 'u'], [[0.5, np.float64(0.25)]])
        with open(path, 'r') as file:
            self.assertEqual(file.read().splitlines(), ['x\tu', '0.5\t0.25'])

    def test_read_csv(self):
        path = os.path.join(self.dirname, 'matrix.csv')
        with open(path, 'w') as file:
            file.write('-1,2.5\n1,-2.5\n')
        array = io.read_csv(path)
        self.assertEqual(array.dtype, np.float64)
        np.testing.assert_array_equal(array, [[-1., 2.5], [1., -2.5]])

        with self.assertRaisesRegex(ValueError, "must be one of '.csv' or '.tsv'"):
            io.read_csv(os.path.join(self.dirname, 'matrix.txt'))

    def test_write_csv_unsupported_extension(self):
        with self.assertRaisesRegex(ValueError, "must be one of '.csv' or '.tsv'"):
            io.write_csv(os.path.join(self.dirname, 'table.xlsx'), ['x'], [[1.]])
        self.assertEqual(os.listdir(self.dirname), [])

    def test_write_plot_data(self):
        path = os.path.join(self.dirname, 'table.dat')
        io.write_plot_data(path, ['t', 'p'], np.array([[0., 0.9], [0.001, 0.8995]]))
        with open(path, 'r') as file:
            self.assertEqual(file.read(), '# t p\n0.0 0.9\n0.001 0.8995\n')

    def test_write_json(self):
        path = os.path.join(self.dirname, 'summary.json')
        io.write_json(path, {'b': np.float64('nan'), 'a': [np.int32(1), 2.5]})
        with open(path, 'r') as file:
            text = file.read()
        self.assertTrue(text.endswith('}\n'))
        self.assertLess(text.index('"a"'), text.index('"b"'))
        self.assertEqual(json.loads(text), {'a': [1, 2.5], 'b': 'nan'})

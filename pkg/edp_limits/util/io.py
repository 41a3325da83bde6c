""" Writers of experiment reports: CSV tables, gnuplot data files, and JSON summaries

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

import json
import math
import numpy as np
import os
import pyexcel


def make_json_safe(obj):
    """ Convert numpy scalars and arrays, tuples and non-finite floats to JSON-compatible values

    Non-finite floats are converted to the strings ``'nan'``, ``'inf'`` and ``'-inf'``.

    Args:
        obj (:obj:`object`): value

    Returns:
        :obj:`object`: JSON-compatible value
    """
    if isinstance(obj, dict):
        return {str(key): make_json_safe(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [make_json_safe(val) for val in obj]
    if isinstance(obj, np.ndarray):
        return make_json_safe(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        if math.isfinite(obj):
            return obj
        return str(obj)
    return obj


def _ensure_dir(path):
    dirname = os.path.dirname(path)
    if dirname and not os.path.isdir(dirname):
        os.makedirs(dirname)


def _format(value):
    if value is None:
        return ''
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (np.integer, np.bool_)):
        return str(value.item())
    return str(value)


def write_csv(path, header, rows):
    """ Write a table to a CSV or TSV file

    Values are formatted before they are handed to pyexcel so that reruns write identical files.

    Args:
        path (:obj:`str`): path with the extension ``.csv`` or ``.tsv``
        header (:obj:`list` of :obj:`str`): column names
        rows (:obj:`iterable`): rows

    Raises:
        :obj:`ValueError`: if the extension of `path` isn't ``.csv`` or ``.tsv``
    """
    _, ext = os.path.splitext(path)
    if ext not in ('.csv', '.tsv'):
        raise ValueError("Extension of path '{}' must be one of '.csv' or '.tsv'".format(path))

    _ensure_dir(path)
    data = [[str(name) for name in header]]
    for row in rows:
        data.append([_format(value) for value in row])
    pyexcel.save_as(array=data, dest_file_name=path, dest_lineterminator='\n')


def read_csv(path):
    """ Read a table of numbers from a CSV or TSV file without a header

    Args:
        path (:obj:`str`): path with the extension ``.csv`` or ``.tsv``

    Returns:
        :obj:`numpy.ndarray`: two-dimensional array

    Raises:
        :obj:`ValueError`: if the extension of `path` isn't ``.csv`` or ``.tsv`` or a cell isn't a number
    """
    _, ext = os.path.splitext(path)
    if ext not in ('.csv', '.tsv'):
        raise ValueError("Extension of path '{}' must be one of '.csv' or '.tsv'".format(path))
    rows = [row for row in pyexcel.get_array(file_name=path) if any(cell != '' for cell in row)]
    return np.array(rows, dtype=float, ndmin=2)


def write_plot_data(path, header, rows):
    """ Write a table as whitespace-separated columns which gnuplot can read

    Args:
        path (:obj:`str`): path
        header (:obj:`list` of :obj:`str`): column names, written as a comment line
        rows (:obj:`iterable`): rows of numbers
    """
    _ensure_dir(path)
    with open(path, 'w', encoding='utf-8') as file:
        file.write('# ' + ' '.join(header) + '\n')
        for row in rows:
            file.write(' '.join(_format(value) for value in row) + '\n')


def write_json(path, obj):
    """ Write a JSON document with sorted keys

    Args:
        path (:obj:`str`): path
        obj (:obj:`object`): document
    """
    _ensure_dir(path)
    with open(path, 'w', encoding='utf-8') as file:
        json.dump(make_json_safe(obj), file, indent=2, sort_keys=True)
        file.write('\n')

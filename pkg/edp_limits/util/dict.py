""" Nested dictionary utilities

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""


class DictUtil(object):
    """ Utilities for nested dictionaries such as configurations """

    @staticmethod
    def nested_get(dict, keys, key_delimiter='.'):
        """ Get the value at the nested key sequence `keys`

        Args:
            dict (:obj:`dict`): nested dictionary
            keys (:obj:`str` or :obj:`list`): nested keys, or a string of keys joined by `key_delimiter`
            key_delimiter (:obj:`str`, optional): delimiter of `keys`

        Returns:
            :obj:`object`: value

        Raises:
            :obj:`KeyError`: if a key is missing
        """
        if isinstance(keys, str):
            keys = keys.split(key_delimiter)

        nested_dict = dict
        for key in keys:
            nested_dict = nested_dict[key]
        return nested_dict

    @staticmethod
    def nested_set(dict, keys, value, key_delimiter='.'):
        """ Set the value at the nested key sequence `keys`, creating missing levels

        Args:
            dict (:obj:`dict`): nested dictionary
            keys (:obj:`str` or :obj:`list`): nested keys, or a string of keys joined by `key_delimiter`
            value (:obj:`object`): value
            key_delimiter (:obj:`str`, optional): delimiter of `keys`

        Returns:
            :obj:`dict`: `dict`, modified in place
        """
        if isinstance(keys, str):
            keys = keys.split(key_delimiter)
        *parents, last_key = keys

        nested_dict = dict
        for key in parents:
            if key not in nested_dict:
                nested_dict[key] = {}
            nested_dict = nested_dict[key]
        nested_dict[last_key] = value

        return dict

    @staticmethod
    def to_builtin(d):
        """ Convert a nested mapping (e.g., a :obj:`configobj.Section`) to nested built-in dicts and lists

        Args:
            d (:obj:`dict`): nested mapping

        Returns:
            :obj:`dict`: copy built from :obj:`dict` and :obj:`list` only
        """
        if isinstance(d, dict):
            return {key: DictUtil.to_builtin(val) for key, val in d.items()}
        if isinstance(d, (list, tuple)):
            return [DictUtil.to_builtin(val) for val in d]
        return d

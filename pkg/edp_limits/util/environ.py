""" Temporary environments for configuration overrides

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

import contextlib
import os

ENV_PREFIX = 'CONFIG__DOT__'
# :obj:`str`: prefix of environment variables which override configuration values
ENV_SEPARATOR = '__DOT__'
# :obj:`str`: separator between the nested keys of an environment variable


class EnvironUtils(object):
    """ Context managers which temporarily modify `os.environ` """

    @staticmethod
    @contextlib.contextmanager
    def make_temp_environ(**environ):
        """ Temporarily set environment variables

        `ConfigManager.get_config` reads the environment when it is called, so it must be called
        inside the context for the temporary values to take effect.

        Args:
            environ (:obj:`dict`): temporary values of environment variables
        """
        old_environ = dict(os.environ)
        os.environ.update(environ)
        try:
            yield
        finally:
            os.environ.clear()
            os.environ.update(old_environ)

    @staticmethod
    @contextlib.contextmanager
    def temp_config_env(path_value_pairs):
        """ Temporarily override configuration values through environment variables

        Args:
            path_value_pairs (:obj:`list`): pairs of configuration paths (lists of keys) and string values
        """
        with EnvironUtils.make_temp_environ(**ConfigEnvDict().prep_tmp_conf(path_value_pairs)):
            yield


class ConfigEnvDict(object):
    """ Builder of environment variables which override configuration values

    Attributes:
        env (:obj:`dict`): environment variable names and values
    """

    def __init__(self):
        self.env = {}

    def add_config_value(self, path, value):
        """ Add the variable which sets the configuration value at `path`

        Args:
            path (:obj:`list` of :obj:`str`): configuration keys
            value (:obj:`str`): value

        Returns:
            :obj:`dict`: environment variables
        """
        self.env[ENV_PREFIX + ENV_SEPARATOR.join(path)] = value
        return self.env

    def prep_tmp_conf(self, path_value_pairs):
        """ Add a variable for each path and value

        Args:
            path_value_pairs (:obj:`list`): pairs of configuration paths (lists of keys) and values

        Returns:
            :obj:`dict`: environment variables

        Raises:
            :obj:`ValueError`: if a value isn't a string
        """
        for path, value in path_value_pairs:
            if not isinstance(value, str):
                raise ValueError(f"environment variable values are strings, but 'value' ({value}) is a(n) {type(value).__name__}")
            self.add_config_value(path, value)
        return self.env

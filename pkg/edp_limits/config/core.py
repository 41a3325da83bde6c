""" Layered configuration: packaged defaults, user files, environment variables, and arguments

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from configobj import ConfigObj
from configobj import flatten_errors, get_extra_values
from copy import deepcopy
from validate import Validator, is_boolean, is_float, is_integer, is_list, is_string, VdtTypeError
from edp_limits.util.dict import DictUtil
from edp_limits.util.environ import ENV_PREFIX, ENV_SEPARATOR
import math
import os
import pkg_resources
import string


class ConfigPaths(object):
    """ Paths to a default configuration file, its schema, and optional user overrides

    Attributes:
        default (:obj:`str`): path to the default configuration
        schema (:obj:`str`): path to the configuration schema
        user (:obj:`tuple` of :obj:`str`): candidate paths of user configuration files; the first
            one which exists is used
    """

    def __init__(self, default=None, schema=None, user=None):
        self.default = default
        self.schema = schema
        self.user = tuple(user or ())

    def deepcopy(self):
        """ Returns a deep copy of the paths

        Returns:
            :obj:`ConfigPaths`: copy
        """
        return deepcopy(self)


class ConfigManager(object):
    """ Assemble and validate a nested configuration

    Values are merged in order of increasing precedence

    1. the default file `paths.default`
    2. the first file in `paths.user` which exists
    3. environment variables named ``CONFIG__DOT__<level1>__DOT__<level2>...``
    4. the `extra` argument of :obj:`get_config`

    After merging, `string.Template` placeholders in keys and values are substituted from
    `context` and the configuration is validated against `paths.schema`.

    Attributes:
        paths (:obj:`ConfigPaths`): configuration and schema paths
    """

    def __init__(self, paths=None):
        self.paths = paths

    def get_config(self, extra=None, context=None):
        """ Read, merge, substitute and validate the configuration

        Args:
            extra (:obj:`dict`, optional): configuration which overrides all other sources
            context (:obj:`dict`, optional): values for template substitution

        Returns:
            :obj:`configobj.ConfigObj`: validated nested configuration

        Raises:
            :obj:`InvalidConfigError`: if a source produces values which violate the schema
            :obj:`ExtraValuesError`: if a source introduces keys which aren't in the schema
            :obj:`ValueError`: if no configuration is found
        """
        schema = ConfigObj(self.paths.schema, list_values=False, _inspec=True)

        config = ConfigObj(infile=self.paths.default, configspec=schema)
        self.validate(config, [self.paths.default] if os.path.isfile(self.paths.default) else [])

        user_filename = self.find_user_file()
        if user_filename:
            config.merge(ConfigObj(infile=user_filename, configspec=schema))
            self.validate(config, [user_filename])

        self.validate(config, self.merge_environ(config))

        if extra:
            config.merge(extra)
            self.validate(config, ["'extra' argument"])

        if not config:
            raise ValueError(("No configuration found in:\n"
                              "  Default path: {}\n"
                              "  User paths: {}\n"
                              "  Extras: {}\n"
                              "  Environment variables").format(
                self.paths.default, ', '.join(self.paths.user), extra))

        self.substitute(config, context)
        self.validate(config, ['template substitution'])

        return config

    def find_user_file(self):
        """ Get the first user configuration file which exists

        Returns:
            :obj:`str`: path, or :obj:`None` if no user file exists
        """
        for filename in self.paths.user:
            if os.path.isfile(filename):
                return filename
        return None

    @staticmethod
    def merge_environ(config):
        """ Merge values from ``CONFIG__DOT__`` environment variables into `config`

        Only variables whose first key names a top-level section of `config` are used.

        Args:
            config (:obj:`configobj.ConfigObj`): configuration

        Returns:
            :obj:`list` of :obj:`str`: descriptions of the variables which were merged
        """
        sources = []
        for key, val in os.environ.items():
            if key.startswith(ENV_PREFIX):
                nested_keys = key[len(ENV_PREFIX):].split(ENV_SEPARATOR)
                if nested_keys[0] in config:
                    DictUtil.nested_set(config, nested_keys, val)
                    sources.append("Environment variable '{}'".format(key))
        return sources

    @staticmethod
    def substitute(config, context):
        """ Substitute `context` into the keys and string values of `config`

        Args:
            config (:obj:`dict`): configuration, modified in place
            context (:obj:`dict`): template values
        """
        context = context or {}
        to_sub = [config]
        while to_sub:
            dictionary = to_sub.pop()
            for key in list(dictionary.keys()):
                val = dictionary.pop(key)
                if isinstance(val, dict):
                    to_sub.append(val)
                elif isinstance(val, (list, tuple)):
                    val = [string.Template(v).substitute(context) if isinstance(v, str) else v for v in val]
                elif isinstance(val, str):
                    val = string.Template(val).substitute(context)
                dictionary[string.Template(key).substitute(context)] = val

    @staticmethod
    def validate(config, value_sources):
        """ Validate a configuration against its schema

        Args:
            config (:obj:`configobj.ConfigObj`): configuration
            value_sources (:obj:`list` of :obj:`str`): descriptions of the sources of the values

        Raises:
            :obj:`InvalidConfigError`: if the configuration doesn't satisfy the schema
            :obj:`ExtraValuesError`: if the configuration has keys which aren't in the schema
        """
        validator = Validator()
        validator.functions['any'] = any_checker
        result = config.validate(validator, copy=True, preserve_errors=True)

        if result is not True:
            raise InvalidConfigError(value_sources, config, result)

        if get_extra_values(config):
            raise ExtraValuesError(value_sources, config)


def any_checker(value):
    """ Convert a configuration value to the most specific built-in type it represents

    Integers are preferred to floats, floats to booleans, booleans to lists and lists to strings.

    Args:
        value (:obj:`object`): value

    Returns:
        :obj:`object`: converted value
    """
    if not isinstance(value, float) or not math.isnan(value):
        # `_handle_value` can't parse nan
        value, _ = ConfigObj()._handle_value(value)

    for checker in (is_integer, is_float, is_boolean):
        try:
            return checker(value)
        except VdtTypeError:
            pass

    try:
        return [any_checker(val) for val in is_list(value)]
    except VdtTypeError:
        pass

    return is_string(value)


class InvalidConfigError(Exception):
    """ A configuration violates its schema

    Attributes:
        sources (:obj:`list` of :obj:`str`): sources of the configuration values
        config (:obj:`configobj.ConfigObj`): configuration
        result (:obj:`dict`): validation result
        msg (:obj:`str`): message which lists the path of each invalid value
    """

    def __init__(self, sources, config, result):
        self.sources = sources
        self.config = config
        self.result = result

        messages = []
        for section_list, key, exception in flatten_errors(config, result):
            path = list(section_list) + [key if key is not None else '[missing section]']
            if exception is False:
                reason = 'Missing value or section'
            else:
                reason = str(exception)
            messages.append('{} :: {}'.format('.'.join(path), reason))

        self.msg = ('The following configuration sources\n  {}\n\n'
                    'contain the following configuration errors\n  {}').format(
            '\n  '.join(sources), '\n  '.join(messages))

    def __str__(self):
        return self.msg


class ExtraValuesError(Exception):
    """ A configuration contains keys which aren't defined by its schema

    Attributes:
        sources (:obj:`list` of :obj:`str`): sources of the configuration values
        config (:obj:`configobj.ConfigObj`): configuration
        msg (:obj:`str`): message which lists each extra entry
    """

    def __init__(self, sources, config):
        self.sources = sources
        self.config = config

        messages = []
        for section_list, name in get_extra_values(config):
            section = config
            for section_name in section_list:
                section = section[section_name]
            kind = 'section' if isinstance(section[name], dict) else 'value'
            messages.append("Extra entry in section '{:s}'. Entry '{}' is a {:s}.".format(
                ', '.join(section_list) or 'top level', name, kind))

        self.msg = ('The following configuration sources\n  {}\n\n'
                    'contain the following configuration errors\n  {}').format(
            '\n  '.join(sources), '\n  '.join(messages))

    def __str__(self):
        return self.msg


def get_config(extra=None):
    """ Get the configuration of `edp_limits`

    Args:
        extra (:obj:`dict`, optional): configuration which overrides all other sources

    Returns:
        :obj:`configobj.ConfigObj`: configuration
    """
    paths = ConfigPaths(
        default=pkg_resources.resource_filename('edp_limits', 'config/core.default.cfg'),
        schema=pkg_resources.resource_filename('edp_limits', 'config/core.schema.cfg'),
        user=(
            'edp_limits.cfg',
            os.path.expanduser('~/.wc/edp_limits.cfg'),
        ),
    )
    return ConfigManager(paths).get_config(extra=extra)

""" Configuration of the debug logs

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits.config.core import ConfigPaths
from os import makedirs, path
from pkg_resources import resource_filename
import yaml
try:
    # logging2 depends on syslog, which isn't available on every platform
    import logging2
except ModuleNotFoundError:  # pragma: no cover
    logging2 = None

paths = ConfigPaths(
    default=resource_filename('edp_limits', 'debug_logs/config.default.cfg'),
    schema=resource_filename('edp_limits', 'debug_logs/config.schema.cfg'),
    user=(
        'edp_limits.debug.cfg',
        path.expanduser('~/.wc/edp_limits.debug.cfg'),
    ),
)

HANDLER_OPTIONS = frozenset(['class', 'filename', 'encoding', 'level'])
LOGGER_OPTIONS = frozenset(['template', 'timezone', 'handler', 'additional_context'])


class LoggerConfigurator(object):
    """ Create logs from nested descriptions of their handlers and loggers """

    @staticmethod
    def from_yaml(config_path):
        """ Create logs from a YAML description

        Args:
            config_path (:obj:`str`): path to a YAML file

        Returns:
            :obj:`tuple`: :obj:`dict` of handlers and :obj:`dict` of loggers
        """
        with open(config_path, 'r') as file:
            config = yaml.load(file, Loader=yaml.SafeLoader)
        return LoggerConfigurator.from_dict(config)

    @staticmethod
    def from_dict(config):
        """ Create logs from a dictionary, typically read from a .cfg file with ConfigObj

        `logging2` caches loggers and handlers by name: requesting a logger whose name is already
        in use returns the existing logger, regardless of `config`.

        Args:
            config (:obj:`dict`): descriptions of handlers and loggers

        Returns:
            :obj:`tuple`: :obj:`dict` of handlers and :obj:`dict` of loggers

        Raises:
            :obj:`ConfigurationError`: if a handler or logger is misconfigured
            :obj:`ModuleNotFoundError`: if `logging2` isn't installed
        """
        if logging2 is None:
            raise ModuleNotFoundError("'logging2' must be installed")  # pragma: no cover

        handlers = {}
        for name, handler_config in config.get('handlers', {}).items():
            handlers[name] = LoggerConfigurator._make_handler(name, handler_config)

        loggers = {}
        for name, logger_config in config.get('loggers', {}).items():
            extra_opts = set(logger_config.keys()).difference(LOGGER_OPTIONS)
            if extra_opts:
                raise ConfigurationError('Logger configuration does not support options "{}"'.format(
                    '", "'.join(sorted(extra_opts))))

            handler_name = logger_config.get('handler', None)
            if handler_name not in handlers:
                raise ConfigurationError("A handler must be defined.")

            loggers[name] = logging2.Logger(name=name,
                                            template=logger_config.get('template', None),
                                            timezone=logger_config.get('timezone', None),
                                            handler=handlers[handler_name],
                                            additional_context=logger_config.get('additional_context', None))

        return handlers, loggers

    @staticmethod
    def _make_handler(name, handler_config):
        extra_opts = set(handler_config.keys()).difference(HANDLER_OPTIONS)
        if extra_opts:
            raise ConfigurationError('Handler configuration does not support options "{}"'.format(
                '", "'.join(sorted(extra_opts))))

        class_name = handler_config.get('class', 'StdOutHandler')
        level = getattr(logging2.LogLevel, handler_config.get('level', 'debug').lower())

        if class_name in ['StdErrHandler', 'StdOutHandler']:
            return getattr(logging2, class_name)(name=name, level=level)

        if class_name == 'FileHandler':
            filename = path.expanduser(handler_config['filename'])
            if not path.isdir(path.dirname(filename)):
                makedirs(path.dirname(filename))
            if not path.isfile(filename):
                open(filename, 'w').close()
            return logging2.FileHandler(filename, name=name, level=level,
                                        encoding=handler_config.get('encoding', 'utf-8'))

        raise ConfigurationError('Unsupported handler class: ' + class_name)


class ConfigurationError(Exception):
    """ An error in a logging configuration """
    pass

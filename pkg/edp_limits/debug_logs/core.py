""" Debug logs of the solvers and experiments

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits.config.core import ConfigManager
from edp_limits.debug_logs import config as debug_logs_config
import warnings


class DebugLogsManager(object):
    """ Create and store debug logs

    Attributes:
        logs (:obj:`dict`): logs, keyed by name
    """

    def __init__(self):
        self.logs = None

    def setup_logs(self, options):
        """ Create the logs described by a nested configuration

        Args:
            options (:obj:`dict`): configuration, optionally nested under the key ``debug_logs``

        Returns:
            :obj:`DebugLogsManager`: this manager
        """
        if 'debug_logs' in options:
            options = options['debug_logs']

        with warnings.catch_warnings():
            # logging2.FileHandler triggers RuntimeWarnings in codecs
            warnings.filterwarnings("ignore", category=RuntimeWarning, module='codecs')
            _, loggers = debug_logs_config.LoggerConfigurator.from_dict(options)

        self.logs = loggers
        return self

    def get_log(self, name, logs=None):
        """ Get the log named `name`

        Args:
            name (:obj:`str`): log name
            logs (:obj:`dict`, optional): logs to search instead of those of this manager

        Returns:
            :obj:`logging2.Logger`: log

        Raises:
            :obj:`ValueError`: if no logs are set up or no log is named `name`
        """
        if logs is None:
            logs = self.logs
            if logs is None:
                raise ValueError("No log initialized.")

        if name not in logs:
            raise ValueError("log named '{}' not found in logs '{}'.".format(name, list(logs.keys())))

        return logs[name]

    def __str__(self):
        """ Describe the template and file of each log

        Returns:
            :obj:`str`: description
        """
        if not self.logs:
            return 'No logs configured'

        descriptions = ['logs:']
        for name, log in self.logs.items():
            lines = ['template: {}'.format(log.template)]
            for handler in log.handlers:
                fh = getattr(handler, 'fh', None)
                if fh is None:
                    lines.append('no filename associated with handler')
                else:
                    lines.append('filename: {}'.format(fh.name))
            descriptions.append('{}:\n\t{}'.format(name, '\n\t'.join(lines)))
        return '\n'.join(descriptions)


_manager = None


def get_debug_log(name='edp_limits.debug.file'):
    """ Get a debug log of the package, setting up the logs on first use

    Args:
        name (:obj:`str`, optional): log name

    Returns:
        :obj:`logging2.Logger`: log, or :obj:`None` if `logging2` isn't installed
    """
    global _manager
    if debug_logs_config.logging2 is None:
        return None
    if _manager is None:
        _manager = DebugLogsManager().setup_logs(ConfigManager(debug_logs_config.paths).get_config())
    return _manager.get_log(name)

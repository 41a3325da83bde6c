""" Paths of the test configurations of the debug logs

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits.debug_logs.config import paths as debug_logs_default_paths
import os

debug_logs = debug_logs_default_paths.deepcopy()
debug_logs.default = os.path.join(os.path.dirname(__file__), 'debug.default.cfg')
debug_logs.user = ()

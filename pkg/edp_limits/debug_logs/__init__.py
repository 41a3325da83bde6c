from .core import DebugLogsManager, get_debug_log
from . import config

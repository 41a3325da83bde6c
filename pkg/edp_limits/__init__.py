from ._version import __version__
# :obj:`str`: version

from . import config
from . import debug_logs
from . import util
from . import potentials
from . import gradsys
from . import markov
from . import three_state
from . import fv
from . import membrane
from . import reaction
from . import oracle
from . import experiments

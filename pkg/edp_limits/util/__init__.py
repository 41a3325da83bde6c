from . import dict
from . import environ
from . import io
from . import rand

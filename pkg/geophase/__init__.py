# geophase package
__version__ = "0.1.0"

from . import config_loader
from . import cli

from .config import RunConfig
from .main import build_parser, main, run

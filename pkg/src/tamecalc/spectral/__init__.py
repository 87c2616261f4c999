from .grid import *  # noqa: F401,F403
from .grid import __all__ as _grid_all

__all__ = list(_grid_all)

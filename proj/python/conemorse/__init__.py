"""Geodesics, curve-shortening flow and Morse indices on the path space of a cone."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401

"""Belief updates and information-theoretic planning with path-based sensors."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

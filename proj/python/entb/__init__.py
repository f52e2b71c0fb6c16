"""Concurrence lower bounds from separability criteria."""

from ._entb import *  # noqa: F401,F403

__version__ = "0.1.0"

"""Spin-Hamiltonian resonance toolkit (Python bindings)."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, ConfigError, InvalidInput, NumericError  # noqa: F401

"""Sextic-oscillator ground states, phase-space distributions, and sampling."""

from ._sxo import *  # noqa: F401,F403
from ._sxo import __version__  # noqa: F401

"""Quantum timing jitter of solitons in lossy, dispersion-varying fiber."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, analytic, units  # noqa: F401

"""Minimal vs dipole light-matter coupling for hydrogen-like atoms."""

from ._gaugecmp import *  # noqa: F401,F403
from ._gaugecmp import __doc__  # noqa: F401

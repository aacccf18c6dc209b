"""Exact enumeration and analysis of integral fusion rings."""

from ._fusionforge import *  # noqa: F401,F403
from ._fusionforge import __doc__  # noqa: F401

"""Covering numbers of finite groups: exact incidence and cover computations."""

from covernum._core import *  # noqa: F401,F403
from covernum._core import __version__  # noqa: F401

"""Numerical toolkit for the bicomplex Vekua equation and its Bergman spaces."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

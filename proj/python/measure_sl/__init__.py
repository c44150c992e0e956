"""Sturm-Liouville problems with measure coefficients."""

from ._msl import *  # noqa: F401,F403
from ._msl import ValidationError, NumericalError  # noqa: F401

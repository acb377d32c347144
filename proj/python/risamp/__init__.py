"""Cascaded-channel estimation for RIS-aided mmWave uplinks under few-bit ADCs.

Thin re-export of the compiled core; see the project README for the CLI and
file formats.
"""

from risamp._core import *  # noqa: F401,F403
from risamp._core import __doc__ as _core_doc

__doc__ = _core_doc or __doc__

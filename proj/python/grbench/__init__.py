"""Graph store benchmarking toolkit.

Thin Python veneer over the compiled core: maze dataset generation, the
reference in-memory engine, the external-engine adapter, the workload driver,
and CSV/SVG report rendering.
"""

from . import _core
from ._core import *  # noqa: F401,F403

__all__ = [name for name in dir(_core) if not name.startswith("_")]
__version__ = "0.1.0"

"""Hot numerical kernels with a compiled core and a pure-Python fallback.

The compiled extension ``_ccore`` is used when it imports; setting the
environment variable ``NOTLIMIT_PURE_PYTHON=1`` forces the fallback.
``BACKEND`` names the active implementation.
"""

import importlib
import os
from types import ModuleType

from . import _fallback

__all__ = [
    "BACKEND",
    "available_backends",
    "distance_grid",
    "distance_point",
    "get_backend",
    "overlap_sums",
    "refine_max",
    "tridiag_power_iteration",
]


def _load_compiled() -> ModuleType | None:
    try:
        return importlib.import_module(f"{__name__}._ccore")
    except ImportError:
        return None


_compiled = _load_compiled()

if _compiled is not None and os.environ.get("NOTLIMIT_PURE_PYTHON", "") != "1":
    _active = _compiled
    BACKEND = "cython"
else:
    _active = _fallback
    BACKEND = "python"


def available_backends() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


def get_backend(name: str) -> ModuleType:
    """Kernel module by name: ``"cython"`` or ``"python"``."""
    if name == "python":
        return _fallback
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


distance_grid = _active.distance_grid
distance_point = _active.distance_point
refine_max = _active.refine_max
tridiag_power_iteration = _active.tridiag_power_iteration
overlap_sums = _active.overlap_sums

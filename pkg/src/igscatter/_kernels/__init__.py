"""Integrator backend selection.

The compiled Cython kernel is used when its extension module imports cleanly;
otherwise the pure-Python twin takes over with the same numerical contract.
Set ``IGSCATTER_PURE_PYTHON=1`` to force the pure-Python backend (used by the
backend benchmark and for debugging).
"""

import os

from . import _geodesic_py
from ._geodesic_py import (
    STATUS_MAX_STEPS,
    STATUS_OK,
    STATUS_SIGMA_FLOOR,
    STATUS_STEP_UNDERFLOW,
)

_compiled = None
if os.environ.get("IGSCATTER_PURE_PYTHON") != "1":
    try:
        from . import _geodesic_c as _compiled
    except ImportError:
        _compiled = None

if _compiled is not None:
    _impl = _compiled
    BACKEND = "compiled"
else:
    _impl = _geodesic_py
    BACKEND = "python"

integrate = _impl.integrate


def backend_name() -> str:
    """Name of the backend selected at import time."""
    return BACKEND


def available_backends() -> dict:
    """Importable backends by name; 'compiled' is absent if the build is missing."""
    out = {"python": _geodesic_py}
    try:
        from . import _geodesic_c  # noqa: PLC0415

        out["compiled"] = _geodesic_c
    except ImportError:
        pass
    return out

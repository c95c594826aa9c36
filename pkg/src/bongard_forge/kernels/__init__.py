"""Hot kernels with a compiled backend and a numpy fallback.

The Cython extension is used when it was built; otherwise (or when
``BONGARD_FORGE_PURE_PYTHON=1`` is set) the numpy versions are used.  Both
backends produce identical results.
"""

import os

from . import _pykernels as python

try:
    if os.environ.get("BONGARD_FORGE_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-python backend requested")
    from . import _ckernels as compiled
except ImportError:
    compiled = None

_impl = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "python"

raster_capsules = _impl.raster_capsules
hausdorff = _impl.hausdorff
points_near_segments = _impl.points_near_segments
reflection_scan = _impl.reflection_scan

__all__ = [
    "BACKEND",
    "compiled",
    "python",
    "raster_capsules",
    "hausdorff",
    "points_near_segments",
    "reflection_scan",
]

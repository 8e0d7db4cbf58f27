"""Backend selection for the dart-permutation kernels.

The compiled extension is used when it imported cleanly, unless the
environment variable MAPBOUNDS_PURE is set to a non-empty value.  Either
way the module exposes the same four functions; see _pykernels for the
contracts.
"""

import os

from . import _pykernels

try:
    from . import _kernels  # type: ignore[attr-defined]
except ImportError:
    _kernels = None

if _kernels is not None and not os.environ.get("MAPBOUNDS_PURE"):
    _impl = _kernels
    BACKEND = "compiled"
else:
    _impl = _pykernels
    BACKEND = "pure"

face_count = _impl.face_count
component_count = _impl.component_count
canonical_code = _impl.canonical_code
connected_class_reps = _impl.connected_class_reps

__all__ = [
    "BACKEND",
    "face_count",
    "component_count",
    "canonical_code",
    "connected_class_reps",
]

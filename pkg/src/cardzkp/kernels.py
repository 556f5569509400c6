"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python ``_kernels_py`` module. Setting ``CARDZKP_PURE_PYTHON=1`` forces the
fallback.
"""

import os

if os.environ.get("CARDZKP_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
permute_lines = _impl.permute_lines
count_face_up = _impl.count_face_up
set_orientation = _impl.set_orientation
heart_positions = _impl.heart_positions
mark_values = _impl.mark_values
enumerate_path_systems = _impl.enumerate_path_systems

__all__ = [
    "BACKEND",
    "permute_lines",
    "count_face_up",
    "set_orientation",
    "heart_positions",
    "mark_values",
    "enumerate_path_systems",
]

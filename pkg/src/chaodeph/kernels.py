"""Selects the compiled phase kernel when available, numpy otherwise.

Set CHAODEPH_BACKEND=python (or =cython) to force a backend; forcing
cython raises if the extension was not built.
"""

from __future__ import annotations

import os

from . import _kernels_py

_requested = os.environ.get("CHAODEPH_BACKEND", "").lower()

if _requested == "python":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise ImportError(
                "CHAODEPH_BACKEND=cython but the compiled kernel is not built; "
                "reinstall with a C compiler and Cython available"
            ) from None
        _impl = _kernels_py
        BACKEND = "python"

phase_window_moments = _impl.phase_window_moments

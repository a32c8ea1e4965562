"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
twin.  Setting ``PADIC_SPECTRAL_PURE=1`` forces the fallback.
"""

import os

if os.environ.get("PADIC_SPECTRAL_PURE", "") not in ("", "0"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]

"""Kernel backend selection.

The compiled extension is preferred when importable; set
``CARDINTERP_BACKEND=python`` to force the NumPy fallback or
``CARDINTERP_BACKEND=compiled`` to require the extension.
"""

import os

from . import _kernels_py

_choice = os.environ.get("CARDINTERP_BACKEND", "auto").lower()

if _choice not in ("auto", "python", "compiled"):
    raise ValueError(f"CARDINTERP_BACKEND must be auto|python|compiled, got {_choice!r}")

if _choice == "python":
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _ext

        kernels = _ext
        BACKEND = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise
        kernels = _kernels_py
        BACKEND = "python"


def backend_name():
    return BACKEND

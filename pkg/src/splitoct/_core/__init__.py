"""Kernel backend selection.

The compiled extension is used when it was built; otherwise (or when
``SPLITOCT_PURE=1``) the numpy implementation is loaded.  Both expose
``bilinear`` and ``rref_insert`` with identical semantics.
"""

import os

from . import _gfcore_py as python_backend

compiled_backend = None
if os.environ.get("SPLITOCT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _gfcore as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

bilinear = _active.bilinear
rref_insert = _active.rref_insert

__all__ = ["BACKEND", "bilinear", "rref_insert", "compiled_backend", "python_backend"]

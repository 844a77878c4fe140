"""Backend selection for the permutation kernels.

The compiled module is used when it was built; set GROUPOID_MUSIC_PURE_PYTHON=1
to force the pure-Python implementation.
"""

from __future__ import annotations

import importlib
import os

from . import _pykernels


def _load_compiled():
    try:
        return importlib.import_module("groupoid_music._ckernels")
    except ImportError:
        return None


_compiled = _load_compiled()

if _compiled is not None and os.environ.get("GROUPOID_MUSIC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    backend = _compiled
    BACKEND = "cython"
else:
    backend = _pykernels
    BACKEND = "python"


def available_backends() -> dict:
    out = {"python": _pykernels}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


compose = backend.compose
inverse = backend.inverse
closure = backend.closure
element_orders = backend.element_orders

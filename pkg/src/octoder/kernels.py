"""Kernel selection: compiled core if importable, numpy fallback otherwise.

Set ``OCTODER_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("OCTODER_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py
    else:
        BACKEND = "cython"
else:
    _impl = _kernels_py

rref_modp = _impl.rref_modp
reduce_modp = _impl.reduce_modp

__all__ = ["BACKEND", "rref_modp", "reduce_modp"]

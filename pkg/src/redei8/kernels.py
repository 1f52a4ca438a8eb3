"""Backend selection for the hot loops.

The compiled module is used when it imports; set ``REDEI8_PURE_PYTHON=1``
to force the fallback (tests run both).
"""

from __future__ import annotations

import os

from . import _pykernels as python_backend

try:
    if os.environ.get("REDEI8_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-python backend requested")
    from . import _ckernels as _active
except ImportError:
    _active = python_backend
    compiled_backend = None
else:
    compiled_backend = _active

BACKEND = _active.BACKEND
rank_rows = _active.rank_rows
form_stats = _active.form_stats
bilinear_nullity_mask = _active.bilinear_nullity_mask
reduced_forms = _active.reduced_forms

__all__ = [
    "BACKEND",
    "bilinear_nullity_mask",
    "compiled_backend",
    "form_stats",
    "python_backend",
    "rank_rows",
    "reduced_forms",
]

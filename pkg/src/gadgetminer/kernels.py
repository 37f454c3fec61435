"""Kernel backend selection.

Imports the compiled extension when available, otherwise the pure-Python
fallback.  Set GADGETMINER_PURE=1 to force the fallback; BACKEND records
which implementation is active.  Both expose the same three functions
with identical semantics and output.
"""

from __future__ import annotations

import os

if os.environ.get("GADGETMINER_PURE") == "1":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

min_logical_weight = _impl.min_logical_weight
pauli_weight_profile = _impl.pauli_weight_profile
canonical_encoding = _impl.canonical_encoding

__all__ = [
    "BACKEND",
    "min_logical_weight",
    "pauli_weight_profile",
    "canonical_encoding",
]

"""Kernel selection: compiled extension when importable, else the Python twin.

Set ``FLOWCAT_PURE=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
rref_modp = _kernels_py.rref_modp

if os.environ.get("FLOWCAT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        rref_modp = _kernels.rref_modp
        BACKEND = "cython"

# int64 products must not overflow
MAX_FAST_PRIME = 2**31

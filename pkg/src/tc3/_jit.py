"""Numba switch.

Set ``TC3_DISABLE_NUMBA=1`` to run every kernel through its pure-numpy path.
The flag is read once at import time.
"""

import os

_DISABLED = os.environ.get("TC3_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    import numba

    NUMBA_ENABLED = True
except ImportError:
    numba = None
    NUMBA_ENABLED = False


def njit(func):
    """``numba.njit`` with the project options, or ``None`` when numba is off."""
    if not NUMBA_ENABLED:
        return None
    return numba.njit(cache=True, nogil=True, error_model="numpy")(func)

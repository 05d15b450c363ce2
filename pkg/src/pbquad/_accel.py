"""Optional numba acceleration.

Set ``PBQUAD_DISABLE_NUMBA=1`` to force the pure-numpy kernels.  When numba is
not importable the numpy kernels are used as well.
"""

import os

_DISABLED = os.environ.get("PBQUAD_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(fn):
    """``numba.njit(cache=True)`` when acceleration is on, identity otherwise."""
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn

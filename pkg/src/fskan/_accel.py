"""JIT switch for the hot kernels.

Set ``FSKAN_DISABLE_NUMBA=1`` to force the pure-numpy code path (useful for
debugging and for checking that both paths agree). Numba is also skipped
silently when it cannot be imported.
"""

import os

_FLAG = "FSKAN_DISABLE_NUMBA"

try:
    from numba import njit as _njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _njit = None
    HAS_NUMBA = False


def numba_requested():
    value = os.environ.get(_FLAG, "").strip().lower()
    return value not in ("1", "true", "yes", "on")


USE_NUMBA = HAS_NUMBA and numba_requested()


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator.

    Compiled functions are cached on disk. The decorated object is always
    callable from Python, so the numpy path can fall back on it if needed.
    """
    bare = len(args) == 1 and callable(args[0])
    if not HAS_NUMBA:
        return args[0] if bare else (lambda f: f)

    kwargs.setdefault("cache", True)
    kwargs.setdefault("nogil", True)
    if bare:
        return _njit(**kwargs)(args[0])
    return _njit(*args, **kwargs)

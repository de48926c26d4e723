"""Optional numba acceleration for the scalar kernels.

The hot numeric loops are written as plain scalar Python (math module only)
so the same source runs in two modes: jit-compiled through numba, which is
the default, or interpreted.  Set the environment variable
``NCBETA_DISABLE_JIT=1`` before import to force the interpreted path; the
flag is read once at import time.  If numba is not importable the package
degrades to the interpreted path silently.
"""

import os

DISABLE_ENV = "NCBETA_DISABLE_JIT"

_disabled = os.environ.get(DISABLE_ENV, "0").strip().lower() not in ("", "0", "false", "no")

if not _disabled:
    try:
        from numba import njit as _njit
    except ImportError:
        _njit = None
else:
    _njit = None

JIT_ENABLED = _njit is not None


def kernel(func):
    """Decorate a scalar hot loop with ``numba.njit(cache=True)``, or return
    the function unchanged when jit is disabled or unavailable."""
    if _njit is None:
        return func
    return _njit(cache=True)(func)


def py_impl(func):
    """Interpreted implementation of a kernel (``.py_func`` of the jitted
    dispatcher, or the function itself in interpreted mode)."""
    return getattr(func, "py_func", func)

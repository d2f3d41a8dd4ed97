"""numba detection and the env switch that forces the pure-numpy kernels.

Set ``EFFMORDELL_DISABLE_NUMBA=1`` to run without JIT compilation.
"""
import os

DISABLE_ENV = "EFFMORDELL_DISABLE_NUMBA"

try:
    import numba
except ImportError:  # pragma: no cover - exercised only on installs without numba
    numba = None

HAVE_NUMBA = numba is not None


def numba_disabled() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}


def default_backend() -> str:
    return "numba" if HAVE_NUMBA and not numba_disabled() else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, otherwise the identity decorator."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda func: func

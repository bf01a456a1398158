"""Backend selection for the compiled kernels.

Set ``BIRKHOFF_DISABLE_NUMBA=1`` to run every kernel as plain numpy/Python.
"""

import os

_truthy = {"1", "true", "yes", "on"}

NUMBA_DISABLED = os.environ.get("BIRKHOFF_DISABLE_NUMBA", "").strip().lower() in _truthy

try:
    if NUMBA_DISABLED:
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False


def maybe_njit(*args, **kwargs):
    """``numba.njit`` when the compiled backend is active, identity otherwise."""
    kwargs.setdefault("cache", True)

    def wrap(fn):
        if HAVE_NUMBA:
            return numba.njit(**kwargs)(fn)
        return fn

    if len(args) == 1 and callable(args[0]):
        return wrap(args[0])
    return wrap


def backend_name() -> str:
    return "numba" if HAVE_NUMBA else "numpy"

"""Kernel backend selection.

Two interchangeable implementations of the per-prime divisibility
kernels exist: a numba-JIT module and a pure-numpy one.  The active
backend is picked explicitly by name, or via the FROBSIEVE_BACKEND
environment variable, or by falling back from numba to numpy when the
JIT stack is unavailable.
"""

import os

_BACKENDS = ("numba", "numpy")


def get_kernels(name: str | None = None):
    """Return (kernel module, backend name).

    Resolution order: explicit ``name`` argument, then the
    FROBSIEVE_BACKEND environment variable, then numba with a silent
    fallback to numpy if numba cannot be imported.
    """
    if name is None:
        name = os.environ.get("FROBSIEVE_BACKEND", "").strip() or None
    if name is not None:
        if name not in _BACKENDS:
            raise ValueError(
                f"unknown backend {name!r}; expected one of {_BACKENDS}"
            )
        if name == "numba":
            from . import _kernels_numba as mod
        else:
            from . import _kernels_numpy as mod
        return mod, name
    try:
        from . import _kernels_numba as mod

        return mod, "numba"
    except ImportError:
        from . import _kernels_numpy as mod

        return mod, "numpy"

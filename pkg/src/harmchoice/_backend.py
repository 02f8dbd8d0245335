"""Backend selection for the hot kernels.

Set ``HARMCHOICE_BACKEND=numpy`` to force the pure-numpy fallbacks, or
``=numba`` to require the jitted kernels. Unset, numba is used when it
imports. :func:`set_backend` overrides the environment for the current
process (used by tests and benchmarks to compare both paths).
"""

from __future__ import annotations

import os
import warnings

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


ENV_BACKEND = "HARMCHOICE_BACKEND"
_BACKENDS = ("numba", "numpy")
_override: str | None = None


def _from_env() -> str:
    raw = os.environ.get(ENV_BACKEND, "").strip().lower()
    if not raw:
        return "numba" if HAVE_NUMBA else "numpy"
    if raw not in _BACKENDS:
        raise ValueError(f"{ENV_BACKEND} must be one of {_BACKENDS}, got {raw!r}")
    if raw == "numba" and not HAVE_NUMBA:  # pragma: no cover
        warnings.warn("numba requested but not importable; falling back to numpy")
        return "numpy"
    return raw


def active_backend() -> str:
    """The backend the kernels will dispatch to: 'numba' or 'numpy'."""
    return _override if _override is not None else _from_env()


def set_backend(name: str | None) -> None:
    """Force a backend for this process; ``None`` restores env selection."""
    global _override
    if name is not None:
        name = name.strip().lower()
        if name not in _BACKENDS:
            raise ValueError(f"backend must be one of {_BACKENDS}, got {name!r}")
        if name == "numba" and not HAVE_NUMBA:  # pragma: no cover
            raise RuntimeError("numba is not installed")
    _override = name

"""Kernel backend selection.

The hot loops (ray casting, both frontier detectors) exist twice: a Cython
extension (``frontier_explorer._native``) and a pure-Python reference
(``frontier_explorer._kernels_py``). The compiled backend is picked at import
when available; set FRONTIER_EXPLORER_BACKEND=python|compiled to force one.
Both produce identical results; see benchmarks/backend_bench.py for the
speed comparison.
"""
from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _native  # type: ignore[attr-defined]
except ImportError:
    _native = None

_ENV_VAR = "FRONTIER_EXPLORER_BACKEND"


def _select():
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if choice in ("", "auto"):
        return _native if _native is not None else _kernels_py
    if choice in ("compiled", "native"):
        if _native is None:
            raise ImportError(
                f"{_ENV_VAR}={choice!r} but the compiled extension is not built; "
                "reinstall with a C compiler available or unset the variable"
            )
        return _native
    if choice in ("python", "pure"):
        return _kernels_py
    raise ValueError(f"unrecognized {_ENV_VAR}={choice!r}; use 'auto', 'python' or 'compiled'")


_active = _select()


def kernels():
    """The active kernel module."""
    return _active


def backend_name() -> str:
    return "compiled" if _active is not _kernels_py else "python"


def compiled_available() -> bool:
    return _native is not None


def get_kernels(name: str):
    """Fetch a specific backend by name ('python' or 'compiled')."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        if _native is None:
            raise ImportError("compiled backend is not available")
        return _native
    raise ValueError(f"unknown backend {name!r}")


def force(name: str) -> None:
    """Repoint the active backend ('auto', 'python' or 'compiled')."""
    global _active
    if name == "auto":
        _active = _native if _native is not None else _kernels_py
    else:
        _active = get_kernels(name)

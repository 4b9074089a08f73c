"""Kernel backend selection.

The compiled extension is used when it imports; ``TURAN_FORGE_PURE=1``
forces the pure-Python implementation.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("TURAN_FORGE_PURE", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _impl  # type: ignore[attr-defined]
    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

kst_scan = _impl.kst_scan
max_codegree_exhaustive = _impl.max_codegree_exhaustive
subset_codegrees = _impl.subset_codegrees


def backend(name: str | None = None):
    """Return the kernel module for ``name`` ("cython" or "python"), default the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels  # type: ignore[attr-defined]
        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")


def worker_count() -> int:
    """Worker threads from ``TURAN_FORGE_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("TURAN_FORGE_THREADS", "1")))
    except ValueError:
        return 1

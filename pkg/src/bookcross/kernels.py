"""Kernel selection: compiled ``_ckernels`` when importable, else pure Python.

Set ``BOOKCROSS_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("BOOKCROSS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

connected_partition_minor = _impl.connected_partition_minor
minor_labels = _impl.minor_labels
cr1_search = _impl.cr1_search
cr2_search = _impl.cr2_search
min_mono = _impl.min_mono
conflict_pairs = _pykernels.conflict_pairs


def backends() -> dict[str, object]:
    """All importable kernel modules keyed by name (used by the benchmark and tests)."""
    out: dict[str, object] = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out

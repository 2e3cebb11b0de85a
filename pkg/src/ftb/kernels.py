"""Connectivity kernel backend, chosen once at import.

The compiled ``_kernels`` extension is used when it was built; otherwise the
pure-Python ``_kernels_py`` module. Setting ``FTB_PURE_PYTHON=1`` forces the
fallback. Both expose the same functions over CSR arrays (see ``_kernels_py``).
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("FTB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

local_connectivity = _impl.local_connectivity
disjoint_paths = _impl.disjoint_paths
pairs_min_connectivity = _impl.pairs_min_connectivity
is_k_connected = _impl.is_k_connected
is_subset_k_connected = _impl.is_subset_k_connected

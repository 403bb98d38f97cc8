"""Backend selection for the grid residual kernel.

The compiled extension is used when it was built; otherwise the numpy
implementation.  ``use_backend`` switches explicitly (tests and benchmarks
run both).
"""
from __future__ import annotations

import numpy as np

from ._ext import gridkernel_py

try:
    from ._ext import gridkernel as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": gridkernel_py}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

BACKEND = "compiled" if _compiled is not None else "python"


def available_backends() -> list:
    return sorted(_BACKENDS)


def use_backend(name: str) -> None:
    global BACKEND
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    BACKEND = name


def grid_max_residual(P, u, w, sign: int, mid_skip=None, pt_skip=None, backend: str = None):
    """Max over i, j of |P[i+j] (u[i] ± u[j]) - (w[i] ± w[j])| with masks.

    Returns ``(max_abs, i, j, skipped)``; ``i = j = -1`` when every pair was
    masked.  Ties resolve to the smallest ``(i, j)``.
    """
    n = len(u)
    P = np.ascontiguousarray(P, dtype=np.float64)
    u = np.ascontiguousarray(u, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    mid_skip = np.zeros(2 * n - 1, np.uint8) if mid_skip is None else np.ascontiguousarray(mid_skip, np.uint8)
    pt_skip = np.zeros(n, np.uint8) if pt_skip is None else np.ascontiguousarray(pt_skip, np.uint8)
    impl = _BACKENDS[backend or BACKEND]
    best, i, j, skipped = impl.grid_max_residual(P, u, w, int(sign), mid_skip, pt_skip)
    return float(best), int(i), int(j), int(skipped)

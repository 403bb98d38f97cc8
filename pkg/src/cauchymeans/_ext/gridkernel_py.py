"""Numpy implementation of the grid residual reduction (fallback backend)."""
import numpy as np


def grid_max_residual(P, u, w, sign, mid_skip, pt_skip):
    P = np.asarray(P, dtype=float)
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    n = u.shape[0]
    if P.shape[0] != 2 * n - 1 or w.shape[0] != n:
        raise ValueError("shape mismatch")
    k = np.add.outer(np.arange(n), np.arange(n))
    skip = np.asarray(mid_skip, dtype=bool)[k]
    pts = np.asarray(pt_skip, dtype=bool)
    skip |= pts[:, None] | pts[None, :]
    with np.errstate(all="ignore"):
        r = np.abs(P[k] * (u[:, None] + sign * u[None, :]) - (w[:, None] + sign * w[None, :]))
    r[np.isnan(r)] = np.inf
    skipped = int(skip.sum())
    r[skip] = -1.0
    flat = int(np.argmax(r))  # first maximum = lexicographically smallest (i, j)
    best = float(r.flat[flat])
    if best < 0:
        return 0.0, -1, -1, skipped
    return best, flat // n, flat % n, skipped

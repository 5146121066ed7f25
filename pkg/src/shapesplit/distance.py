"""Exact Euclidean distance transform of a binary mask.

Distances are measured voxel center to voxel center, and the background
includes the virtual voxels just outside the grid, so every true voxel gets
a distance of at least 1. The transform is exact: squared distances are
computed in integer arithmetic by a two-pass separable lower-envelope
method, one pass per axis.
"""

from __future__ import annotations

import numpy as np

from .validation import check_mask

_INF = float("inf")


def euclidean_distance_map(mask) -> np.ndarray:
    """Distance from each true voxel to the nearest background voxel.

    Background voxels (including everything off the grid) map to 0. The
    result is the exact Euclidean distance, not a chamfer approximation.

    Raises
    ------
    ValidationError
        If the mask contains no true voxel.
    """
    m = check_mask(mask, require_nonempty=True)
    return np.sqrt(_squared_distance_map(m).astype(np.float64))


def _squared_distance_map(mask: np.ndarray) -> np.ndarray:
    h, w = mask.shape

    # Vertical pass: per column, row distance to the nearest background,
    # counting the off-grid rows just above and below the grid.
    g = np.empty((h, w), dtype=np.int64)
    g[0] = np.where(mask[0], 1, 0)
    for y in range(1, h):
        g[y] = np.where(mask[y], g[y - 1] + 1, 0)
    np.minimum(g[h - 1], np.where(mask[h - 1], 1, 0), out=g[h - 1])
    for y in range(h - 2, -1, -1):
        np.minimum(g[y], g[y + 1] + 1, out=g[y])

    g2 = g * g
    out = np.empty((h, w), dtype=np.int64)
    for y in range(h):
        out[y] = _row_envelope(g2[y], w)
    return out


def _row_envelope(f: np.ndarray, w: int) -> np.ndarray:
    """Lower envelope of the parabolas (x - p)^2 + f(p) along one row.

    Sites sit at columns -1..w, where the two virtual off-grid columns
    carry value 0. Evaluated at the real columns 0..w-1.
    """
    n = w + 2
    fs = np.empty(n, dtype=np.int64)
    fs[0] = 0
    fs[1:-1] = f
    fs[-1] = 0

    v = np.empty(n, dtype=np.int64)  # site index of each envelope piece
    z = np.empty(n + 1, dtype=np.float64)  # piece boundaries
    k = 0
    v[0] = 0
    z[0] = -_INF
    z[1] = _INF
    for q in range(1, n):
        qp = q - 1  # actual column of site q
        while True:
            vq = v[k]
            vp = vq - 1
            s = (fs[q] + qp * qp - (fs[vq] + vp * vp)) / (2.0 * (qp - vp))
            if s <= z[k]:
                k -= 1
            else:
                break
        k += 1
        v[k] = q
        z[k] = s
        z[k + 1] = _INF

    out = np.empty(w, dtype=np.int64)
    k = 0
    for x in range(w):
        while z[k + 1] < x:
            k += 1
        vp = v[k] - 1
        out[x] = (x - vp) * (x - vp) + fs[v[k]]
    return out

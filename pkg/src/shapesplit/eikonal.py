"""Front propagation on a masked grid and descent through arrival times.

``fast_march`` solves the discrete equation |grad U| = V on the true voxels
of a domain mask with a label-setting (Dijkstra-like) sweep: a front expands
from the source in order of increasing tentative arrival time, and each
voxel's value is set once from the axis-wise minima of its neighbors via the
standard upwind quadratic. Small potential values therefore mean fast
propagation.

``descend`` walks from a voxel to the source by repeatedly stepping to the
8-neighbor with the smallest arrival time, which recovers the discrete
minimal path.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError
from .grid import NEIGHBOR_STEPS_8
from .validation import check_coord, check_mask, check_scalar_field

_INF = float("inf")


@dataclass(frozen=True)
class ArrivalField:
    """Arrival times of a front grown from ``source``.

    ``values`` is a float64 array holding the arrival time per voxel, +inf
    on voxels outside the solve domain; ``values[source] == 0``.
    """

    values: np.ndarray
    source: tuple[int, int]


def _update(a: float, b: float, v: float) -> float:
    """One upwind update from axis minima ``a`` and ``b`` at potential ``v``.

    Largest root of (U-a)+^2 + (U-b)+^2 = v^2, falling back to the one-sided
    value min(a, b) + v when the two-sided root is invalid.
    """
    if a > b:
        a, b = b, a
    if b - a >= v:  # also covers an unreached (infinite) second axis
        return a + v
    return 0.5 * (a + b + math.sqrt(2.0 * v * v - (a - b) * (a - b)))


def fast_march(potential, domain, source) -> ArrivalField:
    """Propagate a front from ``source`` across the true voxels of ``domain``.

    Parameters
    ----------
    potential : 2D array
        Positive, finite values on the domain; the accumulated cost per unit
        length of front travel (small = fast).
    domain : 2D boolean array
        Solve domain. Voxels outside it keep arrival time +inf.
    source : (x, y)
        Seed voxel; must lie in the domain.

    Ties in the expansion order break by row-major index, so the result is
    bit-identical across runs.
    """
    dom2d = check_mask(domain)
    h, w = dom2d.shape
    pot2d = check_scalar_field(potential, shape=(h, w))
    sx, sy = check_coord(source, (h, w))
    if not dom2d[sy, sx]:
        raise ValidationError(f"source ({sx}, {sy}) is not inside the domain")
    vals = pot2d[dom2d]
    if not np.isfinite(vals).all() or (vals <= 0).any():
        raise ValidationError("potential must be positive and finite on the domain")

    dom = dom2d.ravel()
    pot = pot2d.ravel()
    u = np.full(h * w, _INF, dtype=np.float64)
    done = np.zeros(h * w, dtype=bool)

    src = sy * w + sx
    u[src] = 0.0
    heap = [(0.0, src)]
    while heap:
        _, idx = heapq.heappop(heap)
        if done[idx]:
            continue
        done[idx] = True
        x = idx % w
        y = idx // w
        for dx, dy in ((0, -1), (0, 1), (-1, 0), (1, 0)):
            nx = x + dx
            ny = y + dy
            if not (0 <= nx < w and 0 <= ny < h):
                continue
            n = ny * w + nx
            if not dom[n] or done[n]:
                continue
            a = min(
                u[n - 1] if nx > 0 else _INF,
                u[n + 1] if nx < w - 1 else _INF,
            )
            b = min(
                u[n - w] if ny > 0 else _INF,
                u[n + w] if ny < h - 1 else _INF,
            )
            unew = _update(a, b, pot[n])
            if unew < u[n]:
                u[n] = unew
                heapq.heappush(heap, (unew, n))

    return ArrivalField(values=u.reshape(h, w), source=(sx, sy))


def argmax_field(field: ArrivalField) -> tuple[int, int]:
    """Coordinate of the largest finite arrival time, row-major tie-break."""
    u = field.values
    finite = np.isfinite(u)
    if not finite.any():
        raise ValidationError("arrival field has no finite values")
    idx = int(np.argmax(np.where(finite, u, -1.0)))
    h, w = u.shape
    return idx % w, idx // w


def descend(field: ArrivalField, start) -> list[tuple[int, int]]:
    """Walk from ``start`` down the arrival times to the source.

    Each step moves to the 8-neighbor with the strictly smallest arrival
    time (ties by the fixed neighbor order), so the values decrease
    strictly along the path and the walk terminates at the source. The
    returned path runs start -> source.
    """
    u = field.values
    h, w = u.shape
    x, y = check_coord(start, (h, w))
    if not math.isfinite(u[y, x]):
        raise ValidationError(f"start ({x}, {y}) has no finite arrival time")

    path = [(x, y)]
    while u[y, x] != 0.0:
        best = None
        best_val = u[y, x]
        for dx, dy in NEIGHBOR_STEPS_8:
            nx = x + dx
            ny = y + dy
            if not (0 <= nx < w and 0 <= ny < h):
                continue
            if u[ny, nx] < best_val:
                best_val = u[ny, nx]
                best = (nx, ny)
        if best is None:
            raise ValidationError(
                f"stuck at non-source local minimum ({x}, {y}); arrival field is not descendable"
            )
        x, y = best
        path.append(best)
    return path

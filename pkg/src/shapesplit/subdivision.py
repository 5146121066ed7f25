"""Subdivision of a connected region into equal-area, shape-following parts.

Cuts are one-voxel-thick digital lines placed perpendicular to the
centerline at evenly spaced path positions. Each cut severs the region;
labeling walks the cuts in centerline order, assigning the piece behind
every cut before moving on. A balancing pass then equalizes the region
areas by exchanging border voxels, and trims the division remainder from
the last region so that all areas come out exactly equal.

Regions use 4-connectivity, paths and cut bands 8-connectivity; an
8-connected band 4-separates the plane, which is what makes one-voxel cuts
sufficient.
"""

from __future__ import annotations

from collections import deque
from typing import NamedTuple

import numpy as np

from .centerline import DEFAULT_EXPONENT, _extract_full
from .eikonal import ArrivalField
from .exceptions import BalanceError, CutError, ValidationError
from .grid import connected_components
from .validation import (
    check_coord,
    check_labelmap,
    check_mask,
    check_path,
    check_positive_int,
    check_scalar_field,
)

_STEPS_4 = ((0, -1), (0, 1), (-1, 0), (1, 0))


class Cut(NamedTuple):
    """A planned perpendicular cut: path position, voxel, and direction."""

    index: int
    anchor: tuple[int, int]
    normal: tuple[int, int]


def normal_at(path, i: int) -> tuple[int, int]:
    """Direction of the path at interior index ``i``.

    Computed from the two surrounding voxels as
    ``(x[i+1] - x[i-1], y[i+1] - y[i-1])``; the perpendicular cut at ``i``
    consists of the voxels whose offset from the anchor is orthogonal to
    this vector.
    """
    pts = check_path(path)
    n = len(pts)
    if not 1 <= i <= n - 2:
        raise ValidationError(f"index {i} needs two path neighbors (valid range 1..{n - 2})")
    dx = pts[i + 1][0] - pts[i - 1][0]
    dy = pts[i + 1][1] - pts[i - 1][1]
    if dx == 0 and dy == 0:
        raise ValidationError(f"degenerate tangent at path index {i}")
    return dx, dy


def sample_cut_points(path, k: int) -> list[Cut]:
    """Plan ``k - 1`` cuts at evenly spaced positions along ``path``.

    Anchor indices are ``round(j * (L - 1) / k)`` for ``j = 1..k-1``
    (half-up rounding, exact integer arithmetic). The path must have at
    least ``2k + 1`` voxels so every anchor is interior and cuts are
    distinct; ``k = 1`` yields an empty plan.
    """
    pts = check_path(path)
    k = check_positive_int(k, "k")
    length = len(pts)
    # k = 1 needs no anchors, so any path length is fine
    if k > 1 and length < 2 * k + 1:
        raise ValidationError(
            f"k too large for region (centerline has {length} voxels, need at least {2 * k + 1})"
        )
    plan = []
    for j in range(1, k):
        idx = (2 * j * (length - 1) + k) // (2 * k)
        plan.append(Cut(index=idx, anchor=pts[idx], normal=normal_at(pts, idx)))
    return plan


def _band_mask(region: np.ndarray, anchor, normal) -> np.ndarray:
    """Digital-line band through ``anchor`` perpendicular to ``normal``.

    Voxels p of ``region`` with |normal . (p - anchor)| <= max(|nx|, |ny|)/2
    form the thinnest 4-separating line; of those, only the 8-connected
    piece containing the anchor is returned, so far-away lobes that happen
    to fall on the same line are untouched.
    """
    ax, ay = anchor
    nx, ny = float(normal[0]), float(normal[1])
    h, w = region.shape
    xs = np.arange(w, dtype=np.float64) - ax
    ys = np.arange(h, dtype=np.float64) - ay
    dot = nx * xs[None, :] + ny * ys[:, None]
    line = region & (2.0 * np.abs(dot) <= max(abs(nx), abs(ny)))

    out = np.zeros_like(line)
    out[ay, ax] = True
    queue = deque([(ax, ay)])
    while queue:
        cx, cy = queue.popleft()
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                px, py = cx + dx, cy + dy
                if 0 <= px < w and 0 <= py < h and line[py, px] and not out[py, px]:
                    out[py, px] = True
                    queue.append((px, py))
    return out


def cut_band(mask, anchor, normal) -> set[tuple[int, int]]:
    """Voxels of the one-voxel-thick cut through ``anchor``.

    Only voxels 8-connected to the anchor within the band are included.
    """
    m = check_mask(mask, require_nonempty=True)
    x, y = check_coord(anchor, m.shape)
    if not m[y, x]:
        raise ValidationError(f"anchor ({x}, {y}) is not a true voxel of the mask")
    nx, ny = float(normal[0]), float(normal[1])
    if nx == 0 and ny == 0:
        raise ValidationError("cut normal must be nonzero")
    band = _band_mask(m, (x, y), (nx, ny))
    ys, xs = np.nonzero(band)
    return {(int(px), int(py)) for px, py in zip(xs, ys)}


def _shift_sequence(max_shift: int):
    yield 0
    for step in range(1, max_shift + 1):
        yield step
        yield -step


def subdivide(mask, path, plan: list[Cut]) -> np.ndarray:
    """Label the region into ``len(plan) + 1`` parts along the centerline.

    Cuts are applied in order on a shrinking working mask. After removing a
    cut band, the 4-connected component holding the earliest centerline
    voxel that is still unlabeled gets the next label; the band voxels join
    it (cut voxels belong to the earlier side). The remainder after the
    last cut gets the final label.

    If a band fails to split the working mask, the anchor is shifted along
    the path by +-1, +-2, ... up to a quarter of the per-region path
    share, recomputing the direction each time, before giving up.
    """
    m = check_mask(mask, require_nonempty=True)
    pts = check_path(path)
    h, w = m.shape
    _, count = connected_components(m, connectivity=4)
    if count != 1:
        raise ValidationError(f"region not connected ({count} components)")
    for px, py in pts:
        if not (0 <= px < w and 0 <= py < h) or not m[py, px]:
            raise ValidationError(f"path voxel ({px}, {py}) lies outside the region")
    for cut in plan:
        if pts[cut.index] != tuple(cut.anchor):
            raise ValidationError(f"cut anchor {cut.anchor} does not match path index {cut.index}")

    length = len(pts)
    k = len(plan) + 1
    max_shift = length // (4 * k)
    labels = np.zeros((h, w), dtype=np.int32)
    working = m.copy()

    for j, cut in enumerate(plan, start=1):
        chosen = None
        fallback = None
        for shift in _shift_sequence(max_shift):
            i = cut.index + shift
            if not 1 <= i <= length - 2:
                continue
            ax, ay = pts[i]
            if not working[ay, ax]:
                continue
            try:
                direction = normal_at(pts, i)
            except ValidationError:
                continue
            band = _band_mask(working, (ax, ay), direction)
            remaining = working & ~band
            comps, ncomp = connected_components(remaining, connectivity=4)
            if ncomp < 2:
                continue
            behind = 0
            for px, py in pts:
                if labels[py, px] == 0 and remaining[py, px]:
                    behind = int(comps[py, px])
                    break
            if behind == 0:
                continue
            candidate = (band, remaining, comps, behind)
            if fallback is None:
                fallback = candidate
            # Prefer a cut that (a) strands no component, since one holding no
            # centerline voxel can never be labeled by a later cut, and (b)
            # yields a 4-connected region once the band joins the behind side;
            # a diagonal band's tail can otherwise hang off the far side.
            hit = {int(comps[py, px]) for px, py in pts if remaining[py, px]}
            if len(hit) == ncomp and _is_connected(band | (comps == behind)):
                chosen = candidate
                break
        if chosen is None:
            chosen = fallback
        if chosen is None:
            raise CutError(f"cut failed at segment {j}")
        band, remaining, comps, behind = chosen

        piece = remaining & (comps == behind)
        labels[piece] = j
        labels[band] = j
        working &= ~(piece | band)

    labels[working] = k
    return labels


def _is_connected(region: np.ndarray) -> bool:
    ys, xs = np.nonzero(region)
    if xs.size == 0:
        return False
    h, w = region.shape
    seen = np.zeros_like(region)
    seen[ys[0], xs[0]] = True
    queue = deque([(int(xs[0]), int(ys[0]))])
    reached = 1
    while queue:
        cx, cy = queue.popleft()
        for dx, dy in _STEPS_4:
            px, py = cx + dx, cy + dy
            if 0 <= px < w and 0 <= py < h and region[py, px] and not seen[py, px]:
                seen[py, px] = True
                reached += 1
                queue.append((px, py))
    return reached == xs.size


def _stays_connected_without(region: np.ndarray, x: int, y: int) -> bool:
    """Would removing voxel (x, y) keep the region 4-connected and nonempty?

    Local criterion: the region minus the voxel is connected iff all the
    voxel's in-region 4-neighbors can reach each other without it.
    """
    h, w = region.shape
    nbs = [
        (x + dx, y + dy)
        for dx, dy in _STEPS_4
        if 0 <= x + dx < w and 0 <= y + dy < h and region[y + dy, x + dx]
    ]
    if not nbs:
        return False  # sole voxel of its region
    if len(nbs) == 1:
        return True
    targets = set(nbs[1:])
    visited = {(x, y), nbs[0]}
    stack = [nbs[0]]
    while stack and targets:
        cx, cy = stack.pop()
        for dx, dy in _STEPS_4:
            px, py = cx + dx, cy + dy
            if 0 <= px < w and 0 <= py < h and region[py, px] and (px, py) not in visited:
                visited.add((px, py))
                targets.discard((px, py))
                stack.append((px, py))
    return not targets


def _adjacent_labels(labels: np.ndarray, lab: int) -> list[int]:
    region = labels == lab
    near = np.zeros_like(region)
    near[:, :-1] |= region[:, 1:]
    near[:, 1:] |= region[:, :-1]
    near[:-1, :] |= region[1:, :]
    near[1:, :] |= region[:-1, :]
    vals = np.unique(labels[near & (labels > 0) & ~region])
    return [int(v) for v in vals]


def _label_adjacency(labels: np.ndarray, k: int) -> dict[int, list[int]]:
    adj: dict[int, set[int]] = {j: set() for j in range(1, k + 1)}
    for a, b in (
        (labels[:, :-1], labels[:, 1:]),
        (labels[:-1, :], labels[1:, :]),
    ):
        touching = (a != b) & (a > 0) & (b > 0)
        for i, j in set(zip(a[touching].tolist(), b[touching].tolist())):
            adj[i].add(j)
            adj[j].add(i)
    return {j: sorted(s) for j, s in adj.items()}


def _border_candidates(labels: np.ndarray, donor: int, receiver: int) -> list[tuple[int, int]]:
    """Donor voxels 4-adjacent to the receiver, in row-major order as (y, x)."""
    recv = labels == receiver
    near = np.zeros_like(recv)
    near[:, :-1] |= recv[:, 1:]
    near[:, 1:] |= recv[:, :-1]
    near[:-1, :] |= recv[1:, :]
    near[1:, :] |= recv[:-1, :]
    return [(int(y), int(x)) for y, x in np.argwhere((labels == donor) & near)]


def _pick_transfer_voxel(labels, donor, receiver, arrival):
    """Best donor border voxel to hand to the receiver, or None.

    Candidates are ranked by largest arrival value, row-major on ties, and
    the first one whose removal keeps the donor 4-connected wins.
    """
    cand = _border_candidates(labels, donor, receiver)
    if not cand:
        return None
    cand.sort(key=lambda yx: -arrival[yx])  # stable: ties stay row-major
    donor_region = labels == donor
    for y, x in cand:
        if _stays_connected_without(donor_region, x, y):
            return y, x
    return None


def _strip_move(lab, areas, give: int, take: int, limit: int, arrival) -> int:
    """Move up to ``limit`` border voxels from ``give`` to ``take``.

    Works off one snapshot of the border, deepest voxels first (smallest
    arrival value, row-major on ties): repeated transfers across the same
    border then dent its middle instead of marching along the region's
    boundary rim, which keeps the coarse moves shape preserving. Every
    move keeps the donor 4-connected and nonempty. Returns the number of
    voxels moved.
    """
    if limit <= 0:
        return 0
    cand = _border_candidates(lab, give, take)
    cand.sort(key=lambda yx: arrival[yx])  # stable: ties stay row-major
    moved = 0
    donor_region = lab == give
    for y, x in cand:
        if moved >= limit or areas[give] <= 1:
            break
        if _stays_connected_without(donor_region, x, y):
            lab[y, x] = take
            donor_region[y, x] = False
            areas[give] -= 1
            areas[take] += 1
            moved += 1
    return moved


def _strip_capacity(lab, give: int, take: int) -> int:
    """1 when ``give`` has a border voxel it can hand to ``take``, else 0."""
    donor_region = lab == give
    if int(donor_region.sum()) <= 1:
        return 0
    for y, x in _border_candidates(lab, give, take):
        if _stays_connected_without(donor_region, x, y):
            return 1
    return 0


def _route_to_deficit(lab, areas, goals, k: int, dest: int, can_give) -> list[int] | None:
    """Shortest chain from the nearest surplus region to ``dest``.

    Breadth-first search from the deficit over the region adjacency graph,
    walking only edges whose upstream side can actually give up a border
    voxel (``can_give(nb, cur)``). Returns labels ordered donor..dest, or
    None when no surplus is reachable.
    """
    adjacency = _label_adjacency(lab, k)
    parent: dict[int, int | None] = {dest: None}
    order = [dest]
    qi = 0
    donor = None
    while qi < len(order) and donor is None:
        cur = order[qi]
        qi += 1
        for nb in adjacency[cur]:
            if nb in parent:
                continue
            if not can_give(nb, cur):
                continue
            parent[nb] = cur
            order.append(nb)
            if areas[nb] > goals[nb]:
                donor = nb
                break
    if donor is None:
        return None
    chain = [donor]
    while parent[chain[-1]] is not None:
        chain.append(parent[chain[-1]])
    return chain


def _area_report(areas: np.ndarray, k: int) -> str:
    return ", ".join(f"{j}: {int(areas[j])}" for j in range(1, k + 1))


def balance_areas(labels, k: int, arrival) -> np.ndarray:
    """Equalize region areas by border exchanges, then trim the remainder.

    With total labeled area A and target T = floor(A / k), the phases in
    order:

    1. Coarse: connectivity-preserving border strips flow from large
       regions into smaller neighbors (largest first, pair-equalizing),
       then remaining surplus is routed as strips along the region graph
       until regions 1..k-1 hold T voxels and region k holds T plus the
       remainder. Strips keep borders compact, so regions change width
       but keep their shape.
    2. Fine: any residue moves as single-voxel border exchanges, each
       voxel chosen by largest arrival value (row-major on ties) among
       border voxels whose removal keeps the donor 4-connected.
    3. Trim: relabel the A mod k surplus voxels of region k to background,
       taking the largest arrival values first, never breaking the region.

    Every region ends 4-connected with exactly T voxels. Raises
    BalanceError when the fine-phase budget (100 k single-voxel moves)
    runs out or no transfer route exists.
    """
    k = check_positive_int(k, "k")
    lab = check_labelmap(labels).copy()
    h, w = lab.shape
    if isinstance(arrival, ArrivalField):
        arr = arrival.values
    else:
        arr = check_scalar_field(arrival, shape=(h, w))

    present = set(np.unique(lab).tolist())
    if not present <= set(range(k + 1)) or not set(range(1, k + 1)) <= present:
        raise ValidationError(f"label map must contain exactly labels 1..{k}")
    if not np.isfinite(arr[lab > 0]).all():
        raise ValidationError("arrival values must be finite on all labeled voxels")
    for j in range(1, k + 1):
        if not _is_connected(lab == j):
            raise BalanceError(f"balance failed: region {j} is not 4-connected")

    areas = np.bincount(lab.ravel(), minlength=k + 1).astype(np.int64)
    total = int(areas[1:].sum())
    target = total // k
    leftover = total % k

    goals = np.full(k + 1, target, dtype=np.int64)
    goals[0] = 0
    goals[k] = target + leftover  # remainder parks on region k for the trim

    # Phase 1a: border-strip transfers from large regions to their smallest
    # neighbors. Each pass visits every region in descending area order and
    # lets it push a strip capped at the pair-equalizing quota (half the
    # area gap); moving a whole strip regardless of the gap would make the
    # largest pair trade the same strip back and forth without converging.
    # The phase ends when a full pass moves nothing.
    for _ in range(10 * k):
        acted = False
        for donor in sorted(range(1, k + 1), key=lambda l: (-areas[l], l)):
            neigh = _adjacent_labels(lab, donor)
            if not neigh:
                continue
            recv = min(neigh, key=lambda l: (areas[l], l))
            quota = int(areas[donor] - areas[recv]) // 2
            if _strip_move(lab, areas, donor, recv, quota, arr):
                acted = True
        if not acted:
            break

    # Phase 1b: pair averaging stalls once neighbor areas are within one
    # voxel, which can still leave a long drift across a chain of regions.
    # Route the remaining surplus to each deficit region along the region
    # graph, still as deepest-first strips: pushing this bulk one
    # largest-arrival voxel at a time would peel whole boundary rims off
    # the pass-through regions and destroy their shape.
    coarse_budget = 100 * k
    coarse_steps = 0
    while coarse_steps < coarse_budget:
        deficits = [j for j in range(1, k + 1) if areas[j] < goals[j]]
        if not deficits:
            break
        dest = deficits[0]
        chain = _route_to_deficit(
            lab, areas, goals, k, dest,
            can_give=lambda nb, cur: _strip_capacity(lab, nb, cur) > 0,
        )
        if chain is None:
            break  # leave the residue to the fine phase
        flow = min(int(areas[chain[0]] - goals[chain[0]]), int(goals[dest] - areas[dest]))
        for give, take in zip(chain, chain[1:]):
            flow = _strip_move(lab, areas, give, take, min(flow, coarse_budget - coarse_steps), arr)
            coarse_steps += flow
            if flow == 0:
                break

    # Phase 2 (fine): single-voxel border exchanges toward any remaining
    # deficit, the voxel chosen by largest arrival value (row-major on
    # ties) among border voxels whose removal keeps the donor connected.
    budget = 100 * k
    steps = 0
    while True:
        deficits = [j for j in range(1, k + 1) if areas[j] < goals[j]]
        if not deficits:
            break
        dest = deficits[0]
        chain = _route_to_deficit(
            lab, areas, goals, k, dest,
            can_give=lambda nb, cur: _pick_transfer_voxel(lab, nb, cur, arr) is not None,
        )
        if chain is None:
            raise BalanceError(f"balance failed; region areas: {_area_report(areas, k)}")
        for give, take in zip(chain, chain[1:]):
            if steps >= budget:
                raise BalanceError(f"balance failed; region areas: {_area_report(areas, k)}")
            voxel = _pick_transfer_voxel(lab, give, take, arr)
            if voxel is None:
                break  # an earlier move of this chain reshaped the border; replan
            y, x = voxel
            lab[y, x] = take
            areas[give] -= 1
            areas[take] += 1
            steps += 1

    # Phase 3: trim the remainder off region k, outermost (largest second
    # wave arrival) voxels first.
    if leftover:
        region = lab == k
        for _ in range(leftover):
            cand = [(int(y), int(x)) for y, x in np.argwhere(region)]
            cand.sort(key=lambda yx: -arr[yx])
            removed = False
            for y, x in cand:
                if _stays_connected_without(region, x, y):
                    lab[y, x] = 0
                    region[y, x] = False
                    removed = True
                    break
            if not removed:
                raise BalanceError(f"balance failed: cannot trim region {k} without disconnecting it")

    areas = np.bincount(lab.ravel(), minlength=k + 1).astype(np.int64)
    if not (areas[1 : k + 1] == target).all():
        raise BalanceError(f"balance failed; region areas: {_area_report(areas, k)}")
    for j in range(1, k + 1):
        if not _is_connected(lab == j):
            raise BalanceError(f"balance failed: region {j} is not 4-connected")
    return lab


def subdivide_equal(mask, k: int, exponent: float = DEFAULT_EXPONENT, balance: bool = True) -> np.ndarray:
    """Split a connected region into ``k`` equal-area parts along its shape.

    Composition of centerline extraction, cut planning, cut labeling, and
    area balancing. Returns an int32 label map with labels 1..k (0 for
    background and, when the region's area is not divisible by k, the few
    trimmed voxels).
    """
    k = check_positive_int(k, "k")
    m = check_mask(mask, require_nonempty=True)
    result = _extract_full(m, exponent)
    plan = sample_cut_points(result.path, k)
    lab = subdivide(m, result.path, plan)
    if balance:
        lab = balance_areas(lab, k, result.second_wave)
    return lab

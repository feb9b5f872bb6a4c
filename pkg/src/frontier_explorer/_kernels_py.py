"""Pure-Python kernels for the hot loops.

These are the reference implementations; ``_native`` (Cython) mirrors them
operation-for-operation. Both backends must produce bit-identical results:
same cell orders, same counts, same floating-point comparisons. Keep the
arithmetic expression order in step with the .pyx file when editing.

All kernels work on raw (height, width) uint8 arrays with the cell codes
UNKNOWN=0, FREE=1, OCCUPIED=2.
"""
from __future__ import annotations

import math
from collections import deque

import numpy as np

UNKNOWN = 0
FREE = 1
OCCUPIED = 2

# Corner-crossing tolerance for the ray walk, in cell units. When the ray's
# next row boundary and column boundary are this close, the crossing is
# treated as an exact corner and the walk steps diagonally. The rasterization
# oracle in the tests uses the same constant as a chord-length cutoff, which
# makes the two rules coincide exactly.
RAY_EDGE_EPS = 1e-12

OFFSETS4 = ((-1, 0), (0, -1), (0, 1), (1, 0))
OFFSETS8 = (
    (-1, -1), (-1, 0), (-1, 1),
    (0, -1), (0, 1),
    (1, -1), (1, 0), (1, 1),
)

# Marker codes for the wavefront detector's per-run side array.
_NONE = 0
_MAP_OPEN = 1
_MAP_CLOSED = 2
_FRONTIER_OPEN = 3
_FRONTIER_CLOSED = 4


def cast_ray_kernel(world, r0, c0, angle, max_range):
    """Walk the grid cells along a ray from the center of (r0, c0).

    Returns (traversed, hit): ``traversed`` is the list of free cells entered
    at distance <= max_range, in increasing-distance order and starting with
    the origin; ``hit`` is the first occupied cell, or None if the ray ended
    at max_range or the map border.
    """
    h, w = world.shape
    d_row = math.sin(angle)
    d_col = math.cos(angle)

    step_r = 1 if d_row > 0.0 else (-1 if d_row < 0.0 else 0)
    step_c = 1 if d_col > 0.0 else (-1 if d_col < 0.0 else 0)
    inf = math.inf
    t_max_r = 0.5 / abs(d_row) if step_r != 0 else inf
    t_max_c = 0.5 / abs(d_col) if step_c != 0 else inf
    t_delta_r = 1.0 / abs(d_row) if step_r != 0 else inf
    t_delta_c = 1.0 / abs(d_col) if step_c != 0 else inf

    r, c = r0, c0
    traversed = [(r, c)]
    hit = None
    while True:
        diff = t_max_r - t_max_c
        if -RAY_EDGE_EPS <= diff <= RAY_EDGE_EPS:
            # Exact corner: step both axes at once.
            t_entry = t_max_r if t_max_r < t_max_c else t_max_c
            r += step_r
            c += step_c
            t_max_r += t_delta_r
            t_max_c += t_delta_c
        elif t_max_r < t_max_c:
            t_entry = t_max_r
            r += step_r
            t_max_r += t_delta_r
        else:
            t_entry = t_max_c
            c += step_c
            t_max_c += t_delta_c
        if t_entry > max_range:
            break
        if not (0 <= r < h and 0 <= c < w):
            break
        if world[r, c] == OCCUPIED:
            hit = (r, c)
            break
        traversed.append((r, c))
    return traversed, hit


def sense_kernel(world, belief, r0, c0, max_range, ray_count):
    """Full 360-degree sweep: update ``belief`` in place from ``world``.

    Casts ``ray_count`` evenly spaced rays; traversed cells become FREE and
    hit cells OCCUPIED. Returns the number of cells that left UNKNOWN.
    """
    newly = 0
    for k in range(ray_count):
        angle = 2.0 * math.pi * k / ray_count
        traversed, hit = cast_ray_kernel(world, r0, c0, angle, max_range)
        for (r, c) in traversed:
            if belief[r, c] == UNKNOWN:
                newly += 1
            belief[r, c] = FREE
        if hit is not None:
            r, c = hit
            if belief[r, c] == UNKNOWN:
                newly += 1
            belief[r, c] = OCCUPIED
    return newly


def _is_frontier(cells, r, c, h, w, offsets):
    if cells[r, c] != UNKNOWN:
        return False
    for dr, dc in offsets:
        nr, nc = r + dr, c + dc
        if 0 <= nr < h and 0 <= nc < w and cells[nr, nc] == FREE:
            return True
    return False


def wfd_kernel(cells, pose_r, pose_c, eight):
    """Wavefront frontier detection seeded at the robot pose.

    Outer BFS floods the pose's open-space component and its one-cell fringe;
    whenever it dequeues a frontier point, an inner BFS extracts that point's
    whole connected frontier. Constraints that keep the exclusive per-cell
    marker sound:

    * only FREE cells expand their neighbors (the wavefront never crosses
      walls or unknown territory),
    * the outer gate re-enqueues FRONTIER_CLOSED cells without changing
      their marker, so no cell is ever re-admitted to a later inner BFS,
    * MAP_CLOSED is terminal.

    Returns (frontiers, cells_visited): frontiers as lists of (row, col)
    in inner-BFS discovery order, outer-BFS encounter order between
    frontiers; cells_visited counts non-skipped dequeues of both BFSs.
    """
    h, w = cells.shape
    offsets = OFFSETS8 if eight else OFFSETS4
    marker = np.zeros((h, w), dtype=np.uint8)

    queue_m = deque()
    queue_m.append((pose_r, pose_c))
    marker[pose_r, pose_c] = _MAP_OPEN

    frontiers = []
    visited = 0
    while queue_m:
        pr, pc = queue_m.popleft()
        if marker[pr, pc] == _MAP_CLOSED:
            continue
        visited += 1
        if _is_frontier(cells, pr, pc, h, w, offsets):
            queue_f = deque()
            queue_f.append((pr, pc))
            marker[pr, pc] = _FRONTIER_OPEN
            new_frontier = []
            while queue_f:
                qr, qc = queue_f.popleft()
                m = marker[qr, qc]
                if m == _MAP_CLOSED or m == _FRONTIER_CLOSED:
                    continue
                visited += 1
                if _is_frontier(cells, qr, qc, h, w, offsets):
                    new_frontier.append((qr, qc))
                    for dr, dc in offsets:
                        nr, nc = qr + dr, qc + dc
                        if 0 <= nr < h and 0 <= nc < w:
                            mn = marker[nr, nc]
                            if mn != _FRONTIER_OPEN and mn != _FRONTIER_CLOSED and mn != _MAP_CLOSED:
                                queue_f.append((nr, nc))
                                marker[nr, nc] = _FRONTIER_OPEN
                marker[qr, qc] = _FRONTIER_CLOSED
            frontiers.append(new_frontier)
            for (fr, fc) in new_frontier:
                marker[fr, fc] = _MAP_CLOSED
            continue
        if cells[pr, pc] == FREE:
            for dr, dc in offsets:
                nr, nc = pr + dr, pc + dc
                if 0 <= nr < h and 0 <= nc < w:
                    mn = marker[nr, nc]
                    if mn != _MAP_OPEN and mn != _MAP_CLOSED:
                        queue_m.append((nr, nc))
                        if mn == _NONE:
                            marker[nr, nc] = _MAP_OPEN
        marker[pr, pc] = _MAP_CLOSED
    return frontiers, visited


def naive_kernel(cells, eight):
    """Full-grid frontier detection: scan every cell, group frontier points.

    The point scan is vectorized; cells_visited is width*height by
    definition (the scan touches the whole grid). Grouping BFS runs over
    the frontier points only, seeded in row-major order.
    """
    h, w = cells.shape
    offsets = OFFSETS8 if eight else OFFSETS4

    free = cells == FREE
    near_free = np.zeros((h, w), dtype=bool)
    for dr, dc in offsets:
        src_r = slice(max(0, -dr), h - max(0, dr))
        src_c = slice(max(0, -dc), w - max(0, dc))
        dst_r = slice(max(0, dr), h + min(0, dr))
        dst_c = slice(max(0, dc), w + min(0, dc))
        near_free[dst_r, dst_c] |= free[src_r, src_c]
    frontier_mask = (cells == UNKNOWN) & near_free

    frontiers = []
    grouped = np.zeros((h, w), dtype=bool)
    for r, c in np.argwhere(frontier_mask):
        if grouped[r, c]:
            continue
        seed = (int(r), int(c))
        grouped[seed] = True
        queue = deque([seed])
        component = []
        while queue:
            qr, qc = queue.popleft()
            component.append((qr, qc))
            for dr, dc in offsets:
                nr, nc = qr + dr, qc + dc
                if 0 <= nr < h and 0 <= nc < w and frontier_mask[nr, nc] and not grouped[nr, nc]:
                    grouped[nr, nc] = True
                    queue.append((nr, nc))
        frontiers.append(component)
    return frontiers, h * w

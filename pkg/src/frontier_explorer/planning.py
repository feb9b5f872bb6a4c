"""Costmap inflation and shortest-path search over the belief grid.

Planning happens through known open space only: UNKNOWN and OCCUPIED cells
are never traversable, and FREE cells within the inflation radius of an
obstacle are blocked to keep paths clear of walls. Step costs are 1 for
axis moves and sqrt(2) for diagonals.
"""
from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass

import numpy as np

from .grid import FREE, OCCUPIED, CellIndex, Connectivity, OccupancyGrid, Pose, _check_bounds
from .frontiers import Frontier

__all__ = ["Costmap", "Path", "PlanAlgorithm", "inflate", "plan", "goal_for_frontier", "path_length"]

_SQRT2 = math.sqrt(2.0)


@dataclass
class Costmap:
    """Boolean plannability per cell, derived from a belief grid."""

    traversable: np.ndarray

    @property
    def height(self) -> int:
        return self.traversable.shape[0]

    @property
    def width(self) -> int:
        return self.traversable.shape[1]


@dataclass(frozen=True)
class Path:
    """An ordered run of adjacent traversable cells from start to goal."""

    cells: tuple
    length: float


class PlanAlgorithm(enum.Enum):
    BFS = "bfs"
    DIJKSTRA = "dijkstra"
    ASTAR = "astar"


def path_length(cells) -> float:
    """Cost of a cell sequence: unit axis steps, sqrt(2) diagonal steps.

    Computed from step counts so equal-cost paths compare exactly equal.
    """
    straight = diagonal = 0
    for (r0, c0), (r1, c1) in zip(cells, cells[1:]):
        if r0 != r1 and c0 != c1:
            diagonal += 1
        else:
            straight += 1
    return straight + diagonal * _SQRT2


def inflate(grid: OccupancyGrid, radius: float) -> Costmap:
    """Build a costmap: blocks UNKNOWN, OCCUPIED, and every FREE cell within
    Euclidean distance <= radius (in cells) of an OCCUPIED cell.

    radius 0 blocks only the unknown and occupied cells themselves.
    """
    if radius < 0:
        raise ValueError(f"inflation radius must be >= 0, got {radius}")
    cells = grid.cells
    blocked = cells != FREE
    if radius > 0:
        occupied = cells == OCCUPIED
        reach = int(math.floor(radius))
        h, w = cells.shape
        for dr in range(-reach, reach + 1):
            for dc in range(-reach, reach + 1):
                if dr == 0 and dc == 0:
                    continue
                if dr * dr + dc * dc > radius * radius:
                    continue
                # blocked[o + (dr, dc)] for every occupied o: shift the
                # occupied mask by (dr, dc) without wrap-around.
                src_r = slice(max(0, -dr), h - max(0, dr))
                src_c = slice(max(0, -dc), w - max(0, dc))
                dst_r = slice(max(0, dr), h + min(0, dr))
                dst_c = slice(max(0, dc), w + min(0, dc))
                blocked[dst_r, dst_c] |= occupied[src_r, src_c]
    return Costmap(~blocked)


def _reconstruct(parent, start, goal) -> Path:
    cells = [goal]
    cur = goal
    while cur != start:
        cur = parent[cur]
        cells.append(cur)
    cells.reverse()
    cells = tuple(cells)
    return Path(cells, path_length(cells))


def plan(
    costmap: Costmap,
    start: CellIndex,
    goal: CellIndex,
    conn: Connectivity = Connectivity.FOUR,
    algorithm: PlanAlgorithm = PlanAlgorithm.ASTAR,
):
    """Shortest path from start to goal over traversable cells, or None.

    BFS minimizes hop count (which is also path length under FOUR
    connectivity); DIJKSTRA and ASTAR minimize cost under unit/sqrt(2) step
    weights. ASTAR uses the Euclidean heuristic under FOUR connectivity and
    the octile heuristic under EIGHT, both admissible and consistent.

    Raises if ``start`` is not traversable (distinct from an unreachable
    goal, which returns None). Ties are broken by row-major neighbor order
    and FIFO heap order, so results are deterministic.
    """
    traversable = costmap.traversable
    h, w = traversable.shape
    _check_bounds(h, w, start)
    _check_bounds(h, w, goal)
    start = (int(start[0]), int(start[1]))
    goal = (int(goal[0]), int(goal[1]))
    if not traversable[start]:
        raise ValueError(f"plan start {start!r} is not traversable")
    if not traversable[goal]:
        return None
    if start == goal:
        return Path((start,), 0.0)
    offsets = conn.offsets
    if algorithm is PlanAlgorithm.BFS:
        return _plan_bfs(traversable, start, goal, offsets)
    return _plan_weighted(traversable, start, goal, offsets, conn, algorithm)


def _plan_bfs(traversable, start, goal, offsets):
    from collections import deque

    h, w = traversable.shape
    parent = {}
    seen = np.zeros((h, w), dtype=bool)
    seen[start] = True
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            return _reconstruct(parent, start, goal)
        r, c = cur
        for dr, dc in offsets:
            nxt = (r + dr, c + dc)
            nr, nc = nxt
            if 0 <= nr < h and 0 <= nc < w and not seen[nr, nc] and traversable[nr, nc]:
                seen[nr, nc] = True
                parent[nxt] = cur
                queue.append(nxt)
    return None


def _plan_weighted(traversable, start, goal, offsets, conn, algorithm):
    h, w = traversable.shape
    gr, gc = goal
    use_astar = algorithm is PlanAlgorithm.ASTAR
    octile = conn is Connectivity.EIGHT

    def heuristic(r, c):
        dr = abs(r - gr)
        dc = abs(c - gc)
        if octile:
            lo, hi = (dr, dc) if dr < dc else (dc, dr)
            return hi + (_SQRT2 - 1.0) * lo
        return math.hypot(dr, dc)

    dist = np.full((h, w), np.inf)
    dist[start] = 0.0
    parent = {}
    counter = 0  # FIFO tie-break keeps heap pops deterministic
    heap = [(heuristic(*start) if use_astar else 0.0, 0, 0.0, start)]
    while heap:
        _, _, g, cur = heapq.heappop(heap)
        r, c = cur
        if g > dist[r, c]:
            continue  # stale entry superseded by a cheaper route
        if cur == goal:
            return _reconstruct(parent, start, goal)
        for dr, dc in offsets:
            nr, nc = r + dr, c + dc
            if not (0 <= nr < h and 0 <= nc < w) or not traversable[nr, nc]:
                continue
            step = _SQRT2 if (dr != 0 and dc != 0) else 1.0
            ng = g + step
            if ng < dist[nr, nc]:
                dist[nr, nc] = ng
                parent[(nr, nc)] = cur
                counter += 1
                priority = ng + heuristic(nr, nc) if use_astar else ng
                heapq.heappush(heap, (priority, counter, ng, (nr, nc)))
    return None


def goal_for_frontier(
    costmap: Costmap,
    belief: OccupancyGrid,
    frontier: Frontier,
    pose: Pose,
    conn: Connectivity = Connectivity.FOUR,
    algorithm: PlanAlgorithm = PlanAlgorithm.ASTAR,
    plan_conn: Connectivity = None,
):
    """The cheapest-to-reach traversable FREE cell adjacent (under ``conn``)
    to the frontier's median, or None when no adjacent cell is both
    traversable and reachable.

    The median itself is UNKNOWN (hence unplannable); sensing from an
    adjacent goal necessarily reveals it, which is what guarantees progress.
    Path costs use ``plan_conn`` (default: same as ``conn``); cost ties break
    on the lexicographically smallest candidate cell.
    """
    if plan_conn is None:
        plan_conn = conn
    h, w = belief.height, belief.width
    mr, mc = frontier.median
    best = None
    for dr, dc in conn.offsets:
        nr, nc = mr + dr, mc + dc
        if not (0 <= nr < h and 0 <= nc < w):
            continue
        if belief.cells[nr, nc] != FREE or not costmap.traversable[nr, nc]:
            continue
        path = plan(costmap, pose.cell, (nr, nc), plan_conn, algorithm)
        if path is None:
            continue
        key = (path.length, (nr, nc))
        if best is None or key < best:
            best = key
    return best[1] if best is not None else None

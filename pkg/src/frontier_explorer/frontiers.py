"""Frontier detection: the wavefront detector and the full-grid baseline.

A frontier point is an UNKNOWN cell with at least one FREE neighbor; a
frontier is a maximal connected set of frontier points. The wavefront
detector (wfd) scans only the robot's open-space component and its fringe,
so it finds exactly the frontiers reachable from the pose; the naive
detector scans the whole grid and finds all of them.
"""
from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass

from . import backend
from .grid import FREE, CellIndex, Connectivity, OccupancyGrid, Pose, _check_bounds

__all__ = [
    "Frontier",
    "DetectionStats",
    "DetectorKind",
    "wfd",
    "naive_detect",
    "detect",
    "frontier_median",
    "frontier_centroid",
    "rank_frontiers",
]


@dataclass(frozen=True)
class Frontier:
    """One connected frontier: member cells plus its median cell and centroid.

    ``median`` is always a member cell (the navigation target); ``centroid``
    is the coordinate mean and may fall outside the frontier entirely.
    """

    cells: tuple
    median: CellIndex
    centroid: tuple

    @classmethod
    def from_cells(cls, cells) -> "Frontier":
        cells = tuple((int(r), int(c)) for r, c in cells)
        if not cells:
            raise ValueError("a frontier must contain at least one cell")
        return cls(cells=cells, median=_median_cell(cells), centroid=_centroid(cells))


@dataclass
class DetectionStats:
    """Cost of one detector run: cells examined and elapsed wall time."""

    cells_visited: int
    wall_time: float  # seconds


class DetectorKind(enum.Enum):
    WFD = "wfd"
    NAIVE = "naive"


def _median_cell(cells) -> CellIndex:
    # Component-wise lower-middle median, snapped to the nearest member cell
    # (ties: lexicographically smallest), so the result is always a member.
    rows = sorted(r for r, _ in cells)
    cols = sorted(c for _, c in cells)
    mid = (len(cells) - 1) // 2
    target_r, target_c = rows[mid], cols[mid]
    return min(cells, key=lambda rc: ((rc[0] - target_r) ** 2 + (rc[1] - target_c) ** 2, rc))


def _centroid(cells) -> tuple:
    n = len(cells)
    return (sum(r for r, _ in cells) / n, sum(c for _, c in cells) / n)


def frontier_median(frontier: Frontier) -> CellIndex:
    """The member cell nearest the component-wise coordinate median."""
    if not frontier.cells:
        raise ValueError("frontier has no cells")
    return _median_cell(frontier.cells)


def frontier_centroid(frontier: Frontier) -> tuple:
    """Arithmetic mean of member coordinates; may be fractional and may lie
    on a non-member (even unknown or occupied) cell."""
    if not frontier.cells:
        raise ValueError("frontier has no cells")
    return _centroid(frontier.cells)


def wfd(grid: OccupancyGrid, pose: Pose, conn: Connectivity = Connectivity.EIGHT):
    """Wavefront frontier detection (two nested BFS seeded at the pose).

    The outer BFS walks the pose's open-space component plus its one-cell
    fringe, tracking Map-Open/Map-Closed markers; dequeuing a frontier point
    triggers an inner BFS that extracts that point's entire connected
    frontier under Frontier-Open/Frontier-Closed markers and seals it
    Map-Closed. Every frontier reachable from the pose through known open
    space is returned exactly once; unknown regions are never scanned.

    Returns (frontiers, stats). The pose cell must be FREE in the grid.
    """
    _check_bounds(grid.height, grid.width, pose.cell)
    r, c = pose.cell
    if grid.cells[r, c] != FREE:
        raise ValueError(f"wfd pose {pose.cell!r} must be on known open space")
    start = time.perf_counter()
    raw, visited = backend.kernels().wfd_kernel(
        grid.cells, int(r), int(c), conn is Connectivity.EIGHT
    )
    elapsed = time.perf_counter() - start
    return [Frontier.from_cells(cells) for cells in raw], DetectionStats(int(visited), elapsed)


def naive_detect(grid: OccupancyGrid, conn: Connectivity = Connectivity.EIGHT):
    """Full-grid frontier detection: scan every cell, then group the frontier
    points into connected components.

    Returns (frontiers, stats); stats.cells_visited is width*height by
    construction.
    """
    start = time.perf_counter()
    raw, visited = backend.kernels().naive_kernel(grid.cells, conn is Connectivity.EIGHT)
    elapsed = time.perf_counter() - start
    return [Frontier.from_cells(cells) for cells in raw], DetectionStats(int(visited), elapsed)


def detect(grid: OccupancyGrid, pose: Pose, kind: DetectorKind, conn: Connectivity = Connectivity.EIGHT):
    """Run the configured detector."""
    if kind is DetectorKind.WFD:
        return wfd(grid, pose, conn)
    return naive_detect(grid, conn)


def rank_frontiers(frontiers, pose: Pose):
    """Frontiers sorted by Euclidean pose-to-median distance, nearest first.

    Ties break on the lexicographically smallest median cell, which is a
    total order because medians of distinct frontiers are distinct cells.
    """
    pr, pc = pose.cell

    def key(f: Frontier):
        mr, mc = f.median
        return (math.hypot(mr - pr, mc - pc), f.median)

    return sorted(frontiers, key=key)

"""Deterministic ray-casting range sensor over a ground-truth world.

Stands in for the SLAM + laser stack: sensing is noise-free, so a belief
cell, once known, always matches the world. Angle 0 points along +col,
pi/2 along +row; rays are cast from the cell center.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import backend
from .grid import FREE, CellIndex, OccupancyGrid, Pose, WorldMap, _check_bounds

__all__ = ["SensorConfig", "WorldMap", "Pose", "cast_ray", "sense"]


@dataclass(frozen=True)
class SensorConfig:
    """Range sensor parameters: reach in cells and rays per 360-degree sweep."""

    max_range: float = 10.0
    ray_count: int = 360

    def __post_init__(self):
        if not self.max_range >= 1:
            raise ValueError(f"max_range must be >= 1 cell, got {self.max_range}")
        if self.ray_count < 4:
            raise ValueError(f"ray_count must be >= 4, got {self.ray_count}")


def cast_ray(world: WorldMap, origin: CellIndex, angle: float, max_range: float):
    """Trace one ray; returns (traversed free cells in distance order, hit).

    The walk starts at ``origin`` (which must be free), visits every cell
    whose interior the ray crosses within ``max_range``, and stops at the
    first occupied cell (returned as ``hit``, excluded from ``traversed``),
    at range, or at the map border.
    """
    _check_bounds(world.height, world.width, origin)
    r, c = origin
    if world.cells[r, c] != FREE:
        raise ValueError(f"ray origin {origin!r} is not a free world cell")
    return backend.kernels().cast_ray_kernel(world.cells, int(r), int(c), float(angle), float(max_range))


def sense(world: WorldMap, pose: Pose, config: SensorConfig, belief: OccupancyGrid) -> int:
    """One omnidirectional sweep from ``pose``, updating ``belief`` in place.

    Marks traversed cells FREE and hit cells OCCUPIED; no other cells change.
    Returns the number of cells newly revealed (UNKNOWN before the sweep).
    Deterministic and idempotent: repeating the sweep reveals nothing new.
    """
    if belief.cells.shape != world.cells.shape:
        raise ValueError(
            f"shape mismatch: belief {belief.cells.shape} vs world {world.cells.shape}"
        )
    _check_bounds(world.height, world.width, pose.cell)
    r, c = pose.cell
    if world.cells[r, c] != FREE:
        raise ValueError(f"robot pose {pose.cell!r} is not on a free world cell")
    return int(
        backend.kernels().sense_kernel(
            world.cells, belief.cells, int(r), int(c), float(config.max_range), int(config.ray_count)
        )
    )

"""Random world generation, bundled fixture worlds, and belief snapshots."""
from __future__ import annotations

from importlib import resources

import numpy as np

from .grid import (
    FREE,
    OCCUPIED,
    Connectivity,
    OccupancyGrid,
    Pose,
    WorldMap,
    free_component,
    load_ascii_world,
)
from .world import SensorConfig, sense

__all__ = [
    "generate_world",
    "explored_snapshot",
    "bundled_world",
    "bundled_world_names",
    "GenerationError",
]

_MAX_ATTEMPTS = 64
# The start's free component must dominate the free space so exploration
# runs have somewhere to go.
_MIN_COMPONENT_FRACTION = 0.25


class GenerationError(RuntimeError):
    pass


def generate_world(width: int, height: int, obstacle_density: float, seed: int):
    """Sample a random world with a guaranteed-useful start cell.

    Cells are occupied independently with probability ``obstacle_density``;
    candidates are rejected until the start's free component (8-connected)
    holds at least 25% of all free cells. Deterministic per seed.

    Returns (WorldMap, Pose).
    """
    if width < 8 or height < 8:
        raise ValueError(f"world must be at least 8x8, got {width}x{height}")
    if not 0 <= obstacle_density <= 0.4:
        raise ValueError(f"obstacle density must be in [0, 0.4], got {obstacle_density}")
    rng = np.random.default_rng(seed)
    for _ in range(_MAX_ATTEMPTS):
        occupied = rng.random((height, width)) < obstacle_density
        cells = np.where(occupied, OCCUPIED, FREE).astype(np.uint8)
        free_cells = np.argwhere(cells == FREE)
        if len(free_cells) == 0:
            continue
        start = tuple(int(v) for v in free_cells[rng.integers(len(free_cells))])
        component = free_component(cells, start, Connectivity.EIGHT)
        if component.sum() >= _MIN_COMPONENT_FRACTION * len(free_cells):
            return WorldMap(cells), Pose(start)
    raise GenerationError(
        f"no acceptable world in {_MAX_ATTEMPTS} attempts "
        f"({width}x{height}, density {obstacle_density}, seed {seed})"
    )


def bundled_world_names():
    """Names of the fixture worlds shipped with the package."""
    files = resources.files("frontier_explorer").joinpath("worlds")
    return sorted(p.name[:-4] for p in files.iterdir() if p.name.endswith(".txt"))


def bundled_world(name: str):
    """Load a bundled fixture world by name; returns (WorldMap, Pose)."""
    path = resources.files("frontier_explorer").joinpath("worlds", f"{name}.txt")
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise KeyError(f"no bundled world named {name!r}; have {bundled_world_names()}")
    return load_ascii_world(text)


def explored_snapshot(
    world: WorldMap,
    start: Pose,
    sensor: SensorConfig,
    rng: np.random.Generator,
    extra_senses: int = 0,
) -> OccupancyGrid:
    """A partially-explored belief: sense at the start, then from up to
    ``extra_senses`` already-revealed free cells.

    Every re-sense origin is drawn from cells the robot has already seen,
    so the known free region stays 8-connected to the start, exactly as it
    would after real movement.
    """
    belief = OccupancyGrid.unknown(world.height, world.width)
    sense(world, start, sensor, belief)
    for _ in range(extra_senses):
        revealed_free = np.argwhere(belief.cells == FREE)
        origin = tuple(int(v) for v in revealed_free[rng.integers(len(revealed_free))])
        sense(world, Pose(origin), sensor, belief)
    return belief

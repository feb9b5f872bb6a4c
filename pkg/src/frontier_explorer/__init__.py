"""Frontier-based autonomous exploration over 2D occupancy grids.

Implements the wavefront frontier detector and the classic full-grid
baseline over tri-state occupancy grids, a deterministic ray-casting range
sensor, costmap-inflated grid path planning (BFS / Dijkstra / A*), and the
closed exploration loop that drives a simulated robot until no frontiers
remain. Hot kernels run as a compiled extension when available, with a
pure-Python fallback selected at import (see frontier_explorer.backend).
"""
from .backend import backend_name, compiled_available
from .explore import (
    Event,
    ExplorationState,
    ExplorationTrace,
    ExplorerConfig,
    IterationRecord,
    StepResult,
    recovery,
    run,
    start_exploration,
    step,
)
from .frontiers import (
    DetectionStats,
    DetectorKind,
    Frontier,
    frontier_centroid,
    frontier_median,
    naive_detect,
    rank_frontiers,
    wfd,
)
from .grid import (
    CellState,
    Connectivity,
    OccupancyGrid,
    Pose,
    WorldMap,
    WorldParseError,
    free_component,
    is_frontier_point,
    load_ascii_world,
    map_agreement,
    neighbors,
    save_pgm,
    world_to_ascii,
)
from .planning import Costmap, Path, PlanAlgorithm, goal_for_frontier, inflate, plan, path_length
from .world import SensorConfig, cast_ray, sense
from .worldgen import GenerationError, explored_snapshot, generate_world

__version__ = "0.1.0"

__all__ = [
    "CellState",
    "Connectivity",
    "Costmap",
    "DetectionStats",
    "DetectorKind",
    "Event",
    "ExplorationState",
    "ExplorationTrace",
    "ExplorerConfig",
    "Frontier",
    "GenerationError",
    "IterationRecord",
    "OccupancyGrid",
    "Path",
    "PlanAlgorithm",
    "Pose",
    "SensorConfig",
    "StepResult",
    "WorldMap",
    "WorldParseError",
    "backend_name",
    "cast_ray",
    "compiled_available",
    "explored_snapshot",
    "free_component",
    "frontier_centroid",
    "frontier_median",
    "generate_world",
    "goal_for_frontier",
    "inflate",
    "is_frontier_point",
    "load_ascii_world",
    "map_agreement",
    "naive_detect",
    "neighbors",
    "path_length",
    "plan",
    "rank_frontiers",
    "recovery",
    "run",
    "save_pgm",
    "sense",
    "start_exploration",
    "step",
    "wfd",
    "world_to_ascii",
]

"""The closed exploration loop: sense, detect, rank, plan, move, repeat.

Each iteration senses at the current pose, detects frontiers with the
configured detector, drops blacklisted ones, and drives to the cheapest
reachable goal next to the nearest frontier median. Frontiers whose goals
cannot be planned are blacklisted until the known region grows; when every
candidate fails, a 360-degree re-sense recovery runs, and the loop completes
once no selectable frontiers remain.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Optional

import numpy as np

from .frontiers import DetectionStats, DetectorKind, detect, rank_frontiers
from .grid import (
    FREE,
    OCCUPIED,
    UNKNOWN,
    CellIndex,
    Connectivity,
    OccupancyGrid,
    Pose,
    WorldMap,
    free_component,
    save_pgm,
)
from .planning import PlanAlgorithm, goal_for_frontier, inflate, plan
from .world import SensorConfig, sense

__all__ = [
    "Event",
    "ExplorerConfig",
    "ExplorationState",
    "ExplorationTrace",
    "IterationRecord",
    "StepResult",
    "start_exploration",
    "step",
    "recovery",
    "run",
]


class Event(enum.Enum):
    MOVED_TO = "moved_to"
    RECOVERY_TRIGGERED = "recovery_triggered"
    COMPLETE = "complete"


@dataclass
class ExplorerConfig:
    detector: DetectorKind = DetectorKind.WFD
    sensor: SensorConfig = field(default_factory=SensorConfig)
    inflation_radius: float = 1.0
    frontier_connectivity: Connectivity = Connectivity.EIGHT
    planning_connectivity: Connectivity = Connectivity.FOUR
    planner: PlanAlgorithm = PlanAlgorithm.ASTAR
    sense_while_moving: bool = True
    max_iterations: int = 1000
    snapshot_every: Optional[int] = None
    snapshot_dir: Optional[str] = None

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.snapshot_every is not None and self.snapshot_every < 1:
            raise ValueError("snapshot_every must be >= 1 when set")


@dataclass
class IterationRecord:
    """Metrics for one loop iteration."""

    iteration: int
    event: str
    frontiers_found: int
    goal: Optional[CellIndex]
    path_cost: float
    newly_revealed: int
    detector_cells_visited: int
    detector_seconds: float
    cells_known: int
    coverage: float
    distance_traveled: float  # cumulative


@dataclass
class ExplorationTrace:
    records: list = field(default_factory=list)
    iterations: int = 0
    distance_traveled: float = 0.0
    initial_revealed: int = 0
    wall_time: float = 0.0
    termination: str = ""


@dataclass
class StepResult:
    event: Event
    goal: Optional[CellIndex] = None
    path_cost: float = 0.0
    newly_revealed: int = 0
    frontiers_found: int = 0
    blacklisted: tuple = ()
    detector_stats: Optional[DetectionStats] = None


@dataclass
class ExplorationState:
    world: WorldMap
    belief: OccupancyGrid
    pose: Pose
    config: ExplorerConfig
    blacklist: dict = field(default_factory=dict)  # median -> known-cell count at failure
    trace: ExplorationTrace = field(default_factory=ExplorationTrace)
    reference_mask: Optional[np.ndarray] = None
    recovery_pending: bool = False

    def cells_known(self) -> int:
        return int(np.count_nonzero(self.belief.cells != UNKNOWN))

    def coverage(self) -> float:
        """Agreement over the reachable reference region (see glossary)."""
        mask = self.reference_mask
        total = int(mask.sum())
        matches = int(np.count_nonzero((self.belief.cells == self.world.cells) & mask))
        return matches / total if total else 1.0


def _reachable_reference(world: WorldMap, start: CellIndex) -> np.ndarray:
    """Everything a complete exploration could map: the start's free
    component plus the occupied cells 8-adjacent to it."""
    comp = free_component(world.cells, start, Connectivity.EIGHT)
    h, w = comp.shape
    near = np.zeros((h, w), dtype=bool)
    for dr, dc in Connectivity.EIGHT.offsets:
        src_r = slice(max(0, -dr), h - max(0, dr))
        src_c = slice(max(0, -dc), w - max(0, dc))
        dst_r = slice(max(0, dr), h + min(0, dr))
        dst_c = slice(max(0, dc), w + min(0, dc))
        near[dst_r, dst_c] |= comp[src_r, src_c]
    return comp | (near & (world.cells == OCCUPIED))


def start_exploration(world: WorldMap, start: Pose, config: ExplorerConfig) -> ExplorationState:
    """Initialize the loop state and perform the initial 360-degree sense."""
    r, c = start.cell
    if not (0 <= r < world.height and 0 <= c < world.width):
        raise IndexError(f"start {start.cell!r} out of bounds")
    if world.cells[r, c] != FREE:
        raise ValueError(f"start {start.cell!r} is not free in the world")
    belief = OccupancyGrid.unknown(world.height, world.width)
    state = ExplorationState(
        world=world,
        belief=belief,
        pose=start,
        config=config,
        reference_mask=_reachable_reference(world, start.cell),
    )
    state.trace.initial_revealed = sense(world, start, config.sensor, belief)
    return state


def _build_costmap(state: ExplorationState):
    costmap = inflate(state.belief, state.config.inflation_radius)
    # The robot demonstrably occupies its own cell; without this exception a
    # pose next to a sensed wall could never satisfy the planner's
    # start-traversable precondition.
    costmap.traversable[state.pose.cell] = True
    return costmap


def _valid_blacklist(state: ExplorationState) -> dict:
    """Prune entries invalidated by map growth since they were recorded."""
    known = state.cells_known()
    state.blacklist = {m: k for m, k in state.blacklist.items() if k == known}
    return state.blacklist


def step(state: ExplorationState) -> StepResult:
    """One loop iteration; appends its record to the trace.

    Returns MOVED_TO after driving to a goal, RECOVERY_TRIGGERED when every
    eligible frontier failed planning (all were blacklisted), or COMPLETE
    when no selectable frontier remains.
    """
    cfg = state.config
    state.trace.iterations += 1
    iteration = state.trace.iterations

    revealed = sense(state.world, state.pose, cfg.sensor, state.belief)
    frontiers, stats = detect(state.belief, state.pose, cfg.detector, cfg.frontier_connectivity)

    blacklist = _valid_blacklist(state)
    eligible = [f for f in frontiers if f.median not in blacklist]

    result = None
    if not eligible:
        result = StepResult(
            event=Event.COMPLETE,
            newly_revealed=revealed,
            frontiers_found=len(frontiers),
            detector_stats=stats,
        )
    else:
        costmap = _build_costmap(state)
        known_now = state.cells_known()
        failed = []
        for frontier in rank_frontiers(eligible, state.pose):
            # Goal candidates use the frontier connectivity: a frontier point
            # has a FREE neighbor under that adjacency by definition, so a
            # bordering frontier always yields at least one candidate.
            goal = goal_for_frontier(
                costmap,
                state.belief,
                frontier,
                state.pose,
                cfg.frontier_connectivity,
                cfg.planner,
                plan_conn=cfg.planning_connectivity,
            )
            path = None
            if goal is not None:
                path = plan(costmap, state.pose.cell, goal, cfg.planning_connectivity, cfg.planner)
                if path is None:
                    raise RuntimeError(
                        f"goal_for_frontier returned unplannable goal {goal!r}"
                    )
            if path is None:
                failed.append(frontier.median)
                continue
            # Execute: traverse cell by cell, sensing en route if configured,
            # then the 360-degree sweep at the goal.
            for cell in path.cells[1:]:
                state.pose = Pose(cell)
                if cfg.sense_while_moving:
                    revealed += sense(state.world, state.pose, cfg.sensor, state.belief)
            revealed += sense(state.world, state.pose, cfg.sensor, state.belief)
            state.trace.distance_traveled += path.length
            result = StepResult(
                event=Event.MOVED_TO,
                goal=goal,
                path_cost=path.length,
                newly_revealed=revealed,
                frontiers_found=len(frontiers),
                blacklisted=tuple(failed),
                detector_stats=stats,
            )
            break
        for median in failed:
            state.blacklist[median] = known_now
        if result is None:
            state.recovery_pending = True
            result = StepResult(
                event=Event.RECOVERY_TRIGGERED,
                newly_revealed=revealed,
                frontiers_found=len(frontiers),
                blacklisted=tuple(failed),
                detector_stats=stats,
            )

    state.trace.records.append(
        IterationRecord(
            iteration=iteration,
            event=result.event.value,
            frontiers_found=result.frontiers_found,
            goal=result.goal,
            path_cost=result.path_cost,
            newly_revealed=result.newly_revealed,
            detector_cells_visited=stats.cells_visited,
            detector_seconds=stats.wall_time,
            cells_known=state.cells_known(),
            coverage=state.coverage(),
            distance_traveled=state.trace.distance_traveled,
        )
    )
    return result


def recovery(state: ExplorationState) -> int:
    """The 360-degree rotation analog after an all-frontiers-failed step.

    Re-senses at the current pose and clears the pending-failure flag;
    returns the newly revealed cell count (zero with a deterministic sensor
    at an unchanged pose, in which case the loop proceeds toward COMPLETE
    because the blacklist entries stay valid).
    """
    if not state.recovery_pending or not state.blacklist:
        raise ValueError("recovery invoked without a preceding all-frontiers failure")
    state.recovery_pending = False
    return sense(state.world, state.pose, state.config.sensor, state.belief)


def run(world: WorldMap, start: Pose, config: Optional[ExplorerConfig] = None):
    """Explore until no frontiers remain or max_iterations is hit.

    Returns (belief, trace); trace.termination is 'complete' or
    'max_iterations'.
    """
    if config is None:
        config = ExplorerConfig()
    t0 = time.perf_counter()
    state = start_exploration(world, start, config)
    for _ in range(config.max_iterations):
        result = step(state)
        _maybe_snapshot(state)
        if result.event is Event.COMPLETE:
            state.trace.termination = "complete"
            break
        if result.event is Event.RECOVERY_TRIGGERED:
            recovery(state)
    else:
        state.trace.termination = "max_iterations"
    state.trace.wall_time = time.perf_counter() - t0
    return state.belief, state.trace


def _maybe_snapshot(state: ExplorationState) -> None:
    cfg = state.config
    if cfg.snapshot_every is None or cfg.snapshot_dir is None:
        return
    if state.trace.iterations % cfg.snapshot_every != 0:
        return
    out = FsPath(cfg.snapshot_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_pgm(state.belief, out / f"snapshot_{state.trace.iterations:04d}.pgm")

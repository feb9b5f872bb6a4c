"""Occupancy-grid data model: cell states, neighborhoods, and map file I/O.

Grids are dense row-major numpy arrays of uint8 cell states. Row 0 is the
top of the map; (row, col) indexing throughout.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path as _FsPath
from typing import BinaryIO, Union

import numpy as np

# A cell index is (row, col).
CellIndex = tuple[int, int]


class CellState(enum.IntEnum):
    """Tri-state cell knowledge: unexplored, known empty, known obstacle."""

    UNKNOWN = 0
    FREE = 1
    OCCUPIED = 2


UNKNOWN = int(CellState.UNKNOWN)
FREE = int(CellState.FREE)
OCCUPIED = int(CellState.OCCUPIED)


class Connectivity(enum.Enum):
    """Grid adjacency: 4-neighborhood (von Neumann) or 8-neighborhood (Moore)."""

    FOUR = 4
    EIGHT = 8

    @property
    def offsets(self) -> tuple[tuple[int, int], ...]:
        """Neighbor offsets in row-major scan order."""
        return _OFFSETS[self]


_OFFSETS = {
    Connectivity.FOUR: ((-1, 0), (0, -1), (0, 1), (1, 0)),
    Connectivity.EIGHT: (
        (-1, -1), (-1, 0), (-1, 1),
        (0, -1), (0, 1),
        (1, -1), (1, 0), (1, 1),
    ),
}

# PGM pixel values for the three states, matching the usual occupancy-map
# image convention so exports open correctly in standard viewers.
PGM_OCCUPIED = 0
PGM_UNKNOWN = 205
PGM_FREE = 254

_STATE_TO_PGM = np.array([PGM_UNKNOWN, PGM_FREE, PGM_OCCUPIED], dtype=np.uint8)


def _as_state_array(cells) -> np.ndarray:
    arr = np.ascontiguousarray(cells, dtype=np.uint8)
    if arr.ndim != 2:
        raise ValueError(f"cell array must be 2-D, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("cell array must be non-empty")
    return arr


@dataclass
class OccupancyGrid:
    """The robot's belief map: a (height, width) array of CellState values."""

    cells: np.ndarray
    resolution: float = 1.0  # meters per cell; metadata only

    def __post_init__(self):
        self.cells = _as_state_array(self.cells)
        if not self.resolution > 0:
            raise ValueError(f"resolution must be positive, got {self.resolution}")

    @property
    def height(self) -> int:
        return self.cells.shape[0]

    @property
    def width(self) -> int:
        return self.cells.shape[1]

    @classmethod
    def unknown(cls, height: int, width: int, resolution: float = 1.0) -> "OccupancyGrid":
        """A fully unexplored grid of the given size."""
        return cls(np.zeros((height, width), dtype=np.uint8), resolution)

    def copy(self) -> "OccupancyGrid":
        return OccupancyGrid(self.cells.copy(), self.resolution)


@dataclass
class WorldMap:
    """Immutable ground truth: every cell is FREE or OCCUPIED, never UNKNOWN."""

    cells: np.ndarray

    def __post_init__(self):
        self.cells = _as_state_array(self.cells)
        if np.any(self.cells == UNKNOWN):
            raise ValueError("ground-truth world may not contain UNKNOWN cells")

    @property
    def height(self) -> int:
        return self.cells.shape[0]

    @property
    def width(self) -> int:
        return self.cells.shape[1]


@dataclass(frozen=True)
class Pose:
    """The robot's current grid cell."""

    cell: CellIndex


def _check_bounds(height: int, width: int, idx) -> None:
    r, c = idx
    if not (0 <= r < height and 0 <= c < width):
        raise IndexError(f"cell {idx!r} out of bounds for {height}x{width} grid")


def neighbors(grid, idx, conn: Connectivity = Connectivity.EIGHT) -> list:
    """In-bounds cells adjacent to ``idx``, in row-major scan order."""
    h, w = grid.height, grid.width
    _check_bounds(h, w, idx)
    r, c = idx
    out = []
    for dr, dc in conn.offsets:
        nr, nc = r + dr, c + dc
        if 0 <= nr < h and 0 <= nc < w:
            out.append((nr, nc))
    return out


def is_frontier_point(grid: OccupancyGrid, idx, conn: Connectivity = Connectivity.EIGHT) -> bool:
    """True iff the cell is UNKNOWN and has at least one FREE neighbor."""
    h, w = grid.height, grid.width
    _check_bounds(h, w, idx)
    cells = grid.cells
    r, c = idx
    if cells[r, c] != UNKNOWN:
        return False
    for dr, dc in conn.offsets:
        nr, nc = r + dr, c + dc
        if 0 <= nr < h and 0 <= nc < w and cells[nr, nc] == FREE:
            return True
    return False


def free_component(cells: np.ndarray, seed, conn: Connectivity = Connectivity.EIGHT) -> np.ndarray:
    """Boolean mask of the FREE-connected component containing ``seed``.

    Returns an all-False mask when the seed cell is not FREE.
    """
    from collections import deque

    h, w = cells.shape
    _check_bounds(h, w, seed)
    mask = np.zeros((h, w), dtype=bool)
    if cells[seed] != FREE:
        return mask
    offsets = conn.offsets
    queue = deque([seed])
    mask[seed] = True
    while queue:
        r, c = queue.popleft()
        for dr, dc in offsets:
            nr, nc = r + dr, c + dc
            if 0 <= nr < h and 0 <= nc < w and not mask[nr, nc] and cells[nr, nc] == FREE:
                mask[nr, nc] = True
                queue.append((nr, nc))
    return mask


class WorldParseError(ValueError):
    """Raised for malformed ASCII world text; carries 1-based line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_WORLD_CHARS = {"#": OCCUPIED, ".": FREE, "R": FREE}


def load_ascii_world(text: str):
    """Parse an ASCII world: '#' occupied, '.' free, 'R' free + robot start.

    Returns (WorldMap, Pose). The block must be rectangular and contain
    exactly one 'R'.
    """
    lines = text.splitlines()
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise WorldParseError("empty world", 1, 1)
    width = len(lines[0])
    rows = []
    start = None
    for i, line in enumerate(lines):
        if len(line) != width or width == 0:
            raise WorldParseError(
                f"ragged row: expected {width} characters, got {len(line)}", i + 1, len(line) + 1
            )
        row = np.empty(width, dtype=np.uint8)
        for j, ch in enumerate(line):
            state = _WORLD_CHARS.get(ch)
            if state is None:
                raise WorldParseError(f"illegal character {ch!r}", i + 1, j + 1)
            row[j] = state
            if ch == "R":
                if start is not None:
                    raise WorldParseError("duplicate robot start marker 'R'", i + 1, j + 1)
                start = (i, j)
        rows.append(row)
    if start is None:
        raise WorldParseError("missing robot start marker 'R'", len(lines), 1)
    return WorldMap(np.vstack(rows)), Pose(start)


def world_to_ascii(world: WorldMap, start) -> str:
    """Inverse of load_ascii_world; ``start`` must be a FREE cell."""
    _check_bounds(world.height, world.width, start)
    if world.cells[start] != FREE:
        raise ValueError(f"start cell {start!r} is not free")
    chars = np.where(world.cells == OCCUPIED, "#", ".").astype(object)
    chars[start] = "R"
    return "\n".join("".join(row) for row in chars) + "\n"


def save_pgm(grid: OccupancyGrid, destination: Union[str, "_FsPath", BinaryIO]) -> int:
    """Write the grid as a binary P5 PGM; returns the number of bytes written.

    Pixels: OCCUPIED -> 0, FREE -> 254, UNKNOWN -> 205. Grid row 0 is the
    top image row.
    """
    header = f"P5\n{grid.width} {grid.height}\n255\n".encode("ascii")
    payload = _STATE_TO_PGM[grid.cells].tobytes()
    data = header + payload
    if hasattr(destination, "write"):
        destination.write(data)
    else:
        with open(destination, "wb") as fh:
            fh.write(data)
    return len(data)


def map_agreement(belief: OccupancyGrid, truth: WorldMap) -> float:
    """Fraction of ground-truth cells whose belief state matches exactly.

    UNKNOWN belief cells always count as mismatches; 1.0 means a perfect map.
    """
    if belief.cells.shape != truth.cells.shape:
        raise ValueError(
            f"shape mismatch: belief {belief.cells.shape} vs truth {truth.cells.shape}"
        )
    matches = int(np.count_nonzero(belief.cells == truth.cells))
    return matches / truth.cells.size

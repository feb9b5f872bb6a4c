import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import frontier_explorer as fx
from frontier_explorer.grid import FREE, OCCUPIED, UNKNOWN

# Chord-length cutoff matching the walker's corner tolerance: a cell the ray
# crosses for <= EPS distance counts as a corner touch, not a traversal.
EPS = 1e-12


def raster_oracle(h, w, origin, angle, max_range):
    """Independent rasterization: clip the ray segment against every cell
    rectangle (Liang-Barsky) and keep cells with positive chord length,
    ordered by entry distance. No stepping logic shared with cast_ray.
    """
    r0, c0 = origin
    oy, ox = r0 + 0.5, c0 + 0.5
    dy, dx = math.sin(angle), math.cos(angle)
    out = []
    for r in range(h):
        for c in range(w):
            t0, t1 = 0.0, max_range
            ok = True
            for p, q in ((-dx, ox - c), (dx, c + 1 - ox), (-dy, oy - r), (dy, r + 1 - oy)):
                if p == 0.0:
                    if q < 0:
                        ok = False
                        break
                    continue
                t = q / p
                if p < 0:
                    t0 = max(t0, t)
                else:
                    t1 = min(t1, t)
            if not ok or t1 - t0 <= EPS:
                continue
            out.append((t0, (r, c)))
    out.sort()
    return [cell for _, cell in out]


def walk_full_ray(world, origin, angle, max_range):
    """cast_ray's visited cells ignoring occupancy (world all free here)."""
    traversed, hit = fx.cast_ray(world, origin, angle, max_range)
    assert hit is None
    return traversed


class TestCastRay:
    def test_axis_ray_unobstructed(self):
        world = fx.WorldMap(np.full((10, 10), FREE, dtype=np.uint8))
        traversed, hit = fx.cast_ray(world, (5, 5), 0.0, 3)
        assert traversed == [(5, 5), (5, 6), (5, 7), (5, 8)]
        assert hit is None

    def test_first_obstacle_terminates(self):
        cells = np.full((10, 10), FREE, dtype=np.uint8)
        cells[5, 7] = OCCUPIED
        world = fx.WorldMap(cells)
        traversed, hit = fx.cast_ray(world, (5, 5), 0.0, 3)
        assert traversed == [(5, 5), (5, 6)]
        assert hit == (5, 7)

    def test_diagonal_ray_matches_oracle(self):
        world = fx.WorldMap(np.full((12, 12), FREE, dtype=np.uint8))
        angle = math.pi / 4
        got = walk_full_ray(world, (2, 2), angle, 6.0)
        assert got == raster_oracle(12, 12, (2, 2), angle, 6.0)
        # 45 degrees steps the diagonal staircase
        assert got == [(2, 2), (3, 3), (4, 4), (5, 5), (6, 6)]

    def test_each_degree_matches_oracle(self):
        world = fx.WorldMap(np.full((15, 15), FREE, dtype=np.uint8))
        for k in range(0, 360, 7):
            angle = 2.0 * math.pi * k / 360
            got = walk_full_ray(world, (7, 7), angle, 6.5)
            assert got == raster_oracle(15, 15, (7, 7), angle, 6.5), f"angle {k} deg"

    @settings(max_examples=120, deadline=None)
    @given(
        angle=st.floats(0.0, 2.0 * math.pi, allow_nan=False, exclude_max=True),
        r0=st.integers(0, 8),
        c0=st.integers(0, 8),
        max_range=st.floats(1.0, 9.0),
    )
    def test_random_rays_match_oracle(self, angle, r0, c0, max_range):
        world = fx.WorldMap(np.full((9, 9), FREE, dtype=np.uint8))
        got = walk_full_ray(world, (r0, c0), angle, max_range)
        assert got == raster_oracle(9, 9, (r0, c0), angle, max_range)

    def test_cells_in_strictly_increasing_distance(self, rng):
        world = fx.WorldMap(np.full((11, 11), FREE, dtype=np.uint8))
        for _ in range(50):
            angle = float(rng.uniform(0, 2 * math.pi))
            cells = walk_full_ray(world, (5, 5), angle, 5.0)
            dists = [math.hypot(r - 5, c - 5) for r, c in cells]
            # entry order approximates center distance; the first cell is the
            # origin and consecutive cells never repeat
            assert cells[0] == (5, 5)
            assert len(set(cells)) == len(cells)
            assert all(d <= 5.0 * math.sqrt(2) for d in dists)

    def test_origin_must_be_free(self):
        cells = np.full((4, 4), FREE, dtype=np.uint8)
        cells[1, 1] = OCCUPIED
        with pytest.raises(ValueError):
            fx.cast_ray(fx.WorldMap(cells), (1, 1), 0.0, 2)

    def test_origin_out_of_bounds(self):
        world = fx.WorldMap(np.full((4, 4), FREE, dtype=np.uint8))
        with pytest.raises(IndexError):
            fx.cast_ray(world, (4, 0), 0.0, 2)


def sealed_square_world():
    """5x5 world: wall ring, 3x3 free interior."""
    cells = np.full((5, 5), OCCUPIED, dtype=np.uint8)
    cells[1:4, 1:4] = FREE
    return fx.WorldMap(cells)


class TestSense:
    def test_sealed_room_fully_enumerated(self):
        world = sealed_square_world()
        belief = fx.OccupancyGrid.unknown(5, 5)
        revealed = fx.sense(world, fx.Pose((2, 2)), fx.SensorConfig(4, 360), belief)
        assert revealed == 25
        assert np.array_equal(belief.cells, world.cells)

    def test_walls_occlude_everything_behind(self):
        # same room embedded in a larger world: outside stays unknown
        cells = np.full((9, 9), FREE, dtype=np.uint8)
        cells[2:7, 2:7] = OCCUPIED
        cells[3:6, 3:6] = FREE
        world = fx.WorldMap(cells)
        belief = fx.OccupancyGrid.unknown(9, 9)
        fx.sense(world, fx.Pose((4, 4)), fx.SensorConfig(10, 360), belief)
        inside = np.zeros((9, 9), dtype=bool)
        inside[2:7, 2:7] = True
        assert np.all(belief.cells[~inside] == UNKNOWN)
        assert np.array_equal(belief.cells[inside], world.cells[inside])

    def test_resensing_reveals_nothing(self):
        world = sealed_square_world()
        belief = fx.OccupancyGrid.unknown(5, 5)
        cfg = fx.SensorConfig(4, 360)
        fx.sense(world, fx.Pose((2, 2)), cfg, belief)
        snapshot = belief.cells.copy()
        assert fx.sense(world, fx.Pose((2, 2)), cfg, belief) == 0
        assert np.array_equal(belief.cells, snapshot)

    def test_belief_already_full_unchanged(self):
        world = sealed_square_world()
        belief = fx.OccupancyGrid(world.cells.copy())
        assert fx.sense(world, fx.Pose((2, 2)), fx.SensorConfig(4, 360), belief) == 0

    def test_monotone_knowledge_and_soundness(self, rng):
        world, start = fx.generate_world(24, 24, 0.25, 99)
        belief = fx.OccupancyGrid.unknown(24, 24)
        cfg = fx.SensorConfig(6, 90)
        unknown_before = belief.cells == UNKNOWN
        for _ in range(6):
            free = np.argwhere((belief.cells == FREE))
            pose = start if len(free) == 0 else fx.Pose(tuple(free[rng.integers(len(free))]))
            fx.sense(world, pose, cfg, belief)
            unknown_now = belief.cells == UNKNOWN
            assert np.all(unknown_now <= unknown_before)  # subset
            unknown_before = unknown_now
            known = belief.cells != UNKNOWN
            assert np.array_equal(belief.cells[known], world.cells[known])

    def test_revealed_count_matches_state_change(self, rng):
        world, start = fx.generate_world(20, 20, 0.2, 5)
        belief = fx.OccupancyGrid.unknown(20, 20)
        before = int(np.count_nonzero(belief.cells != UNKNOWN))
        n = fx.sense(world, start, fx.SensorConfig(8, 180), belief)
        after = int(np.count_nonzero(belief.cells != UNKNOWN))
        assert n == after - before

    def test_shape_mismatch(self):
        world = sealed_square_world()
        with pytest.raises(ValueError):
            fx.sense(world, fx.Pose((2, 2)), fx.SensorConfig(), fx.OccupancyGrid.unknown(4, 4))


class TestSensorConfig:
    def test_range_lower_bound(self):
        with pytest.raises(ValueError):
            fx.SensorConfig(max_range=0.5)

    def test_ray_count_lower_bound(self):
        with pytest.raises(ValueError):
            fx.SensorConfig(ray_count=3)

import numpy as np
import pytest

import frontier_explorer as fx


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def make_grid(rows):
    """Build an OccupancyGrid from strings: '?' unknown, '.' free, '#' occupied."""
    lookup = {"?": 0, ".": 1, "#": 2}
    cells = np.array([[lookup[ch] for ch in row] for row in rows], dtype=np.uint8)
    return fx.OccupancyGrid(cells)


def sensed_belief(world, pose, rng, extra=0, max_range=10.0, rays=360):
    """Partially explored belief built purely by sensing (see worldgen)."""
    return fx.explored_snapshot(
        world, pose, fx.SensorConfig(max_range=max_range, ray_count=rays), rng, extra_senses=extra
    )


def random_partial_state(rng, size_lo=16, size_hi=64, density_hi=0.35):
    """A random world plus a sensed partial belief and the sensing pose."""
    h = int(rng.integers(size_lo, size_hi + 1))
    w = int(rng.integers(size_lo, size_hi + 1))
    density = float(rng.uniform(0.0, density_hi))
    seed = int(rng.integers(0, 2**31))
    world, start = fx.generate_world(w, h, density, seed)
    belief = sensed_belief(world, start, rng, extra=int(rng.integers(0, 4)))
    return world, belief, start

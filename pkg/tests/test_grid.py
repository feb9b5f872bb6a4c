import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import frontier_explorer as fx
from frontier_explorer.grid import FREE, OCCUPIED, UNKNOWN

from conftest import make_grid


class TestNeighbors:
    def test_interior_eight(self):
        g = fx.OccupancyGrid.unknown(3, 3)
        got = fx.neighbors(g, (1, 1), fx.Connectivity.EIGHT)
        assert got == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1), (2, 2)]

    def test_corner_four(self):
        g = fx.OccupancyGrid.unknown(3, 3)
        assert fx.neighbors(g, (0, 0), fx.Connectivity.FOUR) == [(0, 1), (1, 0)]

    def test_corner_eight(self):
        g = fx.OccupancyGrid.unknown(3, 3)
        assert fx.neighbors(g, (0, 0), fx.Connectivity.EIGHT) == [(0, 1), (1, 0), (1, 1)]

    def test_out_of_bounds(self):
        g = fx.OccupancyGrid.unknown(3, 3)
        with pytest.raises(IndexError):
            fx.neighbors(g, (3, 0))

    def test_no_duplicates_never_self(self):
        g = fx.OccupancyGrid.unknown(4, 5)
        for r in range(4):
            for c in range(5):
                for conn in fx.Connectivity:
                    got = fx.neighbors(g, (r, c), conn)
                    assert len(got) == len(set(got))
                    assert (r, c) not in got

    @given(h=st.integers(2, 9), w=st.integers(2, 9))
    def test_counts_by_position(self, h, w):
        # corner/edge/interior cells have 2/3/4 (FOUR) or 3/5/8 (EIGHT) neighbors
        g = fx.OccupancyGrid.unknown(h, w)
        for r in range(h):
            for c in range(w):
                on_edge = (r in (0, h - 1)) + (c in (0, w - 1))
                n4 = len(fx.neighbors(g, (r, c), fx.Connectivity.FOUR))
                n8 = len(fx.neighbors(g, (r, c), fx.Connectivity.EIGHT))
                assert n4 == {0: 4, 1: 3, 2: 2}[on_edge]
                assert n8 == {0: 8, 1: 5, 2: 3}[on_edge]


class TestIsFrontierPoint:
    def test_unknown_next_to_free(self):
        g = make_grid(["???", "?.?", "???"])
        assert fx.is_frontier_point(g, (0, 1), fx.Connectivity.EIGHT)

    def test_fully_known_grid_has_none(self):
        g = make_grid(["..#", "#..", "..."])
        for r in range(3):
            for c in range(3):
                assert not fx.is_frontier_point(g, (r, c))

    def test_unknown_without_open_neighbor(self):
        g = make_grid(["??#", "?##", "???"])
        assert not fx.is_frontier_point(g, (0, 0), fx.Connectivity.EIGHT)

    def test_never_true_on_known_cells(self, rng):
        cells = rng.choice([0, 1, 2], size=(12, 12)).astype(np.uint8)
        g = fx.OccupancyGrid(cells)
        for r in range(12):
            for c in range(12):
                if cells[r, c] != UNKNOWN:
                    assert not fx.is_frontier_point(g, (r, c))

    def test_border_cells_can_be_frontier(self):
        g = make_grid(["?.", ".."])
        assert fx.is_frontier_point(g, (0, 0), fx.Connectivity.FOUR)


class TestLoadAsciiWorld:
    def test_two_free_cells(self):
        world, pose = fx.load_ascii_world("R.")
        assert world.cells.tolist() == [[FREE, FREE]]
        assert pose.cell == (0, 0)

    def test_start_next_to_wall(self):
        world, pose = fx.load_ascii_world("R#")
        assert world.cells.tolist() == [[FREE, OCCUPIED]]
        assert pose.cell == (0, 0)

    def test_duplicate_start(self):
        with pytest.raises(fx.WorldParseError) as err:
            fx.load_ascii_world("RR")
        assert err.value.line == 1 and err.value.column == 2

    def test_missing_start(self):
        with pytest.raises(fx.WorldParseError):
            fx.load_ascii_world("..\n..")

    def test_ragged_rows(self):
        with pytest.raises(fx.WorldParseError) as err:
            fx.load_ascii_world("R..\n..")
        assert err.value.line == 2

    def test_illegal_character(self):
        with pytest.raises(fx.WorldParseError) as err:
            fx.load_ascii_world("R.\n.x")
        assert err.value.line == 2 and err.value.column == 2

    def test_roundtrip_through_writer(self, rng):
        cells = np.where(rng.random((7, 9)) < 0.3, OCCUPIED, FREE).astype(np.uint8)
        cells[3, 4] = FREE
        world = fx.WorldMap(cells)
        text = fx.world_to_ascii(world, (3, 4))
        world2, pose2 = fx.load_ascii_world(text)
        assert np.array_equal(world.cells, world2.cells)
        assert pose2.cell == (3, 4)


class TestSavePgm:
    def test_single_unknown_pixel(self):
        buf = io.BytesIO()
        n = fx.save_pgm(fx.OccupancyGrid.unknown(1, 1), buf)
        data = buf.getvalue()
        assert data == b"P5\n1 1\n255\n\xcd"  # 0xcd == 205
        assert n == len(data)

    def test_free_and_occupied_pixels(self):
        g = fx.OccupancyGrid(np.array([[FREE, OCCUPIED]], dtype=np.uint8))
        buf = io.BytesIO()
        fx.save_pgm(g, buf)
        assert buf.getvalue().endswith(bytes([254, 0]))

    def test_roundtrip_with_independent_decoder(self, rng, tmp_path):
        # decode with Pillow, an implementation this package does not share
        from PIL import Image

        cells = rng.choice([0, 1, 2], size=(9, 13)).astype(np.uint8)
        g = fx.OccupancyGrid(cells)
        path = tmp_path / "map.pgm"
        written = fx.save_pgm(g, path)
        assert written == path.stat().st_size
        img = np.asarray(Image.open(path))
        assert img.shape == (9, 13)
        back = np.full_like(cells, 255)
        back[img == 205] = UNKNOWN
        back[img == 254] = FREE
        back[img == 0] = OCCUPIED
        assert np.array_equal(back, cells)

    @settings(max_examples=30)
    @given(seed=st.integers(0, 2**32 - 1), h=st.integers(1, 16), w=st.integers(1, 16))
    def test_encoding_bijective_on_random_grids(self, seed, h, w, tmp_path_factory):
        from PIL import Image

        cells = np.random.default_rng(seed).choice([0, 1, 2], size=(h, w)).astype(np.uint8)
        buf = io.BytesIO()
        fx.save_pgm(fx.OccupancyGrid(cells), buf)
        buf.seek(0)
        img = np.asarray(Image.open(buf))
        decode = {205: UNKNOWN, 254: FREE, 0: OCCUPIED}
        back = np.vectorize(decode.get)(img).astype(np.uint8)
        assert np.array_equal(back, cells.reshape(img.shape))

    def test_unwritable_destination(self, tmp_path):
        with pytest.raises(OSError):
            fx.save_pgm(fx.OccupancyGrid.unknown(2, 2), tmp_path / "missing" / "map.pgm")


class TestMapAgreement:
    def test_all_unknown_scores_zero(self):
        truth = fx.WorldMap(np.full((3, 3), FREE, dtype=np.uint8))
        assert fx.map_agreement(fx.OccupancyGrid.unknown(3, 3), truth) == 0.0

    def test_identity_scores_one(self, rng):
        cells = np.where(rng.random((6, 6)) < 0.4, OCCUPIED, FREE).astype(np.uint8)
        truth = fx.WorldMap(cells)
        assert fx.map_agreement(fx.OccupancyGrid(cells.copy()), truth) == 1.0

    def test_half_match(self):
        truth = fx.WorldMap(np.array([[FREE, OCCUPIED]], dtype=np.uint8))
        belief = fx.OccupancyGrid(np.array([[FREE, UNKNOWN]], dtype=np.uint8))
        assert fx.map_agreement(belief, truth) == 0.5

    def test_dimension_mismatch(self):
        truth = fx.WorldMap(np.full((2, 2), FREE, dtype=np.uint8))
        with pytest.raises(ValueError):
            fx.map_agreement(fx.OccupancyGrid.unknown(2, 3), truth)


class TestFreeComponent:
    def test_matches_scipy_labeling(self, rng):
        from scipy import ndimage

        for _ in range(25):
            cells = rng.choice([1, 2], size=(20, 20), p=[0.6, 0.4]).astype(np.uint8)
            free = cells == FREE
            seeds = np.argwhere(free)
            if len(seeds) == 0:
                continue
            seed = tuple(seeds[rng.integers(len(seeds))])
            for conn, structure in (
                (fx.Connectivity.FOUR, ndimage.generate_binary_structure(2, 1)),
                (fx.Connectivity.EIGHT, np.ones((3, 3), dtype=bool)),
            ):
                mask = fx.free_component(cells, seed, conn)
                labels, _ = ndimage.label(free, structure=structure)
                assert np.array_equal(mask, labels == labels[seed])

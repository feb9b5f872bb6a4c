"""Command-line front end: run explorations, benchmark detectors, generate worlds.

Exit codes: 0 success/complete, 1 I/O or runtime error, 2 usage error,
3 exploration truncated by --max-iters, 4 detector disagreement in bench.
"""
from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
from pathlib import Path

import numpy as np

from . import backend
from .explore import ExplorerConfig, run
from .frontiers import DetectorKind, naive_detect, wfd
from .grid import (
    Connectivity,
    Pose,
    load_ascii_world,
    save_pgm,
    world_to_ascii,
)
from .planning import PlanAlgorithm
from .world import SensorConfig
from .worldgen import explored_snapshot, generate_world

METRICS_HEADER = [
    "iteration",
    "frontiers_found",
    "cells_known",
    "coverage_pct",
    "distance_traveled",
    "detector_cells_visited",
    "detector_time_us",
]

BENCH_HEADER = [
    "grid_size",
    "known_fraction",
    "wfd_cells_visited",
    "naive_cells_visited",
    "wfd_time_us",
    "naive_time_us",
]


def _parse_gen(spec: str):
    """Parse a WxH:DENSITY:SEED generation spec, e.g. 64x64:0.3:42."""
    try:
        size, density, seed = spec.split(":")
        width, height = size.lower().split("x")
        return int(width), int(height), float(density), int(seed)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"bad generation spec {spec!r}; expected WxH:DENSITY:SEED"
        )


def _add_common(parser, bench=False):
    parser.add_argument("--world", type=Path, help="ASCII world file to load")
    parser.add_argument("--gen", type=_parse_gen, metavar="WxH:DENSITY:SEED",
                        help="generate a random world instead of loading one")
    parser.add_argument("--range", dest="sensor_range", type=float, default=10.0,
                        help="sensor range in cells (default 10)")
    parser.add_argument("--rays", type=int, default=360,
                        help="rays per 360-degree sweep (default 360)")
    parser.add_argument("--inflate", type=float, default=1.0,
                        help="obstacle inflation radius in cells (default 1)")
    parser.add_argument("--conn", type=int, choices=(4, 8), default=None,
                        help="connectivity for detection and planning "
                             "(default: 8 for frontiers, 4 for planning)")
    parser.add_argument("--out", type=Path, default=None, help="output directory")
    parser.add_argument("--metrics", type=Path, default=None, help="metrics CSV path")
    parser.add_argument("--backend", choices=("auto", "python", "compiled"), default="auto",
                        help="kernel backend (default: compiled when built)")
    if not bench:
        parser.add_argument("--detector", choices=("wfd", "naive"), default="wfd")
        parser.add_argument("--max-iters", type=int, default=1000)
        parser.add_argument("--snapshot-every", type=int, default=None)


def _load_world(args, parser):
    if (args.world is None) == (args.gen is None):
        parser.error("exactly one of --world and --gen is required")
    if args.world is not None:
        try:
            text = args.world.read_text()
        except OSError as exc:
            print(f"error: cannot read world file {args.world}: {exc}", file=sys.stderr)
            raise SystemExit(1)
        return load_ascii_world(text)
    width, height, density, seed = args.gen
    return generate_world(width, height, density, seed)


def _make_config(args) -> ExplorerConfig:
    cfg = ExplorerConfig(
        detector=DetectorKind(args.detector),
        sensor=SensorConfig(max_range=args.sensor_range, ray_count=args.rays),
        inflation_radius=args.inflate,
        max_iterations=args.max_iters,
        snapshot_every=args.snapshot_every,
    )
    if args.conn is not None:
        conn = Connectivity(args.conn)
        cfg.frontier_connectivity = conn
        cfg.planning_connectivity = conn
    return cfg


def write_metrics_csv(trace, path: Path) -> None:
    """One row per iteration; header matches METRICS_HEADER exactly."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(METRICS_HEADER)
        for rec in trace.records:
            writer.writerow([
                rec.iteration,
                rec.frontiers_found,
                rec.cells_known,
                rec.coverage * 100.0,
                rec.distance_traveled,
                rec.detector_cells_visited,
                rec.detector_seconds * 1e6,
            ])


def cmd_explore(args, parser) -> int:
    backend.force(args.backend)
    try:
        world, start = _load_world(args, parser)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out_dir = args.out or Path("frontier_run")
    out_dir.mkdir(parents=True, exist_ok=True)
    cfg = _make_config(args)
    if cfg.snapshot_every is not None:
        cfg.snapshot_dir = str(out_dir)
    try:
        belief, trace = run(world, start, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    save_pgm(belief, out_dir / "map.pgm")
    write_metrics_csv(trace, args.metrics or out_dir / "metrics.csv")
    coverage = trace.records[-1].coverage if trace.records else 0.0
    print(
        f"{trace.termination}: coverage {coverage * 100.0:.2f}% "
        f"distance {trace.distance_traveled:.2f} iterations {trace.iterations}"
    )
    return 0 if trace.termination == "complete" else 3


def _frontier_sets(frontier_list):
    return {frozenset(f.cells) for f in frontier_list}


def _reachable_frontier_sets(naive_frontiers, belief, start, conn):
    """Naive partition restricted to frontiers touching the cells adjacent to
    the pose's open-space component."""
    from .grid import free_component

    component = free_component(belief.cells, start, conn)
    h, w = component.shape
    offsets = conn.offsets
    kept = set()
    for f in naive_frontiers:
        touches = False
        for (r, c) in f.cells:
            for dr, dc in offsets:
                nr, nc = r + dr, c + dc
                if 0 <= nr < h and 0 <= nc < w and component[nr, nc]:
                    touches = True
                    break
            if touches:
                break
        if touches:
            kept.add(frozenset(f.cells))
    return kept


def cmd_bench(args, parser) -> int:
    backend.force(args.backend)
    if args.gen is None:
        parser.error("bench requires --gen WxH:DENSITY:SEED")
    width, height, density, seed = args.gen
    conn = Connectivity(args.conn) if args.conn is not None else Connectivity.EIGHT
    sensor = SensorConfig(max_range=args.sensor_range, ray_count=args.rays)
    out_dir = args.out or Path("bench_out")
    out_dir.mkdir(parents=True, exist_ok=True)
    metrics_path = args.metrics or out_dir / "bench.csv"

    rows = []
    wfd_times, naive_times = [], []
    for trial in range(args.trials):
        world, start = generate_world(width, height, density, seed + trial)
        rng = np.random.default_rng(seed + trial)
        belief = explored_snapshot(world, start, sensor, rng, extra_senses=int(rng.integers(0, 4)))
        wfd_frontiers, wfd_stats = wfd(belief, start, conn)
        naive_frontiers, naive_stats = naive_detect(belief, conn)

        expected = _reachable_frontier_sets(naive_frontiers, belief, start, conn)
        got = _frontier_sets(wfd_frontiers)
        if got != expected:
            save_pgm(belief, out_dir / f"disagreement_{trial:03d}_belief.pgm")
            (out_dir / f"disagreement_{trial:03d}_world.txt").write_text(
                world_to_ascii(world, start.cell)
            )
            (out_dir / f"disagreement_{trial:03d}_params.json").write_text(
                json.dumps({
                    "width": width, "height": height, "density": density,
                    "seed": seed + trial, "conn": conn.value,
                    "range": sensor.max_range, "rays": sensor.ray_count,
                })
            )
            print(
                f"detector disagreement on trial {trial}; "
                f"reproduction dumped to {out_dir}", file=sys.stderr,
            )
            return 4
        known = float(np.count_nonzero(belief.cells != 0)) / belief.cells.size
        rows.append([
            f"{width}x{height}",
            known,
            wfd_stats.cells_visited,
            naive_stats.cells_visited,
            wfd_stats.wall_time * 1e6,
            naive_stats.wall_time * 1e6,
        ])
        wfd_times.append(wfd_stats.wall_time)
        naive_times.append(naive_stats.wall_time)

    with open(metrics_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(BENCH_HEADER)
        writer.writerows(rows)
    print(
        f"{args.trials} trials agree ({backend.backend_name()} backend); "
        f"median wfd {statistics.median(wfd_times) * 1e3:.3f} ms, "
        f"median naive {statistics.median(naive_times) * 1e3:.3f} ms; "
        f"csv: {metrics_path}"
    )
    return 0


def cmd_genworld(args, parser) -> int:
    if args.gen is None:
        parser.error("genworld requires --gen WxH:DENSITY:SEED")
    width, height, density, seed = args.gen
    try:
        world, start = generate_world(width, height, density, seed)
    except ValueError as exc:
        parser.error(str(exc))
    out_dir = args.out or Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    name = args.name or f"world_{width}x{height}_d{density}_s{seed}.txt"
    path = out_dir / name
    try:
        path.write_text(world_to_ascii(world, start.cell))
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frontier-explorer",
        description="Frontier-based exploration over 2D occupancy grids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_explore = sub.add_parser("explore", help="run an exploration to completion")
    _add_common(p_explore)

    p_bench = sub.add_parser("bench", help="compare both detectors on partial maps")
    _add_common(p_bench, bench=True)
    p_bench.add_argument("--trials", type=int, default=20)

    p_gen = sub.add_parser("genworld", help="write a random ASCII world file")
    p_gen.add_argument("--gen", type=_parse_gen, metavar="WxH:DENSITY:SEED", required=False)
    p_gen.add_argument("--out", type=Path, default=None)
    p_gen.add_argument("--name", type=str, default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "explore":
        code = cmd_explore(args, parser)
    elif args.command == "bench":
        code = cmd_bench(args, parser)
    else:
        code = cmd_genworld(args, parser)
    return code


if __name__ == "__main__":
    sys.exit(main())

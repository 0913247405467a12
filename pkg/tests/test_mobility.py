import itertools
import logging
import math
import random

import pytest

from dtnsim.core.errors import MapGenerationError, MapParseError
from dtnsim.core.rng import RandomStreams
from dtnsim.mobility import MapGraph, MapMovement, ScriptedMovement, load_map, parse_wkt, shortest_path
from dtnsim.mobility.movement import MovementState
from dtnsim.mobility.synthetic import PEDESTRIAN_PATHS, ROADS, SHOPS, MapLayout, ZoneSpec, generate_synthetic_map
from dtnsim.mobility.wkt import format_linestring, parse_lines, write_wkt


# --- WKT parsing ---

def test_shared_points_join_lines():
    g = parse_wkt("LINESTRING (0 0, 10 0)\nLINESTRING (10 0, 10 10)\n")
    assert g.vertex_count == 3
    assert len(g.edges) == 2
    assert len(g.components) == 1


def test_nearby_points_merge_within_tolerance():
    g = parse_wkt("LINESTRING (0 0, 10 0)\nLINESTRING (10.0001 0, 20 0)\n")
    assert g.vertex_count == 3


def test_multilinestring_is_flattened():
    g = parse_wkt("MULTILINESTRING ((0 0, 1 0), (5 5, 6 5))")
    assert g.vertex_count == 4
    assert len(g.components) == 2


def test_malformed_entry_reports_index():
    with pytest.raises(MapParseError) as excinfo:
        parse_wkt("LINESTRING (0 0, 1 1)\nLINESTRING (0 0, oops)\n")
    assert excinfo.value.entry_index == 1


def test_single_point_linestring_rejected():
    with pytest.raises(MapParseError):
        parse_lines("LINESTRING (0 0)")


def test_empty_map_rejected():
    with pytest.raises(MapParseError):
        parse_wkt("   \n")


def test_writer_uses_six_decimals():
    assert format_linestring([(0, 0), (1.5, 2)]) == "LINESTRING (0.000000 0.000000, 1.500000 2.000000)"
    text = write_wkt([[(0, 0), (1, 1)], [(1, 1), (2, 2)]])
    assert text.count("\n") == 2
    assert parse_wkt(text).vertex_count == 3


def test_bundled_maps_load_and_fit_the_world(maps_dir):
    for name in (ROADS, PEDESTRIAN_PATHS, SHOPS):
        g = load_map(maps_dir / name)
        assert len(g.components) == 1
        assert g.out_of_world(4500, 3400) == []


# --- Shortest paths ---

def _exhaustive_shortest(g: MapGraph, a: int, b: int) -> float:
    best = math.inf
    others = [v for v in range(g.vertex_count) if v not in (a, b)]
    for r in range(len(others) + 1):
        for middle in itertools.permutations(others, r):
            path = (a, *middle, b)
            if all(g.graph.has_edge(u, v) for u, v in zip(path, path[1:])):
                best = min(best, g.path_length(path))
    return best


def test_shortest_path_matches_exhaustive_search():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(2, 8)
        points = [(rng.uniform(0, 100), rng.uniform(0, 100)) for _ in range(n)]
        lines = [[points[i], points[j]] for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
        lines.append([points[0], points[1]])
        g = MapGraph.from_lines(lines)
        a, b = 0, g.vertex_count - 1
        path = shortest_path(g, a, b)
        expected = _exhaustive_shortest(g, a, b)
        if path is None:
            assert expected == math.inf
        else:
            assert path[0] == a and path[-1] == b
            assert g.path_length(path) == pytest.approx(expected)


def test_shortest_path_edge_cases():
    g = parse_wkt("LINESTRING (0 0, 1 0)\nLINESTRING (5 5, 6 5)\n")
    assert g.shortest_path(0, 0) == [0]
    assert g.shortest_path(0, 2) is None


def test_union_merges_coincident_vertices():
    a = parse_wkt("LINESTRING (0 0, 10 0)")
    b = parse_wkt("LINESTRING (10 0, 20 0)")
    merged = a.union(b)
    assert merged.vertex_count == 3
    assert len(merged.components) == 1


# --- Movement ---

def _grid(n: int = 5, spacing: float = 100.0) -> MapGraph:
    lines = [[(i * spacing, j * spacing) for i in range(n)] for j in range(n)]
    lines += [[(i * spacing, j * spacing) for j in range(n)] for i in range(n)]
    return MapGraph.from_lines(lines)


def test_map_movement_stays_on_the_graph():
    g = _grid()
    movement = MapMovement(g, 1.0, 5.0, RandomStreams(3).stream("mobility", 0))
    for _ in range(2000):
        movement.advance(0.5)
        assert g.distance_to_edges(movement.position) < 1e-6


def test_map_movement_speed_bound():
    g = _grid()
    movement = MapMovement(g, 1.0, 2.0, random.Random(11))
    previous = movement.position
    for _ in range(500):
        movement.advance(1.0)
        assert math.dist(previous, movement.position) <= 2.0 + 1e-9
        previous = movement.position


def test_map_movement_is_deterministic():
    g = _grid()
    tracks = []
    for _ in range(2):
        movement = MapMovement(g, 0.5, 1.5, RandomStreams(9).stream("mobility", 4))
        track = []
        for _ in range(300):
            movement.advance(0.5)
            track.append(movement.position)
        tracks.append(track)
    assert tracks[0] == tracks[1]


def test_map_movement_never_targets_another_component():
    g = parse_wkt("LINESTRING (0 0, 100 0, 200 0)\nLINESTRING (1000 1000, 1100 1000)\n")
    movement = MapMovement(g, 1.0, 1.0, random.Random(5))
    start_component = g.component_of(movement.state.vertex)
    for _ in range(2000):
        movement.advance(0.5)
    assert all(g.component_of(v) == start_component for v in movement.waypoints)


def test_single_vertex_map_stays_put():
    g = MapGraph.from_lines([[(5.0, 5.0)]])
    movement = MapMovement(g, 1.0, 2.0, random.Random(1), max_retries=3)
    movement.advance(10.0)
    assert movement.position == (5.0, 5.0)


def _vertex_at(g: MapGraph, point: tuple[float, float]) -> int:
    return next(v for v in range(g.vertex_count) if math.dist(g.position(v), point) < 1e-6)


def _heading(g: MapGraph, path: list[tuple[float, float]], speed: float) -> MapMovement:
    """A movement already on its way along `path` at a fixed speed."""
    movement = MapMovement(g, speed, speed, random.Random(2))
    start = _vertex_at(g, path[0])
    movement.state = MovementState(
        position=g.position(start),
        vertex=start,
        active_path=[_vertex_at(g, p) for p in path[1:]],
        speed=speed,
    )
    return movement


def test_advance_covers_speed_times_dt():
    g = parse_wkt("LINESTRING (0 0, 1000 0)")
    movement = _heading(g, [(0, 0), (1000, 0)], speed=2.0)
    movement.advance(0.5)
    assert movement.position == pytest.approx((1.0, 0.0))


def test_overshoot_carries_into_next_edge():
    g = parse_wkt("LINESTRING (0 0, 1 0, 3 0)")
    one = _heading(g, [(0, 0), (1, 0), (3, 0)], speed=2.0)
    two = _heading(g, [(0, 0), (1, 0), (3, 0)], speed=2.0)
    one.advance(1.0)
    two.advance(0.5)
    two.advance(0.5)
    assert one.position == pytest.approx((2.0, 0.0))
    assert two.position == pytest.approx(one.position)


class _AlwaysDraws(random.Random):
    """Every destination draw lands on the same vertex."""

    def __init__(self, vertex: int):
        super().__init__(0)
        self.vertex = vertex

    def randrange(self, *args, **kwargs) -> int:
        return self.vertex


def test_stranded_node_warns_once(caplog):
    g = parse_wkt("LINESTRING (0 0, 100 0)\nLINESTRING (1000 1000, 1100 1000)\n")
    movement = MapMovement(g, 1.0, 1.0, random.Random(5), max_retries=0)
    home = _vertex_at(g, (0, 0))
    movement.state = MovementState(position=g.position(home), vertex=home)
    movement.rng = _AlwaysDraws(_vertex_at(g, (1000, 1000)))
    movement._stranded_warned = False
    caplog.clear()

    with caplog.at_level(logging.DEBUG, logger="dtnsim.mobility.movement"):
        for _ in range(5):
            movement.advance(0.5)

    warnings = [r for r in caplog.records if r.levelno == logging.WARNING]
    assert len(warnings) == 1
    assert movement.position == (0.0, 0.0)


def test_scripted_movement():
    movement = ScriptedMovement([(0, 0, 0), (10, 50, 0)])
    assert movement.position == (0.0, 0.0)
    movement.advance(9.5)
    assert movement.position == (0.0, 0.0)
    movement.advance(0.5)
    assert movement.position == (50.0, 0.0)


# --- Synthetic maps ---

def test_generated_maps_match_bundled_files(maps_dir):
    files = generate_synthetic_map(MapLayout(), seed=1)
    for name, text in files.items():
        assert text == (maps_dir / name).read_text(encoding="utf-8")


def test_zones_share_vertices_with_roads():
    files = generate_synthetic_map(MapLayout(jitter=0.3), seed=4)
    roads = parse_wkt(files[ROADS])
    for name in (PEDESTRIAN_PATHS, SHOPS):
        union = roads.union(parse_wkt(files[name]))
        assert len(union.components) == 1


def test_jitter_is_seeded():
    layout = MapLayout(jitter=0.2)
    assert generate_synthetic_map(layout, seed=2) == generate_synthetic_map(layout, seed=2)
    assert generate_synthetic_map(layout, seed=2) != generate_synthetic_map(layout, seed=3)


def test_zone_outside_world_rejected():
    layout = MapLayout(pedestrian=ZoneSpec(x_min=4000, y_min=0, x_max=5000, y_max=680))
    with pytest.raises(MapGenerationError):
        generate_synthetic_map(layout)


def test_disjoint_zones_rejected():
    layout = MapLayout(
        pedestrian=ZoneSpec(x_min=0, y_min=0, x_max=600, y_max=680),
        shops=ZoneSpec(x_min=3000, y_min=2040, x_max=3600, y_max=2720),
    )
    with pytest.raises(MapGenerationError):
        generate_synthetic_map(layout)


def test_layout_scales_to_other_worlds():
    files = generate_synthetic_map(MapLayout.for_world(9000, 6800), seed=1)
    assert parse_wkt(files[ROADS]).out_of_world(9000, 6800) == []

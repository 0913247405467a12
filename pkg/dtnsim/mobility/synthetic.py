"""
Synthetic three-zone city map generator.

Produces three WKT files standing in for a real city:

  roads.wkt             coarse grid spanning the whole world
  pedestrian_paths.wkt  denser grid over the densely populated zone
  shops.wkt             densest grid over the built-up zone

Zone rectangles are snapped to the road grid and their grids subdivide
road cells, so every zone shares vertices with the roads. The two zones
must overlap (or touch) so hosts allowed on both get a connected union.

With jitter 0 the output is a set of regular grids; a positive jitter
moves interior vertices by up to `jitter * spacing` in each axis, drawn
from seeded streams. Shared vertices never move.
"""
import logging
import random
from pathlib import Path
from typing import Union

from pydantic import BaseModel, Field

from dtnsim.core.errors import MapGenerationError
from dtnsim.core.rng import RandomStreams
from dtnsim.mobility.graph import Point
from dtnsim.mobility.wkt import write_wkt

logger = logging.getLogger(__name__)

ROADS = "roads.wkt"
PEDESTRIAN_PATHS = "pedestrian_paths.wkt"
SHOPS = "shops.wkt"


class ZoneSpec(BaseModel):
    """A denser sub-grid over a rectangle of the world (meters)."""
    x_min: float
    y_min: float
    x_max: float
    y_max: float
    subdivision: int = Field(default=3, ge=1)  # sub-cells per road cell and axis


class MapLayout(BaseModel):
    """Parameters of the three-zone map; defaults match the bundled maps."""
    world_width: float = 4500.0
    world_height: float = 3400.0
    road_cols: int = Field(default=15, ge=1)
    road_rows: int = Field(default=10, ge=1)
    pedestrian: ZoneSpec = ZoneSpec(x_min=900, y_min=680, x_max=2700, y_max=2380, subdivision=3)
    shops: ZoneSpec = ZoneSpec(x_min=2400, y_min=1360, x_max=3600, y_max=2720, subdivision=4)
    jitter: float = Field(default=0.0, ge=0.0, lt=0.5)

    @classmethod
    def for_world(cls, width: float, height: float, jitter: float = 0.0) -> "MapLayout":
        """Default layout with both zones scaled to a width x height world."""
        base = cls()
        sx, sy = width / base.world_width, height / base.world_height

        def scaled(zone: ZoneSpec) -> ZoneSpec:
            return ZoneSpec(
                x_min=zone.x_min * sx,
                y_min=zone.y_min * sy,
                x_max=zone.x_max * sx,
                y_max=zone.y_max * sy,
                subdivision=zone.subdivision,
            )

        return cls(
            world_width=width,
            world_height=height,
            pedestrian=scaled(base.pedestrian),
            shops=scaled(base.shops),
            jitter=jitter,
        )


class _Grid:
    """Vertex table of a rectangular grid in road-cell index space."""

    def __init__(self, col0: int, row0: int, cols: int, rows: int, k: int, dx: float, dy: float):
        self.col0, self.row0, self.cols, self.rows, self.k = col0, row0, cols, rows, k
        self.dx, self.dy = dx, dy
        self.points: dict[tuple[int, int], Point] = {}
        for m in range(cols + 1):
            for n in range(rows + 1):
                self.points[(m, n)] = (
                    dx * (col0 * k + m) / k,
                    dy * (row0 * k + n) / k,
                )

    def is_anchor(self, m: int, n: int) -> bool:
        """Vertices on the grid border or on a road-grid multiple stay fixed."""
        on_border = m in (0, self.cols) or n in (0, self.rows)
        return on_border or (m % self.k == 0 and n % self.k == 0)

    def jitter(self, rng: random.Random, amount: float, pinned=lambda m, n: False) -> None:
        if amount <= 0.0:
            return
        sx, sy = self.dx / self.k, self.dy / self.k
        for (m, n), (x, y) in sorted(self.points.items()):
            if self.is_anchor(m, n) or pinned(m, n):
                continue
            self.points[(m, n)] = (
                x + rng.uniform(-amount, amount) * sx,
                y + rng.uniform(-amount, amount) * sy,
            )

    def lines(self) -> list[list[Point]]:
        rows = [[self.points[(m, n)] for m in range(self.cols + 1)] for n in range(self.rows + 1)]
        cols = [[self.points[(m, n)] for n in range(self.rows + 1)] for m in range(self.cols + 1)]
        return rows + cols


def _snap_zone(zone: ZoneSpec, name: str, layout: MapLayout, dx: float, dy: float) -> tuple[int, int, int, int]:
    if zone.x_max <= zone.x_min or zone.y_max <= zone.y_min:
        raise MapGenerationError(f"zone '{name}' has zero area")
    if (
        zone.x_min < 0 or zone.y_min < 0
        or zone.x_max > layout.world_width or zone.y_max > layout.world_height
    ):
        raise MapGenerationError(f"zone '{name}' lies outside the {layout.world_width}x{layout.world_height} world")
    col0, col1 = round(zone.x_min / dx), round(zone.x_max / dx)
    row0, row1 = round(zone.y_min / dy), round(zone.y_max / dy)
    if col1 <= col0 or row1 <= row0:
        raise MapGenerationError(f"zone '{name}' is smaller than one road cell after snapping")
    return col0, row0, col1, row1


def generate_synthetic_map(layout: MapLayout = MapLayout(), seed: int = 1) -> dict[str, str]:
    """Return {file name: WKT text} for the three map files."""
    if layout.world_width <= 0 or layout.world_height <= 0:
        raise MapGenerationError("world dimensions must be positive")

    dx = layout.world_width / layout.road_cols
    dy = layout.world_height / layout.road_rows
    ped = _snap_zone(layout.pedestrian, "pedestrian_paths", layout, dx, dy)
    shop = _snap_zone(layout.shops, "shops", layout, dx, dy)
    if ped[0] > shop[2] or shop[0] > ped[2] or ped[1] > shop[3] or shop[1] > ped[3]:
        raise MapGenerationError("pedestrian and shops zones must overlap or touch")

    streams = RandomStreams(seed)

    roads = _Grid(0, 0, layout.road_cols, layout.road_rows, 1, dx, dy)

    def inside_zone(m: int, n: int) -> bool:
        return any(c0 <= m <= c1 and r0 <= n <= r1 for c0, r0, c1, r1 in (ped, shop))

    roads.jitter(streams.stream("genmap", ROADS), layout.jitter, pinned=inside_zone)

    files = {ROADS: write_wkt(roads.lines())}
    for name, (col0, row0, col1, row1), zone in (
        (PEDESTRIAN_PATHS, ped, layout.pedestrian),
        (SHOPS, shop, layout.shops),
    ):
        k = zone.subdivision
        grid = _Grid(col0, row0, (col1 - col0) * k, (row1 - row0) * k, k, dx, dy)
        grid.jitter(streams.stream("genmap", name), layout.jitter)
        files[name] = write_wkt(grid.lines())

    logger.info(f"Generated synthetic map {layout.world_width}x{layout.world_height} (seed={seed}, jitter={layout.jitter})")
    return files


def write_synthetic_map(out_dir: Union[str, Path], layout: MapLayout = MapLayout(), seed: int = 1) -> list[Path]:
    """Generate the three files into out_dir and return their paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in generate_synthetic_map(layout, seed).items():
        path = out_dir / name
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written

"""
WKT map files: LINESTRING / MULTILINESTRING entries in world meters.

Reading goes through shapely; writing emits fixed 6-decimal coordinates
so generated maps are byte-stable.
"""
import logging
import re
from pathlib import Path
from typing import Iterable, Sequence, Union

from shapely import wkt as shapely_wkt
from shapely.errors import ShapelyError
from shapely.geometry import LineString, MultiLineString

from dtnsim.core.errors import MapParseError
from dtnsim.mobility.graph import MapGraph, Point

logger = logging.getLogger(__name__)

_ENTRY_START = re.compile(r"(?=\b(?:MULTILINESTRING|LINESTRING)\b)", re.IGNORECASE)


def split_entries(text: str) -> list[str]:
    """Cut WKT text into one string per geometry entry."""
    chunks = _ENTRY_START.split(text)
    leading = chunks[0].strip()
    if leading:
        raise MapParseError(0, f"unexpected text before first geometry: '{leading[:40]}'")
    return [chunk.strip() for chunk in chunks[1:] if chunk.strip()]


def parse_lines(text: str) -> list[list[Point]]:
    """Point sequences for every linestring in the text (multis flattened)."""
    entries = split_entries(text)
    if not entries:
        raise MapParseError(None, "map contains no geometries")

    lines: list[list[Point]] = []
    for index, entry in enumerate(entries):
        try:
            geometry = shapely_wkt.loads(entry)
        except (ShapelyError, ValueError) as e:
            raise MapParseError(index, f"malformed geometry: {e}") from e

        if isinstance(geometry, LineString):
            parts = [geometry]
        elif isinstance(geometry, MultiLineString):
            parts = list(geometry.geoms)
        else:
            raise MapParseError(index, f"unsupported geometry type {geometry.geom_type}")

        for part in parts:
            coords = [(float(c[0]), float(c[1])) for c in part.coords]
            if len(coords) < 2:
                raise MapParseError(index, "linestring needs at least two points")
            lines.append(coords)
    return lines


def parse_wkt(text: str) -> MapGraph:
    """Parse WKT text into a path graph."""
    graph = MapGraph.from_lines(parse_lines(text))
    logger.debug(f"Parsed map: {graph.vertex_count} vertices, {len(graph.edges)} edges")
    return graph


def load_map(path: Union[str, Path]) -> MapGraph:
    path = Path(path)
    try:
        return parse_wkt(path.read_text(encoding="utf-8"))
    except MapParseError as e:
        raise MapParseError(e.entry_index, f"{path}: {e.message}") from e


def format_linestring(points: Sequence[Point]) -> str:
    coords = ", ".join(f"{x:.6f} {y:.6f}" for x, y in points)
    return f"LINESTRING ({coords})"


def write_wkt(lines: Iterable[Sequence[Point]]) -> str:
    """One LINESTRING per line, newline terminated."""
    return "".join(format_linestring(line) + "\n" for line in lines)

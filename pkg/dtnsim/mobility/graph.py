"""
Path graph built from WKT linestrings.

Every distinct point becomes a vertex (points closer than 1e-3 m are
merged), every consecutive point pair an undirected edge weighted by
its Euclidean length. Graphs are immutable once built and can be shared
between runs and threads.
"""
import math
from typing import Iterable, Optional, Sequence

import networkx as nx

Point = tuple[float, float]

MERGE_TOLERANCE = 1e-3  # meters


def _key(point: Point) -> tuple[int, int]:
    return (round(point[0] / MERGE_TOLERANCE), round(point[1] / MERGE_TOLERANCE))


class MapGraph:
    """Undirected weighted graph over 2-D points (meters)."""

    def __init__(self, graph: nx.Graph):
        self.graph = graph
        self._positions: list[Point] = [graph.nodes[v]["pos"] for v in range(graph.number_of_nodes())]
        self._component: dict[int, int] = {}
        self._components: list[frozenset[int]] = []
        ordered = sorted(nx.connected_components(graph), key=min)
        for index, members in enumerate(ordered):
            self._components.append(frozenset(members))
            for vertex in members:
                self._component[vertex] = index

    # --- Construction ---

    @classmethod
    def from_lines(cls, lines: Iterable[Sequence[Point]]) -> "MapGraph":
        """Build from point sequences; shared points join the lines."""
        graph = nx.Graph()
        index: dict[tuple[int, int], int] = {}

        def vertex_for(point: Point) -> int:
            key = _key(point)
            if key not in index:
                index[key] = len(index)
                graph.add_node(index[key], pos=(float(point[0]), float(point[1])))
            return index[key]

        for line in lines:
            previous = None
            for point in line:
                current = vertex_for(point)
                if previous is not None and previous != current:
                    a, b = graph.nodes[previous]["pos"], graph.nodes[current]["pos"]
                    graph.add_edge(previous, current, length=math.dist(a, b))
                previous = current
        return cls(graph)

    def union(self, *others: "MapGraph") -> "MapGraph":
        """Merge graphs; coincident points (within tolerance) become one vertex."""
        lines: list[list[Point]] = []
        for g in (self, *others):
            for a, b in g.graph.edges():
                lines.append([g.position(a), g.position(b)])
            for v in g.graph.nodes():
                if g.graph.degree(v) == 0:
                    lines.append([g.position(v)])
        return MapGraph.from_lines(lines)

    # --- Queries ---

    @property
    def vertex_count(self) -> int:
        return len(self._positions)

    @property
    def vertices(self) -> list[Point]:
        return list(self._positions)

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return [(a, b, data["length"]) for a, b, data in self.graph.edges(data=True)]

    @property
    def components(self) -> list[frozenset[int]]:
        return list(self._components)

    def position(self, vertex: int) -> Point:
        return self._positions[vertex]

    def component_of(self, vertex: int) -> int:
        return self._component[vertex]

    def edge_length(self, a: int, b: int) -> float:
        return self.graph.edges[a, b]["length"]

    def out_of_world(self, width: float, height: float) -> list[int]:
        """Vertices lying outside [0, width] x [0, height]."""
        return [
            v for v, (x, y) in enumerate(self._positions)
            if not (0.0 <= x <= width and 0.0 <= y <= height)
        ]

    def shortest_path(self, a: int, b: int) -> Optional[list[int]]:
        """Minimal-length vertex path from a to b, or None if unreachable."""
        if a == b:
            return [a]
        if self._component[a] != self._component[b]:
            return None
        return nx.dijkstra_path(self.graph, a, b, weight="length")

    def path_length(self, path: Sequence[int]) -> float:
        return sum(self.edge_length(a, b) for a, b in zip(path, path[1:]))

    def distance_to_edges(self, point: Point) -> float:
        """Distance from a point to the nearest edge (or lone vertex)."""
        best = math.inf
        for a, b in self.graph.edges():
            best = min(best, _segment_distance(point, self._positions[a], self._positions[b]))
        for v in self.graph.nodes():
            if self.graph.degree(v) == 0:
                best = min(best, math.dist(point, self._positions[v]))
        return best


def shortest_path(g: MapGraph, a: int, b: int) -> Optional[list[int]]:
    """Module-level form of MapGraph.shortest_path."""
    return g.shortest_path(a, b)


def _segment_distance(p: Point, a: Point, b: Point) -> float:
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    length_sq = dx * dx + dy * dy
    if length_sq == 0.0:
        return math.dist(p, a)
    t = max(0.0, min(1.0, ((p[0] - ax) * dx + (p[1] - ay) * dy) / length_sq))
    return math.dist(p, (ax + t * dx, ay + t * dy))

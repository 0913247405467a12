"""
Node movement models.

MapMovement is the model every scenario group uses: map-constrained
random waypoint. Each leg picks a destination vertex uniformly from the
group's allowed graph, a speed uniformly from the group's range, and
follows the shortest path there with no pause on arrival.

StationaryMovement and ScriptedMovement cover hosts with no okMaps and
hand-written contact scripts (used by oracle scenarios).
"""
import bisect
import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional, Sequence

from dtnsim.mobility.graph import MapGraph, Point

logger = logging.getLogger(__name__)


class Movement(ABC):
    """Base interface for anything that can place a node over time."""

    @property
    @abstractmethod
    def position(self) -> Point:
        """Current (x, y) in meters."""

    @abstractmethod
    def advance(self, dt: float) -> None:
        """Move forward by dt seconds."""


@dataclass
class MovementState:
    """Where a map-bound node is and where it is heading."""
    position: Point
    vertex: int  # last vertex reached
    active_path: list[int] = field(default_factory=list)  # remaining vertices, next one first
    edge_offset: float = 0.0  # meters travelled from `vertex` toward active_path[0]
    speed: float = 0.0
    legs: int = 0


class MapMovement(Movement):
    """Random waypoint over a path graph, following shortest paths."""

    def __init__(
        self,
        graph: MapGraph,
        speed_min: float,
        speed_max: float,
        rng: random.Random,
        max_retries: int = 10,
    ):
        self.graph = graph
        self.speed_min = speed_min
        self.speed_max = speed_max
        self.rng = rng
        self.max_retries = max_retries

        start = rng.randrange(graph.vertex_count)
        self.state = MovementState(position=graph.position(start), vertex=start)
        self.waypoints: list[int] = []
        self._stranded_warned = False
        self.next_leg()

    @property
    def position(self) -> Point:
        return self.state.position

    def next_leg(self) -> MovementState:
        """
        Draw a new destination and speed, then route there.

        Destinations in another connected component are redrawn up to
        `max_retries` times; after that the node stays where it is for
        this leg.
        """
        s = self.state
        s.legs += 1
        s.edge_offset = 0.0
        current_component = self.graph.component_of(s.vertex)

        path: Optional[list[int]] = None
        for _ in range(self.max_retries + 1):
            destination = self.rng.randrange(self.graph.vertex_count)
            if self.graph.component_of(destination) == current_component:
                path = self.graph.shortest_path(s.vertex, destination)
                break
        s.speed = self.rng.uniform(self.speed_min, self.speed_max)

        if path is None:
            if not self._stranded_warned:
                logger.warning(f"No reachable destination from vertex {s.vertex}; staying put this leg")
                self._stranded_warned = True
            else:
                logger.debug(f"Still no reachable destination from vertex {s.vertex}")
            s.active_path = []
            return s

        self.waypoints.append(path[-1])
        s.active_path = path[1:]
        return s

    def advance(self, dt: float) -> None:
        """
        Travel speed * dt along the active path, crossing vertices as needed.

        Arriving at the destination starts the next leg immediately and the
        leftover time is spent on it. A leg that goes nowhere (zero speed,
        destination equal to the current vertex, nothing reachable) ends
        movement for this call.
        """
        s = self.state
        time_left = dt
        while time_left > 0.0:
            if not s.active_path:
                self.next_leg()
                if not s.active_path or s.speed <= 0.0:
                    break
            if s.speed <= 0.0:
                break

            target = s.active_path[0]
            edge = self.graph.edge_length(s.vertex, target)
            remaining = edge - s.edge_offset
            reach = s.speed * time_left

            if reach >= remaining:
                time_left -= remaining / s.speed
                s.vertex = target
                s.edge_offset = 0.0
                s.position = self.graph.position(target)
                s.active_path.pop(0)
            else:
                s.edge_offset += reach
                s.position = _interpolate(
                    self.graph.position(s.vertex), self.graph.position(target), s.edge_offset / edge
                )
                time_left = 0.0


class StationaryMovement(Movement):
    """A node that never moves."""

    def __init__(self, position: Point):
        self._position = (float(position[0]), float(position[1]))

    @property
    def position(self) -> Point:
        return self._position

    def advance(self, dt: float) -> None:
        pass


class ScriptedMovement(Movement):
    """
    Teleports between fixed positions at scripted times.

    `schedule` is a list of (time, x, y); the position at time t is the
    last entry with time <= t. Time starts at 0 and grows with advance().
    """

    def __init__(self, schedule: Sequence[tuple[float, float, float]]):
        if not schedule:
            raise ValueError("schedule must not be empty")
        ordered = sorted(schedule)
        self._times = [entry[0] for entry in ordered]
        self._points = [(float(entry[1]), float(entry[2])) for entry in ordered]
        self.clock = 0.0

    @property
    def position(self) -> Point:
        index = max(0, bisect.bisect_right(self._times, self.clock) - 1)
        return self._points[index]

    def advance(self, dt: float) -> None:
        self.clock += dt


def _interpolate(a: Point, b: Point, fraction: float) -> Point:
    fraction = min(1.0, max(0.0, fraction))
    return (a[0] + (b[0] - a[0]) * fraction, a[1] + (b[1] - a[1]) * fraction)

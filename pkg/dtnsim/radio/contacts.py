"""
Contact detection over a uniform spatial grid.

A link exists between two nodes on an interface iff both carry that
interface and they are within its transmit range (pure disk model).
Nodes are bucketed into square cells no smaller than the range, so only
a cell and its neighbours need distance checks.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from dtnsim.mobility.graph import Point
from dtnsim.scenario.models import InterfaceSpec

logger = logging.getLogger(__name__)

LinkKey = tuple[int, int, str]  # (lower node id, higher node id, interface)

# half-neighbourhood: each unordered cell pair is visited once
_NEIGHBOUR_OFFSETS = ((0, 0), (1, -1), (1, 0), (1, 1), (0, 1))


@dataclass
class Link:
    node_a: int
    node_b: int
    interface: str
    up_since: float

    @property
    def key(self) -> LinkKey:
        return (self.node_a, self.node_b, self.interface)

    def peer_of(self, node: int) -> int:
        return self.node_b if node == self.node_a else self.node_a


@dataclass(frozen=True)
class ContactEvents:
    up: list[Link]
    down: list[Link]


def pairs_in_range_grid(
    positions: Sequence[Point],
    members: Sequence[int],
    transmit_range: float,
    cell_size: Optional[float] = None,
) -> set[tuple[int, int]]:
    """Unordered (low, high) member pairs within range, via grid bucketing."""
    cell = cell_size or transmit_range
    if cell < transmit_range:
        raise ValueError("grid cell must not be smaller than the transmit range")
    range_sq = transmit_range * transmit_range

    cells: dict[tuple[int, int], list[int]] = {}
    for node in members:
        x, y = positions[node]
        cells.setdefault((math.floor(x / cell), math.floor(y / cell)), []).append(node)

    pairs: set[tuple[int, int]] = set()
    for (cx, cy), here in cells.items():
        for ox, oy in _NEIGHBOUR_OFFSETS:
            there = here if (ox, oy) == (0, 0) else cells.get((cx + ox, cy + oy))
            if not there:
                continue
            same_cell = there is here
            for i, a in enumerate(here):
                ax, ay = positions[a]
                for b in (here[i + 1:] if same_cell else there):
                    bx, by = positions[b]
                    if (ax - bx) ** 2 + (ay - by) ** 2 <= range_sq:
                        pairs.add((a, b) if a < b else (b, a))
    return pairs


def pairs_in_range_naive(
    positions: Sequence[Point],
    members: Sequence[int],
    transmit_range: float,
) -> set[tuple[int, int]]:
    """All-pairs reference implementation of pairs_in_range_grid."""
    range_sq = transmit_range * transmit_range
    ordered = sorted(members)
    pairs = set()
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            (ax, ay), (bx, by) = positions[a], positions[b]
            if (ax - bx) ** 2 + (ay - by) ** 2 <= range_sq:
                pairs.add((a, b))
    return pairs


class ContactDetector:
    """Tracks live links and reports which came up or went down each step."""

    def __init__(self, interfaces: dict[str, InterfaceSpec], node_interfaces: Sequence[Sequence[str]]):
        self.interfaces = interfaces
        self.members: dict[str, list[int]] = {name: [] for name in interfaces}
        for node, names in enumerate(node_interfaces):
            for name in names:
                if name in self.members:
                    self.members[name].append(node)
        self.links: dict[LinkKey, Link] = {}
        self._adjacency: dict[int, dict[int, int]] = {}  # node -> peer -> live link count

    def detect_contacts(self, positions: Sequence[Point], now: float) -> ContactEvents:
        """Compare current geometry with the live link set."""
        current: set[LinkKey] = set()
        for name in sorted(self.interfaces):
            members = self.members[name]
            if len(members) < 2:
                continue
            # per-interface cells: the interface's own range is the largest range its links need
            spec = self.interfaces[name]
            for a, b in pairs_in_range_grid(positions, members, spec.transmit_range):
                current.add((a, b, name))

        up = [Link(a, b, name, now) for a, b, name in sorted(current - self.links.keys())]
        down = [self.links[key] for key in sorted(self.links.keys() - current)]
        for link in down:
            del self.links[link.key]
            self._unlink(link.node_a, link.node_b)
            self._unlink(link.node_b, link.node_a)
        for link in up:
            self.links[link.key] = link
            peers = self._adjacency.setdefault(link.node_a, {})
            peers[link.node_b] = peers.get(link.node_b, 0) + 1
            peers = self._adjacency.setdefault(link.node_b, {})
            peers[link.node_a] = peers.get(link.node_a, 0) + 1
        return ContactEvents(up=up, down=down)

    def is_up(self, key: LinkKey) -> bool:
        return key in self.links

    def links_between(self, a: int, b: int) -> list[Link]:
        low, high = (a, b) if a < b else (b, a)
        return [self.links[(low, high, name)] for name in sorted(self.interfaces) if (low, high, name) in self.links]

    def peers(self, node: int) -> list[int]:
        """Distinct nodes currently linked to `node`, ascending."""
        return sorted(self._adjacency.get(node, {}))

    def _unlink(self, node: int, peer: int) -> None:
        peers = self._adjacency[node]
        peers[peer] -= 1
        if peers[peer] == 0:
            del peers[peer]

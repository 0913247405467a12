"""
Node population for a run.

Node ids follow group order: the first group gets 0..count-1, the next
group continues from there, and so on. Each group moves on the union
of its okMaps graphs; a group without maps is placed at a uniform
random spot and stays there.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

from dtnsim.core.config import Settings, get_settings
from dtnsim.core.rng import RandomStreams
from dtnsim.mobility.graph import MapGraph
from dtnsim.mobility.movement import MapMovement, StationaryMovement
from dtnsim.mobility.wkt import load_map
from dtnsim.scenario.models import Scenario
from dtnsim.store.buffer import Buffer
from dtnsim.engine.node import Node

logger = logging.getLogger(__name__)


@dataclass
class World:
    nodes: list[Node]
    hosts: dict[str, list[int]] = field(default_factory=dict)  # group name -> node ids


class MapCache:
    """Loads each map file once and each okMaps union once."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self._files: dict[str, MapGraph] = {}
        self._unions: dict[tuple[str, ...], MapGraph] = {}

    def graph_for(self, ok_maps: tuple[str, ...]) -> MapGraph:
        key = tuple(sorted(set(ok_maps)))
        if key not in self._unions:
            graphs = [self._load(name) for name in key]
            self._unions[key] = graphs[0] if len(graphs) == 1 else graphs[0].union(*graphs[1:])
        return self._unions[key]

    def _load(self, name: str) -> MapGraph:
        if name not in self._files:
            path = self.scenario.resolve_map(name)
            self._files[name] = load_map(path)
            logger.info(f"Loaded map {path} ({self._files[name].vertex_count} vertices)")
        return self._files[name]


def build_world(scenario: Scenario, settings: Optional[Settings] = None) -> World:
    """Create every node with its movement model and empty buffer."""
    settings = settings or get_settings()
    streams = RandomStreams(scenario.seed)
    maps = MapCache(scenario)

    nodes: list[Node] = []
    hosts: dict[str, list[int]] = {}
    for group in scenario.groups:
        graph = maps.graph_for(group.ok_maps) if group.ok_maps else None
        hosts[group.name] = []
        for _ in range(group.count):
            node_id = len(nodes)
            if graph is not None:
                movement = MapMovement(
                    graph,
                    group.speed_min,
                    group.speed_max,
                    streams.stream("mobility", node_id),
                    max_retries=settings.LEG_RETRIES,
                )
            else:
                rng = streams.stream("placement", node_id)
                movement = StationaryMovement(
                    (rng.uniform(0.0, scenario.world_width), rng.uniform(0.0, scenario.world_height))
                )
            nodes.append(Node(
                id=node_id,
                group=group.name,
                interfaces=tuple(group.interfaces),
                movement=movement,
                buffer=Buffer(group.buffer_size),
                router_params=dict(group.router_params),
            ))
            hosts[group.name].append(node_id)

    logger.info(f"Built {len(nodes)} nodes in {len(scenario.groups)} groups")
    return World(nodes=nodes, hosts=hosts)

"""
Shared fixtures: bundled file locations and builders for hand-placed
worlds (scripted or stationary nodes) used by the oracle scenarios.
"""
from pathlib import Path
from typing import Optional, Sequence

import pytest

from dtnsim.engine.node import Node
from dtnsim.engine.world import World
from dtnsim.mobility.movement import Movement, ScriptedMovement, StationaryMovement
from dtnsim.scenario.models import (
    GroupSpec,
    InterfaceSpec,
    RouterKind,
    Scenario,
    TrafficSpec,
)
from dtnsim.store.buffer import Buffer

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def nepal_path() -> Path:
    return ROOT / "scenarios" / "nepal.scen"


@pytest.fixture
def minimal_path() -> Path:
    return ROOT / "scenarios" / "minimal.scen"


@pytest.fixture
def maps_dir() -> Path:
    return ROOT / "maps"


BLUETOOTH = InterfaceSpec(transmit_speed=2_000_000, transmit_range=120)


def hand_placed_scenario(
    group_names: Sequence[str],
    router: str = "epidemic",
    end_time: float = 60.0,
    interval: float = 10.0,
    size: int = 500_000,
    msg_ttl: float = 300.0,
    ttl_unit: str = "minutes",
    buffer_size: int = 5_000_000,
) -> Scenario:
    """One single-host group per name; the first sends to the last."""
    return Scenario(
        name="oracle",
        end_time=end_time,
        world_width=4500,
        world_height=3400,
        ttl_unit=ttl_unit,
        interfaces={"bluetooth": BLUETOOTH},
        groups=tuple(
            GroupSpec(name=name, count=1, interfaces=("bluetooth",), buffer_size=buffer_size, msg_ttl=msg_ttl)
            for name in group_names
        ),
        traffic=TrafficSpec(
            source_groups=(group_names[0],),
            dest_group=group_names[-1],
            interval_min=interval,
            interval_max=interval,
            size_min=size,
            size_max=size,
        ),
        router=RouterKind(variant=router),
    )


def hand_placed_world(scenario: Scenario, movements: Sequence[Movement]) -> World:
    """Node i belongs to group i and moves with movements[i]."""
    nodes = []
    hosts = {}
    for node_id, (group, movement) in enumerate(zip(scenario.groups, movements)):
        nodes.append(Node(
            id=node_id,
            group=group.name,
            interfaces=tuple(group.interfaces),
            movement=movement,
            buffer=Buffer(group.buffer_size),
        ))
        hosts[group.name] = [node_id]
    return World(nodes=nodes, hosts=hosts)


def at(x: float, y: float = 0.0) -> StationaryMovement:
    return StationaryMovement((x, y))


def scripted(*entries: tuple[float, float, float]) -> ScriptedMovement:
    return ScriptedMovement(list(entries))


@pytest.fixture
def line_scenario():
    """Source, relay and destination 100 m apart: only neighbours connect."""
    def build(router: str = "epidemic", **overrides) -> tuple[Scenario, World]:
        scenario = hand_placed_scenario(("Src", "Relay", "Dst"), router=router, **overrides)
        return scenario, hand_placed_world(scenario, [at(100), at(200), at(300)])
    return build


@pytest.fixture
def node_factory():
    """Bare nodes for router and store tests."""
    def build(node_id: int, capacity: int = 5_000_000, position: Optional[tuple[float, float]] = None) -> Node:
        return Node(
            id=node_id,
            group="G",
            interfaces=("bluetooth",),
            movement=StationaryMovement(position or (0.0, 0.0)),
            buffer=Buffer(capacity),
        )
    return build

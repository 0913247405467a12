"""
Per-node simulation state.

A node owns its movement model, its radio interfaces and its buffer,
plus what it is currently receiving and the ids it saw reach their
destination. Everything here is mutated only by the engine
loop.
"""
from dataclasses import dataclass, field

from dtnsim.mobility.graph import Point
from dtnsim.mobility.movement import Movement
from dtnsim.store.buffer import Buffer


@dataclass
class Node:
    id: int
    group: str
    interfaces: tuple[str, ...]
    movement: Movement
    buffer: Buffer
    router_params: dict[str, str] = field(default_factory=dict)

    # message ids currently arriving over some link
    incoming: set[str] = field(default_factory=set)
    # ids delivered to or by this node; it never takes them again
    delivered: set[str] = field(default_factory=set)

    @property
    def position(self) -> Point:
        return self.movement.position

    def lacks(self, message_id: str) -> bool:
        """Neither holding, receiving nor already delivered the message."""
        return (
            message_id not in self.buffer
            and message_id not in self.incoming
            and message_id not in self.delivered
        )

"""
Bounded per-node message buffer.

Copies are kept in receive order. When an insert does not fit, the
oldest-received copies are evicted first; a copy that is currently
being transmitted by this node is never evicted. Every eviction or TTL
expiry yields a DropEvent carrying the copy's residence time, which is
what the buffer-time statistic is built from. Removing a copy after
delivering it is not a drop.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

from dtnsim.store.message import Message

logger = logging.getLogger(__name__)


class DropReason(str, Enum):
    BUFFER = "buffer"
    EXPIRED = "expired"


class InsertStatus(str, Enum):
    ACCEPTED = "accepted"
    REJECTED_OVERSIZE = "rejected_oversize"
    REJECTED_FULL = "rejected_full"  # everything evictable is in flight
    REJECTED_DUPLICATE = "rejected_duplicate"


@dataclass(frozen=True)
class DropEvent:
    message: Message
    reason: DropReason
    residence: float  # seconds spent in this buffer


@dataclass(frozen=True)
class InsertResult:
    status: InsertStatus
    dropped: tuple[DropEvent, ...] = ()

    @property
    def accepted(self) -> bool:
        return self.status == InsertStatus.ACCEPTED


class Buffer:
    """Receive-ordered store of message copies with a byte capacity."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self.occupancy = 0
        self._copies: dict[str, Message] = {}  # insertion order == receive order
        self._by_destination: dict[int, dict[str, None]] = {}  # same order, per destination
        self._earliest_deadline = math.inf  # lower bound on created_at + ttl of held copies
        self.in_flight: set[str] = set()

    def __len__(self) -> int:
        return len(self._copies)

    def __contains__(self, message_id: str) -> bool:
        return message_id in self._copies

    def __iter__(self) -> Iterator[Message]:
        """Held copies, oldest-received first. Do not mutate while iterating."""
        return iter(self._copies.values())

    def get(self, message_id: str) -> Optional[Message]:
        return self._copies.get(message_id)

    def addressed_to(self, destination: int) -> list[Message]:
        """Held copies whose final destination is `destination`, oldest-received first."""
        ids = self._by_destination.get(destination)
        if not ids:
            return []
        return [self._copies[message_id] for message_id in ids]

    def free_space(self) -> int:
        return self.capacity - self.occupancy

    def insert(self, message: Message, now: float) -> InsertResult:
        """Store a copy, evicting oldest-received copies if needed."""
        if message.id in self._copies:
            return InsertResult(InsertStatus.REJECTED_DUPLICATE)
        if message.size > self.capacity:
            return InsertResult(InsertStatus.REJECTED_OVERSIZE)

        need = message.size - self.free_space()
        victims: list[Message] = []
        if need > 0:
            for held in self._copies.values():
                if held.id in self.in_flight:
                    continue
                victims.append(held)
                need -= held.size
                if need <= 0:
                    break
            if need > 0:
                return InsertResult(InsertStatus.REJECTED_FULL)

        dropped = tuple(self._drop(held, DropReason.BUFFER, now) for held in victims)
        self._copies[message.id] = message
        self._by_destination.setdefault(message.destination, {})[message.id] = None
        self._earliest_deadline = min(self._earliest_deadline, message.created_at + message.ttl)
        self.occupancy += message.size
        return InsertResult(InsertStatus.ACCEPTED, dropped)

    def replace(self, message: Message) -> None:
        """Update a held copy in place (e.g. its spray copy count)."""
        if message.id in self._copies:
            self._copies[message.id] = message

    def expire(self, now: float) -> list[DropEvent]:
        """Remove every copy older than its TTL."""
        if now < self._earliest_deadline - 1e-6:  # is_expired decides near the deadline
            return []
        expired = [held for held in self._copies.values() if held.is_expired(now)]
        drops = [self._drop(held, DropReason.EXPIRED, now) for held in expired]
        self._earliest_deadline = min(
            (held.created_at + held.ttl for held in self._copies.values()), default=math.inf
        )
        return drops

    def remove_on_delivery(self, message_id: str) -> Optional[Message]:
        """Remove a copy after final delivery; no drop event, missing id is a no-op."""
        held = self._copies.pop(message_id, None)
        if held is not None:
            self._unindex(held)
            self.occupancy -= held.size
            self.in_flight.discard(message_id)
        return held

    def recount(self) -> int:
        """Occupancy recomputed from the held copies."""
        return sum(held.size for held in self._copies.values())

    def _drop(self, held: Message, reason: DropReason, now: float) -> DropEvent:
        del self._copies[held.id]
        self._unindex(held)
        self.occupancy -= held.size
        self.in_flight.discard(held.id)
        return DropEvent(message=held, reason=reason, residence=now - held.received_at)

    def _unindex(self, held: Message) -> None:
        ids = self._by_destination[held.destination]
        del ids[held.id]
        if not ids:
            del self._by_destination[held.destination]

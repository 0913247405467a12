"""
Event counters and samples for one run.

Every reported statistic is derived from what is recorded here:
  created / started / relayed / aborted / delivered counters,
  latency and hop samples (first delivery of each message only),
  buffer-time samples (buffer drops and TTL expiries only),
  creation and first-delivery times for the delivery-rate timeline.

Live copies are tracked per message so each message's final state
(delivered, fully dropped, still alive) can be accounted for.
"""
import bisect
from dataclasses import dataclass, field

from dtnsim.store.buffer import DropEvent, DropReason


@dataclass
class MessageFates:
    delivered: int = 0
    fully_dropped: int = 0
    alive: int = 0


@dataclass
class MetricsAccumulator:
    created: int = 0
    started: int = 0
    relayed: int = 0
    aborted: int = 0
    delivered: int = 0
    duplicate_deliveries: int = 0
    dropped_buffer: int = 0
    expired: int = 0
    rejected: int = 0  # copies a receiver could not store

    latency_samples: list[float] = field(default_factory=list)
    hop_samples: list[int] = field(default_factory=list)
    buffer_time_samples: list[float] = field(default_factory=list)

    creation_times: list[float] = field(default_factory=list)
    delivery_times: list[float] = field(default_factory=list)

    delivered_ids: set[str] = field(default_factory=set)
    live_copies: dict[str, int] = field(default_factory=dict)

    @property
    def dropped(self) -> int:
        """Buffer drops plus TTL expiries."""
        return self.dropped_buffer + self.expired

    # --- Recording ---

    def record_created(self, message_id: str, time: float) -> None:
        self.created += 1
        self.creation_times.append(time)
        self.live_copies.setdefault(message_id, 0)

    def record_started(self) -> None:
        self.started += 1

    def record_aborted(self) -> None:
        self.aborted += 1

    def record_relayed(self) -> None:
        self.relayed += 1

    def record_rejected(self) -> None:
        self.rejected += 1

    def record_delivery(self, message_id: str, created_at: float, hop_count: int, now: float) -> bool:
        """Count a delivery; returns False (and samples nothing) for repeats."""
        if message_id in self.delivered_ids:
            self.duplicate_deliveries += 1
            return False
        self.delivered_ids.add(message_id)
        self.delivered += 1
        self.latency_samples.append(now - created_at)
        self.hop_samples.append(hop_count)
        self.delivery_times.append(now)
        return True

    def record_drop(self, event: DropEvent) -> None:
        if event.reason == DropReason.EXPIRED:
            self.expired += 1
        else:
            self.dropped_buffer += 1
        self.buffer_time_samples.append(event.residence)
        self.copy_removed(event.message.id)

    def copy_added(self, message_id: str) -> None:
        self.live_copies[message_id] = self.live_copies.get(message_id, 0) + 1

    def copy_removed(self, message_id: str) -> None:
        self.live_copies[message_id] -= 1

    def counts_at(self, time: float) -> tuple[float, int, int]:
        """(time, created so far, delivered so far) from the raw event times."""
        return (
            time,
            bisect.bisect_right(self.creation_times, time),
            bisect.bisect_right(self.delivery_times, time),
        )

    # --- Accounting ---

    def fates(self) -> MessageFates:
        """Final state of each created message."""
        fates = MessageFates()
        for message_id, copies in self.live_copies.items():
            if message_id in self.delivered_ids:
                fates.delivered += 1
            elif copies > 0:
                fates.alive += 1
            else:
                fates.fully_dropped += 1
        return fates

"""
Fixed-step simulation loop.

Each step advances the clock by exactly `time_step` and then runs:
  1. Movement      every node advances by one step
  2. Contacts      links that came up or went down since the last step
  3. Link-up       ends of new contacts with something to offer wake up; idle nodes start sending
  4. Transfers     due jobs complete, broken ones abort; freed nodes pick their next transfer
  5. Expiry        copies older than their TTL leave every buffer
  6. Creation      traffic events due by now are stored at their sources

Senders keep no queue. Whenever something that could change its choice
happens (a contact starts, a transfer involving it or a peer ends, it
gains a copy, a peer loses one) a node is marked awake, and every awake
node that can transmit asks the router for its next transfer among the
peers able to receive. With `half_duplex` a node takes part in one
transfer at a time in either direction; otherwise only its outgoing
slot is exclusive.

Before t=0 a warm-up runs phase 1 only. Within a phase nodes are
handled in ascending id and simultaneous completions in ascending
(sender, message id), so results never depend on container order.
"""
import logging
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional

from dtnsim.core.config import Settings, get_settings
from dtnsim.engine.node import Node
from dtnsim.engine.world import World, build_world
from dtnsim.metrics.accumulator import MetricsAccumulator
from dtnsim.radio.contacts import ContactDetector, Link
from dtnsim.radio.transfers import TransferJob, TransferManager
from dtnsim.routing.registry import get_router
from dtnsim.scenario.models import Scenario
from dtnsim.store.buffer import DropEvent, InsertResult
from dtnsim.store.message import Message
from dtnsim.traffic.generator import CreationEvent, schedule_events

logger = logging.getLogger(__name__)


@dataclass
class SimClock:
    step: float
    end: float
    ticks: int = 0

    @property
    def now(self) -> float:
        return self.ticks * self.step

    @property
    def steps(self) -> int:
        """Steps needed for the clock to reach end."""
        if self.end <= 0:
            return 0
        return math.ceil(self.end / self.step - 1e-9)

    def tick(self) -> float:
        self.ticks += 1
        return self.now


class Simulation:
    """One run of a scenario; single-threaded, owns all of its state."""

    def __init__(
        self,
        scenario: Scenario,
        world: Optional[World] = None,
        settings: Optional[Settings] = None,
        trace_contacts: bool = False,
    ):
        self.scenario = scenario
        settings = settings or get_settings()
        world = world or build_world(scenario, settings)
        self.world = world
        self.nodes: list[Node] = sorted(world.nodes, key=lambda n: n.id)
        self.router = get_router(scenario.router)
        self.metrics = MetricsAccumulator()
        self.clock = SimClock(step=scenario.time_step, end=scenario.end_time)

        self.contacts = ContactDetector(scenario.interfaces, [n.interfaces for n in self.nodes])
        self.transfers = TransferManager(self.metrics)
        for node in self.nodes:
            # the manager and the router read the same receiving set
            self.transfers.incoming[node.id] = node.incoming
        self.half_duplex = scenario.half_duplex
        self.awake: set[int] = set()  # nodes whose next transfer must be re-chosen

        self.events: list[CreationEvent] = (
            schedule_events(scenario.traffic, scenario.seed, scenario.end_time, world.hosts)
            if scenario.traffic is not None else []
        )
        self._next_event = 0
        self._groups = {g.name: g for g in scenario.groups}
        self.trace_contacts = trace_contacts
        self.contact_trace: list[tuple[float, str, int, int, str]] = []

    # --- Run ---

    def run(self) -> MetricsAccumulator:
        logger.info(
            f"Running '{self.scenario.name}' router={self.router.get_router_name()} "
            f"seed={self.scenario.seed} nodes={len(self.nodes)} steps={self.clock.steps}"
        )
        self.warmup()
        for _ in range(self.clock.steps):
            self.step()
        logger.info(
            f"Finished '{self.scenario.name}': created={self.metrics.created} "
            f"delivered={self.metrics.delivered} relayed={self.metrics.relayed}"
        )
        return self.metrics

    def warmup(self) -> None:
        """Movement-only pre-roll."""
        step = self.scenario.time_step
        for _ in range(math.ceil(self.scenario.warmup / step - 1e-9) if self.scenario.warmup > 0 else 0):
            for node in self.nodes:
                node.movement.advance(step)

    def step(self) -> None:
        now = self.clock.tick()

        # --- Phase 1: Movement ---
        for node in self.nodes:
            node.movement.advance(self.clock.step)

        # --- Phase 2: Contact detection ---
        events = self.contacts.detect_contacts([n.position for n in self.nodes], now)
        if self.trace_contacts:
            for kind, links in (("down", events.down), ("up", events.up)):
                for link in links:
                    self.contact_trace.append((now, kind, link.node_a, link.node_b, link.interface))

        # --- Phase 3: Router reactions to new links ---
        for link in events.up:
            a, b = self.nodes[link.node_a], self.nodes[link.node_b]
            intents = self.router.on_link_up(a, b)
            if intents.a_to_b:
                self.awake.add(a.id)
            if intents.b_to_a:
                self.awake.add(b.id)
        self._start_transfers(now)

        # --- Phase 4: Transfer progression ---
        completed, aborted = self.transfers.step_transfers(
            now,
            self.contacts.is_up,
            lambda sender, message_id: message_id in self.nodes[sender].buffer,
        )
        for job in aborted:
            self._abort(job)
        for job in completed:
            self._complete(job, now)
        self._start_transfers(now)

        # --- Phase 5: TTL expiry ---
        for node in self.nodes:
            self._record_drops(node, node.buffer.expire(now))

        # --- Phase 6: Message creation ---
        while self._next_event < len(self.events) and self.events[self._next_event].time <= now:
            self._create(self.events[self._next_event], now)
            self._next_event += 1
        self._start_transfers(now)

    # --- Transfers ---

    def can_transmit(self, node: Node) -> bool:
        if self.transfers.busy(node.id):
            return False
        return not (self.half_duplex and node.incoming)

    def can_receive(self, node: Node) -> bool:
        if not self.half_duplex:
            return True
        return not self.transfers.busy(node.id) and not node.incoming

    def wake(self, node_ids: Iterable[int]) -> None:
        self.awake.update(node_ids)

    def wake_around(self, node_id: int) -> None:
        """Wake a node and everyone currently in contact with it."""
        self.awake.add(node_id)
        self.awake.update(self.contacts.peers(node_id))

    def _start_transfers(self, now: float) -> None:
        """Every awake node that can transmit starts its next transfer, if any."""
        if not self.awake:
            return
        awake, self.awake = sorted(self.awake), set()
        for node_id in awake:
            node = self.nodes[node_id]
            if not node.buffer or not self.can_transmit(node):
                continue
            peers = [
                self.nodes[peer_id] for peer_id in self.contacts.peers(node_id)
                if self.can_receive(self.nodes[peer_id])
            ]
            if not peers:
                continue
            intent = self.router.next_intent(node, peers)
            if intent is None:
                continue
            link = self._fastest_link(node_id, intent.peer)
            message = node.buffer.get(intent.message_id)
            speed = self.scenario.interfaces[link.interface].transmit_speed
            self.transfers.begin_transfer(link, node_id, message.id, message.size, speed, now)
            node.buffer.in_flight.add(message.id)

    def _fastest_link(self, a: int, b: int) -> Optional[Link]:
        links = self.contacts.links_between(a, b)
        if not links:
            return None
        return max(links, key=lambda link: (self.scenario.interfaces[link.interface].transmit_speed, link.interface))

    def _abort(self, job: TransferJob) -> None:
        self.nodes[job.sender].buffer.in_flight.discard(job.message_id)
        logger.debug(f"Aborted {job.message_id} {job.sender}->{job.receiver}")
        # the receiver lacks the message again and both ends may be free
        self.wake_around(job.sender)
        self.wake_around(job.receiver)

    def _complete(self, job: TransferJob, now: float) -> None:
        sender, receiver = self.nodes[job.sender], self.nodes[job.receiver]
        sender.buffer.in_flight.discard(job.message_id)
        self.wake_around(sender.id)
        self.wake_around(receiver.id)
        message = sender.buffer.get(job.message_id)
        outcome = self.router.on_transfer_complete(sender.id, receiver.id, message, now)

        if outcome.delivered:
            receiver.delivered.add(message.id)
            sender.delivered.add(message.id)
            self.metrics.record_delivery(message.id, message.created_at, message.hop_count + 1, now)
            if sender.buffer.remove_on_delivery(message.id) is not None:
                self.metrics.copy_removed(message.id)
            logger.debug(f"Delivered {message.id} to {receiver.id} after {message.hop_count + 1} hops")
            return

        if outcome.sender_copy is None:
            if sender.buffer.remove_on_delivery(message.id) is not None:
                self.metrics.copy_removed(message.id)
        else:
            sender.buffer.replace(outcome.sender_copy)

        if outcome.receiver_copy is not None:
            self._store(receiver, outcome.receiver_copy, now)

    def _store(self, node: Node, message: Message, now: float) -> InsertResult:
        """Insert a copy and account for it; the node wakes to pass it on."""
        result = node.buffer.insert(message, now)
        self._record_drops(node, result.dropped)
        if not result.accepted:
            self.metrics.record_rejected()
            logger.debug(f"Node {node.id} rejected {message.id}: {result.status}")
            return result
        self.metrics.copy_added(message.id)
        self.awake.add(node.id)
        return result

    def _record_drops(self, node: Node, drops: Iterable[DropEvent]) -> None:
        """Count drops; peers of a node that lost copies may resend them."""
        lost = False
        for drop in drops:
            self.metrics.record_drop(drop)
            lost = True
        if lost:
            self.wake(self.contacts.peers(node.id))

    # --- Traffic ---

    def _create(self, event: CreationEvent, now: float) -> None:
        source = self.nodes[event.source]
        group = self._groups[source.group]
        message = Message.create(
            id=event.id,
            source=event.source,
            destination=event.destination,
            size=event.size,
            created_at=event.time,
            ttl=self.scenario.ttl_seconds(group),
            copies=self.router.initial_copies(source.router_params),
        )
        self.metrics.record_created(message.id, event.time)
        self._store(source, message, now)

    # --- Inspection ---

    def copies_held(self) -> dict[str, int]:
        """Spray copy count summed over every buffer, per message id."""
        totals: dict[str, int] = {}
        for node in self.nodes:
            for message in node.buffer:
                totals[message.id] = totals.get(message.id, 0) + message.copies_remaining
        return totals


def simulate(scenario: Scenario, settings: Optional[Settings] = None) -> MetricsAccumulator:
    """Build a world for the scenario and run it to completion."""
    return Simulation(scenario, settings=settings).run()

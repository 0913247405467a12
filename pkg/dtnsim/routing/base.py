"""
Abstract base class for all routing protocols.

Every router must implement:
  - wants_relay(): whether a non-destination peer should get a copy
  - on_transfer_complete(): the copies each side holds afterwards

Routers are stateless with respect to the run: all per-copy routing
state (hop path, spray copy count) travels on the message copies, so a
single router instance serves every node.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Sequence

from dtnsim.engine.node import Node
from dtnsim.scenario.models import RouterKind
from dtnsim.store.message import Message


@dataclass(frozen=True)
class TransferIntent:
    """A message the sender wants to push to a peer."""
    peer: int
    message_id: str
    delivery: bool  # the peer is the final destination


@dataclass(frozen=True)
class LinkIntents:
    """Ordered intents for both directions of a new contact."""
    a_to_b: list[TransferIntent]
    b_to_a: list[TransferIntent]


@dataclass(frozen=True)
class TransferOutcome:
    delivered: bool
    receiver_copy: Optional[Message]  # None when the receiver is the destination
    sender_copy: Optional[Message]  # None when the sender drops its copy


class Router(ABC):
    """Base interface for store-carry-forward routing protocols."""

    def __init__(self, kind: RouterKind):
        self.kind = kind

    def initial_copies(self, group_params: dict[str, str]) -> int:
        """Copy budget a newly created message starts with."""
        return 1

    def on_link_up(self, a: Node, b: Node) -> LinkIntents:
        """Intents for both directions when a contact begins."""
        return LinkIntents(a_to_b=self.intents(a, b), b_to_a=self.intents(b, a))

    def intents(self, sender: Node, peer: Node) -> list[TransferIntent]:
        """
        Messages the sender should offer to the peer, in send order:
        those addressed to the peer first, then everything else the
        router wants to replicate, each part oldest-received first.
        """
        deliveries = []
        relays = []
        for message in sender.buffer:
            intent = self.offer(sender, peer, message)
            if intent is None:
                continue
            (deliveries if intent.delivery else relays).append(intent)
        return deliveries + relays

    def next_intent(self, sender: Node, peers: Sequence[Node]) -> Optional[TransferIntent]:
        """
        The single transfer an idle sender should start now.

        Deliveries to any of `peers` come first, then relays; peers are
        tried in the given order and messages oldest-received first.
        `peers` should hold only nodes that can currently receive.
        """
        for peer in peers:
            for message in sender.buffer.addressed_to(peer.id):
                if self.can_send(sender, peer, message):
                    return TransferIntent(peer=peer.id, message_id=message.id, delivery=True)
        for peer in peers:
            for message in sender.buffer:
                if message.destination != peer.id and self.can_send(sender, peer, message):
                    return TransferIntent(peer=peer.id, message_id=message.id, delivery=False)
        return None

    def offer(self, sender: Node, peer: Node, message: Message) -> Optional[TransferIntent]:
        """Intent for one message, or None if it should not go to this peer."""
        if not self.can_send(sender, peer, message):
            return None
        return TransferIntent(peer=peer.id, message_id=message.id, delivery=message.destination == peer.id)

    def can_send(self, sender: Node, peer: Node, message: Message) -> bool:
        """Re-checked right before a transfer starts."""
        if message.id not in sender.buffer:
            return False
        if message.destination == peer.id:
            return message.id not in peer.incoming and message.id not in peer.delivered
        return peer.lacks(message.id) and self.wants_relay(sender, peer, message)

    @abstractmethod
    def wants_relay(self, sender: Node, peer: Node, message: Message) -> bool:
        """Whether a peer that is not the destination should get a copy."""
        pass

    @abstractmethod
    def on_transfer_complete(self, sender: int, receiver: int, message: Message, now: float) -> TransferOutcome:
        """Copies held by each side once `message` has crossed the link."""
        pass

    def get_router_name(self) -> str:
        """Return the router identifier string (the scenario `router` value)."""
        return self.kind.variant

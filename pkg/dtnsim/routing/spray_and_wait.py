"""
Spray-and-Wait: quota-limited replication.

A message starts with L copies at its source. A holder with n > 1
copies hands part of them to any node that lacks the message:
  - binary mode: receiver gets floor(n/2), sender keeps ceil(n/2)
  - source mode: receiver gets 1, sender keeps n - 1
A holder down to a single copy waits and only delivers directly to the
destination.
"""
import logging

from dtnsim.engine.node import Node
from dtnsim.routing.base import Router, TransferOutcome
from dtnsim.store.message import Message

logger = logging.getLogger(__name__)


class SprayAndWaitRouter(Router):
    """Binary (default) or source Spray-and-Wait."""

    def initial_copies(self, group_params: dict[str, str]) -> int:
        if "copies" in group_params:
            return int(group_params["copies"])
        return self.kind.copies

    def wants_relay(self, sender: Node, peer: Node, message: Message) -> bool:
        return message.copies_remaining > 1

    def split(self, copies: int) -> tuple[int, int]:
        """(kept by sender, handed to receiver) for a holder with `copies`."""
        if self.kind.binary:
            handed = copies // 2
        else:
            handed = 1 if copies > 1 else 0
        return copies - handed, handed

    def on_transfer_complete(self, sender: int, receiver: int, message: Message, now: float) -> TransferOutcome:
        if receiver == message.destination:
            return TransferOutcome(delivered=True, receiver_copy=None, sender_copy=None)

        kept, handed = self.split(message.copies_remaining)
        if handed < 1:
            # only reachable if the copy count changed mid-transfer
            logger.warning(f"Spray transfer of {message.id} from {sender} had no copies to hand over")
            return TransferOutcome(delivered=False, receiver_copy=None, sender_copy=message)
        return TransferOutcome(
            delivered=False,
            receiver_copy=message.relayed_to(receiver, now, handed),
            sender_copy=message.with_copies(kept),
        )

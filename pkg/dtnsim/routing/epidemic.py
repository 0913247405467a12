"""
Epidemic routing: flood every message to every node that lacks it.

On contact both sides compare summary vectors (the ids each buffers)
and push whatever the other is missing. Relaying keeps the sender's
copy; only delivering to the final destination removes it.
"""
from dtnsim.engine.node import Node
from dtnsim.routing.base import Router, TransferOutcome
from dtnsim.store.message import Message


class EpidemicRouter(Router):
    """Summary-vector flooding."""

    def wants_relay(self, sender: Node, peer: Node, message: Message) -> bool:
        return True

    def on_transfer_complete(self, sender: int, receiver: int, message: Message, now: float) -> TransferOutcome:
        if receiver == message.destination:
            return TransferOutcome(delivered=True, receiver_copy=None, sender_copy=None)
        return TransferOutcome(
            delivered=False,
            receiver_copy=message.relayed_to(receiver, now, message.copies_remaining),
            sender_copy=message,
        )

"""
Bandwidth-limited, abortable message transfers.

A transfer occupies the sender's single outgoing slot for
size * 8 / transmit_speed seconds. It completes only if its link is
still up and the sender still holds the copy when that time is reached;
otherwise it is aborted and the receiver gets nothing.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Optional

from dtnsim.core.errors import TransferRefused
from dtnsim.metrics.accumulator import MetricsAccumulator
from dtnsim.radio.contacts import Link, LinkKey

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransferJob:
    link: LinkKey
    sender: int
    receiver: int
    message_id: str
    bytes_total: int
    start_time: float
    completion_time: float


def transfer_duration(size: int, transmit_speed: float) -> float:
    """Seconds to push `size` bytes over a link of `transmit_speed` bits/s."""
    return size * 8 / transmit_speed


class TransferManager:
    """Owns every in-progress transfer of a run."""

    def __init__(self, metrics: Optional[MetricsAccumulator] = None):
        self.metrics = metrics
        self.outgoing: dict[int, TransferJob] = {}
        self.incoming: dict[int, set[str]] = {}

    def busy(self, node: int) -> bool:
        return node in self.outgoing

    def begin_transfer(
        self,
        link: Link,
        sender: int,
        message_id: str,
        size: int,
        transmit_speed: float,
        now: float,
    ) -> TransferJob:
        """Start sending; refuses if the sender already has an outgoing job."""
        if sender in self.outgoing:
            raise TransferRefused(f"node {sender} is already transmitting")
        receiver = link.peer_of(sender)
        job = TransferJob(
            link=link.key,
            sender=sender,
            receiver=receiver,
            message_id=message_id,
            bytes_total=size,
            start_time=now,
            completion_time=now + transfer_duration(size, transmit_speed),
        )
        self.outgoing[sender] = job
        self.incoming.setdefault(receiver, set()).add(message_id)
        if self.metrics is not None:
            self.metrics.record_started()
        logger.debug(f"Transfer {message_id} {sender}->{receiver} until {job.completion_time:.2f}")
        return job

    def step_transfers(
        self,
        now: float,
        link_is_up: Callable[[LinkKey], bool],
        sender_holds: Callable[[int, str], bool] = lambda node, message_id: True,
    ) -> tuple[list[TransferJob], list[TransferJob]]:
        """
        Finish due jobs and abort broken ones.

        Returns (completed, aborted), each ordered by (sender, message id).
        Completed jobs count as relayed; aborted ones only ever counted as
        started.
        """
        completed, aborted = [], []
        for sender in sorted(self.outgoing):
            job = self.outgoing[sender]
            if not link_is_up(job.link) or not sender_holds(sender, job.message_id):
                aborted.append(job)
            elif job.completion_time <= now:
                completed.append(job)

        for job in aborted + completed:
            self._release(job)
        if self.metrics is not None:
            for _ in aborted:
                self.metrics.record_aborted()
            for _ in completed:
                self.metrics.record_relayed()
        key = lambda job: (job.sender, job.message_id)
        return sorted(completed, key=key), sorted(aborted, key=key)

    def _release(self, job: TransferJob) -> None:
        del self.outgoing[job.sender]
        self.incoming.get(job.receiver, set()).discard(job.message_id)

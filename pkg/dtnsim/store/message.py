"""
Message copies as held in node buffers.

Each node holds its own copy object: the payload identity (id, source,
destination, size, creation time, TTL) is shared, while the hop path,
spray copy count and receive time belong to the copy.
"""
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Message:
    id: str
    source: int
    destination: int
    size: int  # bytes
    created_at: float  # seconds
    ttl: float  # seconds (scenario TTL already converted from its unit)
    hop_path: tuple[int, ...] = ()
    copies_remaining: int = 1
    received_at: float = 0.0

    @classmethod
    def create(
        cls,
        id: str,
        source: int,
        destination: int,
        size: int,
        created_at: float,
        ttl: float,
        copies: int = 1,
    ) -> "Message":
        """A fresh message as stored at its source."""
        return cls(
            id=id,
            source=source,
            destination=destination,
            size=size,
            created_at=created_at,
            ttl=ttl,
            hop_path=(source,),
            copies_remaining=copies,
            received_at=created_at,
        )

    @property
    def hop_count(self) -> int:
        return len(self.hop_path) - 1

    def is_expired(self, now: float) -> bool:
        """Strictly older than its TTL; a copy aged exactly ttl survives."""
        return now - self.created_at > self.ttl

    def relayed_to(self, receiver: int, now: float, copies: int) -> "Message":
        """The receiver's copy after a completed transfer."""
        return replace(
            self,
            hop_path=self.hop_path + (receiver,),
            copies_remaining=copies,
            received_at=now,
        )

    def with_copies(self, copies: int) -> "Message":
        return replace(self, copies_remaining=copies)

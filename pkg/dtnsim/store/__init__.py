"""Message copies and bounded node buffers."""
from dtnsim.store.buffer import Buffer, DropEvent, DropReason, InsertResult, InsertStatus
from dtnsim.store.message import Message

__all__ = ["Buffer", "DropEvent", "DropReason", "InsertResult", "InsertStatus", "Message"]

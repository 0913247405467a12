"""
Named, independent random streams derived from a single run seed.

Every subsystem draws from its own stream so that adding draws in one
place (say, an extra traffic event) never shifts another subsystem's
sequence (say, node waypoints).
"""
import hashlib
import random
from typing import Any


def derive_seed(seed: int, *path: Any) -> int:
    """Stable 64-bit seed for the stream at `path` under `seed`."""
    key = "/".join([str(seed), *(str(p) for p in path)])
    return int.from_bytes(hashlib.sha256(key.encode("utf-8")).digest()[:8], "big")


class RandomStreams:
    """Factory for per-subsystem `random.Random` streams."""

    def __init__(self, seed: int):
        self._seed = seed

    @property
    def seed(self) -> int:
        return self._seed

    def stream(self, *path: Any) -> random.Random:
        """A fresh generator for the given path, e.g. ("mobility", 12)."""
        return random.Random(derive_seed(self._seed, *path))

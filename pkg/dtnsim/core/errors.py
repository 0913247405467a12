"""
Exception hierarchy shared by all simulator packages.

The CLI maps these onto exit codes: parse and validation problems are
user errors (1), everything else is a runtime error (2).
"""
from typing import Optional


class DTNSimError(Exception):
    """Base class for all simulator errors."""


class ScenarioParseError(DTNSimError):
    """A scenario file line could not be parsed."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        self.message = message
        super().__init__(f"line {line_no}: {message}")


class ScenarioValidationError(DTNSimError):
    """A scenario is missing mandatory keys or violates its invariants."""

    def __init__(self, violations: list):
        self.violations = list(violations)
        details = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid scenario: {details}")


class MapParseError(DTNSimError):
    """A WKT map entry is malformed or the map is empty."""

    def __init__(self, entry_index: Optional[int], message: str):
        self.entry_index = entry_index
        self.message = message
        where = f"entry {entry_index}: " if entry_index is not None else ""
        super().__init__(f"{where}{message}")


class MapGenerationError(DTNSimError):
    """Synthetic map parameters are inconsistent with the world."""


class SweepAxisError(DTNSimError):
    """The requested sweep axis is not a sweepable field."""

    def __init__(self, axis: str, message: str = "not a sweepable field"):
        self.axis = axis
        super().__init__(f"sweep axis '{axis}': {message}")


class TransferRefused(DTNSimError):
    """The sender already has an outgoing transfer in progress."""

"""
Typed run configuration.

These models are the single source of truth for a run: the parser
builds them, `validate` checks them, the engine reads them. They are
frozen so a Scenario can be shared across sweep workers safely.

Invariants are NOT enforced at construction time; a Scenario may hold
an inverted speed range or an undeclared interface so that `validate`
can report every problem at once instead of failing on the first.
"""
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field


class RouterVariant(str, Enum):
    EPIDEMIC = "epidemic"
    SPRAY_AND_WAIT = "snw"


class TtlUnit(str, Enum):
    MINUTES = "minutes"
    SECONDS = "seconds"


class RouterKind(BaseModel):
    """Routing protocol selection and its scenario-wide parameters."""
    variant: RouterVariant = RouterVariant.EPIDEMIC
    copies: int = 16  # L, spray only
    binary: bool = True

    model_config = {"frozen": True, "use_enum_values": True, "validate_default": True}


class InterfaceSpec(BaseModel):
    """A radio interface type; only identical types connect."""
    transmit_speed: float = 0.0  # bits/second
    transmit_range: float = 0.0  # meters

    model_config = {"frozen": True}


class GroupSpec(BaseModel):
    """A population of identical hosts (one row of the group table)."""
    name: str
    count: int = 1
    interfaces: tuple[str, ...] = ()
    ok_maps: tuple[str, ...] = ()
    speed_min: float = 0.5  # m/s
    speed_max: float = 1.5  # m/s
    buffer_size: int = 5_000_000  # bytes
    msg_ttl: float = 300.0  # in the scenario's ttl_unit
    router_params: dict[str, str] = Field(default_factory=dict)

    model_config = {"frozen": True}


class TrafficSpec(BaseModel):
    """Message creation events: who sends to whom, how often, how big."""
    source_groups: tuple[str, ...] = ()
    dest_group: str = ""
    interval_min: float = 60.0  # seconds
    interval_max: float = 120.0
    size_min: int = 500_000  # bytes
    size_max: int = 1_000_000
    name_prefix: str = "SOS"

    model_config = {"frozen": True}


class Scenario(BaseModel):
    """A fully parsed run configuration with defaults applied."""
    name: str = "scenario"
    end_time: float
    world_width: float
    world_height: float
    warmup: float = 0.0
    time_step: float = 0.5
    seed: int = 1
    report_interval: float = 300.0
    map_dir: str = "."
    ttl_unit: TtlUnit = TtlUnit.MINUTES
    half_duplex: bool = False  # a node either sends or receives, one transfer at a time
    groups: tuple[GroupSpec, ...] = ()
    interfaces: dict[str, InterfaceSpec] = Field(default_factory=dict)
    traffic: Optional[TrafficSpec] = None
    router: RouterKind = Field(default_factory=RouterKind)

    model_config = {"frozen": True, "use_enum_values": True, "validate_default": True}

    @property
    def total_hosts(self) -> int:
        return sum(g.count for g in self.groups)

    def group_by_name(self, name: str) -> Optional[GroupSpec]:
        for group in self.groups:
            if group.name == name:
                return group
        return None

    def resolve_map(self, map_name: str) -> Path:
        """Location of an okMaps entry; relative names live under map_dir."""
        path = Path(map_name)
        return path if path.is_absolute() else Path(self.map_dir) / path

    def ttl_seconds(self, group: GroupSpec) -> float:
        """A group's message TTL converted to seconds."""
        if self.ttl_unit == TtlUnit.SECONDS.value:
            return group.msg_ttl
        return group.msg_ttl * 60.0


class Violation(BaseModel):
    """One failed scenario invariant; validation returns these as data."""
    field: str
    message: str

    model_config = {"frozen": True}

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"

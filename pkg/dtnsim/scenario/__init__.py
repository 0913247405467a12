"""Run configuration: models, file format, validation, sweeps."""
from dtnsim.scenario.models import (
    GroupSpec,
    InterfaceSpec,
    RouterKind,
    RouterVariant,
    Scenario,
    TrafficSpec,
    TtlUnit,
    Violation,
)
from dtnsim.scenario.parser import (
    format_size,
    load_scenario,
    parse_scenario,
    parse_size,
    serialize_scenario,
)
from dtnsim.scenario.sweep import expand_sweep
from dtnsim.scenario.validation import validate

__all__ = [
    "GroupSpec",
    "InterfaceSpec",
    "RouterKind",
    "RouterVariant",
    "Scenario",
    "TrafficSpec",
    "TtlUnit",
    "Violation",
    "expand_sweep",
    "format_size",
    "load_scenario",
    "parse_scenario",
    "parse_size",
    "serialize_scenario",
    "validate",
]

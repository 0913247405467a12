"""
Scenario file reader and writer.

Format: UTF-8 lines of `key = value`, `#` starts a comment, lists are
comma-separated. Keys:

  scenario.name / end_time / world_size / warmup / time_step / seed /
  report_interval / map_dir / ttl_unit / half_duplex
                                         (the `scenario.` prefix is optional)
  router = epidemic | snw
  snw.copies, snw.binary
  interface.<name>.transmit_speed, interface.<name>.transmit_range
  Group<N>.name / count / interfaces / ok_maps / speed / buffer_size /
  msg_ttl / router.<param>
  traffic.source_groups / dest_group / interval / size / prefix

Quantities accept decimal suffixes: k = 10^3, M = 10^6, G = 10^9.
"""
import logging
import re
from pathlib import Path
from typing import Callable, Optional, Union

from dtnsim.core.errors import ScenarioParseError, ScenarioValidationError
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

logger = logging.getLogger(__name__)

SIZE_SUFFIXES = {"k": 1_000, "K": 1_000, "M": 1_000_000, "G": 1_000_000_000}

SCENARIO_KEYS = {
    "name", "end_time", "world_size", "warmup", "time_step", "seed",
    "report_interval", "map_dir", "ttl_unit", "half_duplex",
}

# camelCase spellings from the group table map onto model fields
GROUP_FIELD_ALIASES = {
    "name": "name",
    "count": "count",
    "nrofhosts": "count",
    "interfaces": "interfaces",
    "interface": "interfaces",
    "ok_maps": "ok_maps",
    "okmaps": "ok_maps",
    "speed": "speed",
    "buffer_size": "buffer_size",
    "buffersize": "buffer_size",
    "msg_ttl": "msg_ttl",
    "msgttl": "msg_ttl",
}

INTERFACE_FIELD_ALIASES = {
    "transmit_speed": "transmit_speed",
    "transmitspeed": "transmit_speed",
    "transmit_range": "transmit_range",
    "transmitrange": "transmit_range",
}

_GROUP_KEY = re.compile(r"^Group(\d+)\.(.+)$")
_QUANTITY = re.compile(r"^([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*([kKMG]?)$")


# --- Value helpers ---

def parse_size(value: Union[str, int, float]) -> int:
    """'500k' -> 500000, '1M' -> 1000000; plain numbers pass through."""
    return int(round(parse_quantity(value)))


def parse_quantity(value: Union[str, int, float]) -> float:
    """Decimal-suffixed quantity as a float ('2M' -> 2e6)."""
    if isinstance(value, (int, float)):
        return float(value)
    match = _QUANTITY.match(value.strip())
    if not match:
        raise ValueError(f"not a quantity: '{value}'")
    number, suffix = match.groups()
    return float(number) * SIZE_SUFFIXES.get(suffix, 1)


def format_size(size: int) -> str:
    """Inverse of parse_size for exact multiples: 50000000 -> '50M'."""
    for suffix, factor in (("G", 1_000_000_000), ("M", 1_000_000), ("k", 1_000)):
        if size and size % factor == 0:
            return f"{size // factor}{suffix}"
    return str(size)


def parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"not a boolean: '{value}'")


def parse_list(value: str) -> tuple[str, ...]:
    return tuple(item.strip() for item in value.split(",") if item.strip())


def parse_pair(value: str) -> tuple[float, float]:
    items = parse_list(value)
    if len(items) != 2:
        raise ValueError(f"expected two comma-separated values, got '{value}'")
    return parse_quantity(items[0]), parse_quantity(items[1])


def _fmt(number: float) -> str:
    return repr(float(number))


# --- Parsing ---

def _read_lines(text: str) -> dict[str, tuple[int, str]]:
    entries: dict[str, tuple[int, str]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ScenarioParseError(line_no, f"expected 'key = value', got '{stripped}'")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if not key:
            raise ScenarioParseError(line_no, "empty key")
        if key in entries:
            logger.warning(f"Scenario key '{key}' repeated on line {line_no}; last value wins")
        entries[key] = (line_no, value)
    return entries


def _convert(line_no: int, key: str, value: str, converter: Callable):
    try:
        return converter(value)
    except ValueError as e:
        raise ScenarioParseError(line_no, f"bad value for '{key}': {e}") from e


def parse_scenario(text: str, base_dir: Optional[Path] = None) -> Scenario:
    """
    Parse scenario text into a Scenario with all defaults applied.

    Unknown keys are logged as warnings. A relative `map_dir` is resolved
    against `base_dir` (normally the scenario file's directory) when given.
    """
    entries = _read_lines(text)

    top: dict = {}
    router: dict = {}
    interfaces: dict[str, dict] = {}
    groups: dict[int, dict] = {}
    traffic: dict = {}

    for key, (line_no, value) in entries.items():
        parts = key.split(".")

        # --- Scenario-level keys ---
        field = parts[1] if parts[0] == "scenario" and len(parts) == 2 else key
        if field in SCENARIO_KEYS and (len(parts) == 1 or parts[0] == "scenario"):
            if field == "world_size":
                top["world_width"], top["world_height"] = _convert(line_no, key, value, parse_pair)
            elif field in ("name", "map_dir"):
                top[field] = value
            elif field == "ttl_unit":
                top[field] = _convert(line_no, key, value, lambda v: TtlUnit(v.strip().lower()))
            elif field == "seed":
                top[field] = _convert(line_no, key, value, int)
            elif field == "half_duplex":
                top[field] = _convert(line_no, key, value, parse_bool)
            else:
                top[field] = _convert(line_no, key, value, parse_quantity)
            continue

        # --- Routing ---
        if key == "router":
            router["variant"] = _convert(line_no, key, value, lambda v: RouterVariant(v.strip().lower()))
            continue
        if key == "snw.copies":
            router["copies"] = _convert(line_no, key, value, int)
            continue
        if key == "snw.binary":
            router["binary"] = _convert(line_no, key, value, parse_bool)
            continue

        # --- Interfaces ---
        if parts[0] == "interface" and len(parts) == 3:
            field = INTERFACE_FIELD_ALIASES.get(parts[2].lower())
            if field is None:
                logger.warning(f"Unknown interface field '{key}' on line {line_no}")
                continue
            interfaces.setdefault(parts[1], {})[field] = _convert(line_no, key, value, parse_quantity)
            continue

        # --- Groups ---
        group_match = _GROUP_KEY.match(key)
        if group_match:
            index = int(group_match.group(1))
            _parse_group_field(groups.setdefault(index, {}), group_match.group(2), key, line_no, value)
            continue

        # --- Traffic ---
        if parts[0] == "traffic" and len(parts) == 2:
            _parse_traffic_field(traffic, parts[1], key, line_no, value)
            continue

        logger.warning(f"Unknown scenario key '{key}' on line {line_no}; ignored")

    missing = [
        Violation(field=label, message="missing mandatory key")
        for label, name in (("end_time", "end_time"), ("world_size", "world_width"))
        if name not in top
    ]
    if not groups:
        missing.append(Violation(field="groups", message="at least one Group<N> is required"))
    if missing:
        raise ScenarioValidationError(missing)

    if base_dir is not None and "map_dir" in top and not Path(top["map_dir"]).is_absolute():
        top["map_dir"] = str((Path(base_dir) / top["map_dir"]).resolve())
    elif base_dir is not None and "map_dir" not in top:
        top["map_dir"] = str(Path(base_dir).resolve())

    group_specs = []
    for index in sorted(groups):
        fields = groups[index]
        fields.setdefault("name", f"Group{index}")
        group_specs.append(GroupSpec(**fields))

    return Scenario(
        **top,
        groups=tuple(group_specs),
        interfaces={name: InterfaceSpec(**fields) for name, fields in sorted(interfaces.items())},
        traffic=TrafficSpec(**traffic) if traffic else None,
        router=RouterKind(**router),
    )


def _parse_group_field(fields: dict, raw_field: str, key: str, line_no: int, value: str) -> None:
    if raw_field.startswith("router."):
        fields.setdefault("router_params", {})[raw_field[len("router."):]] = value
        return
    field = GROUP_FIELD_ALIASES.get(raw_field.lower())
    if field is None:
        logger.warning(f"Unknown group field '{key}' on line {line_no}; ignored")
        return
    if field == "name":
        fields["name"] = value
    elif field == "count":
        fields["count"] = _convert(line_no, key, value, int)
    elif field in ("interfaces", "ok_maps"):
        fields[field] = parse_list(value)
    elif field == "speed":
        fields["speed_min"], fields["speed_max"] = _convert(line_no, key, value, parse_pair)
    elif field == "buffer_size":
        fields["buffer_size"] = _convert(line_no, key, value, parse_size)
    elif field == "msg_ttl":
        fields["msg_ttl"] = _convert(line_no, key, value, parse_quantity)


def _parse_traffic_field(traffic: dict, field: str, key: str, line_no: int, value: str) -> None:
    if field == "source_groups":
        traffic["source_groups"] = parse_list(value)
    elif field == "dest_group":
        traffic["dest_group"] = value
    elif field == "interval":
        traffic["interval_min"], traffic["interval_max"] = _convert(line_no, key, value, parse_pair)
    elif field == "size":
        low, high = _convert(line_no, key, value, parse_pair)
        traffic["size_min"], traffic["size_max"] = int(round(low)), int(round(high))
    elif field == "prefix":
        traffic["name_prefix"] = value
    else:
        logger.warning(f"Unknown traffic field '{key}' on line {line_no}; ignored")


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Read and parse a scenario file; map_dir resolves against its folder."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse_scenario(text, base_dir=path.parent)


# --- Writing ---

def serialize_scenario(s: Scenario) -> str:
    """Render a Scenario in the file format; parse_scenario reverses it."""
    lines = [
        f"scenario.name = {s.name}",
        f"scenario.end_time = {_fmt(s.end_time)}",
        f"scenario.world_size = {_fmt(s.world_width)}, {_fmt(s.world_height)}",
        f"scenario.warmup = {_fmt(s.warmup)}",
        f"scenario.time_step = {_fmt(s.time_step)}",
        f"scenario.seed = {s.seed}",
        f"scenario.report_interval = {_fmt(s.report_interval)}",
        f"scenario.map_dir = {s.map_dir}",
        f"scenario.ttl_unit = {s.ttl_unit}",
        f"scenario.half_duplex = {'true' if s.half_duplex else 'false'}",
        "",
        f"router = {s.router.variant}",
        f"snw.copies = {s.router.copies}",
        f"snw.binary = {'true' if s.router.binary else 'false'}",
        "",
    ]
    for name, spec in s.interfaces.items():
        lines.append(f"interface.{name}.transmit_speed = {_fmt(spec.transmit_speed)}")
        lines.append(f"interface.{name}.transmit_range = {_fmt(spec.transmit_range)}")
    for index, group in enumerate(s.groups, start=1):
        prefix = f"Group{index}"
        lines.append("")
        lines.append(f"{prefix}.name = {group.name}")
        lines.append(f"{prefix}.count = {group.count}")
        lines.append(f"{prefix}.interfaces = {', '.join(group.interfaces)}")
        lines.append(f"{prefix}.ok_maps = {', '.join(group.ok_maps)}")
        lines.append(f"{prefix}.speed = {_fmt(group.speed_min)}, {_fmt(group.speed_max)}")
        lines.append(f"{prefix}.buffer_size = {group.buffer_size}")
        lines.append(f"{prefix}.msg_ttl = {_fmt(group.msg_ttl)}")
        for param, value in sorted(group.router_params.items()):
            lines.append(f"{prefix}.router.{param} = {value}")
    if s.traffic is not None:
        t = s.traffic
        lines.append("")
        lines.append(f"traffic.source_groups = {', '.join(t.source_groups)}")
        lines.append(f"traffic.dest_group = {t.dest_group}")
        lines.append(f"traffic.interval = {_fmt(t.interval_min)}, {_fmt(t.interval_max)}")
        lines.append(f"traffic.size = {t.size_min}, {t.size_max}")
        lines.append(f"traffic.prefix = {t.name_prefix}")
    return "\n".join(lines) + "\n"

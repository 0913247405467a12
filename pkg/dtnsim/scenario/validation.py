"""
Scenario invariant checks.

`validate` never raises: every problem becomes a Violation so the CLI
can print the complete list in one go.
"""
from typing import Optional

from dtnsim.core.errors import MapParseError
from dtnsim.mobility.wkt import load_map
from dtnsim.scenario.models import Scenario, TtlUnit, Violation


def validate(s: Scenario, check_maps: bool = True) -> list[Violation]:
    """Return all invariant violations; an empty list means runnable."""
    violations: list[Violation] = []

    def report(field: str, message: str) -> None:
        violations.append(Violation(field=field, message=message))

    # --- World and clock ---
    if s.end_time < 0:
        report("end_time", f"must be >= 0, got {s.end_time}")
    if s.time_step <= 0:
        report("time_step", f"must be > 0, got {s.time_step}")
    if s.warmup < 0:
        report("warmup", f"must be >= 0, got {s.warmup}")
    if s.report_interval <= 0:
        report("report_interval", f"must be > 0, got {s.report_interval}")
    if s.world_width <= 0 or s.world_height <= 0:
        report("world_size", f"must be positive, got {s.world_width}x{s.world_height}")
    if s.ttl_unit not in (TtlUnit.MINUTES.value, TtlUnit.SECONDS.value):
        report("ttl_unit", f"unknown unit '{s.ttl_unit}'")

    # --- Interfaces ---
    for name, spec in s.interfaces.items():
        if spec.transmit_speed <= 0:
            report(f"interface.{name}.transmit_speed", f"must be > 0, got {spec.transmit_speed}")
        if spec.transmit_range <= 0:
            report(f"interface.{name}.transmit_range", f"must be > 0, got {spec.transmit_range}")

    # --- Routing ---
    if s.router.copies < 1:
        report("snw.copies", f"must be >= 1, got {s.router.copies}")

    # --- Groups ---
    if not s.groups:
        report("groups", "at least one group is required")
    seen_names: set[str] = set()
    map_problems: dict[str, Optional[str]] = {}  # each file is loaded once
    for group in s.groups:
        prefix = f"{group.name}"
        if group.name in seen_names:
            report(f"{prefix}.name", "duplicate group name")
        seen_names.add(group.name)
        if group.count <= 0:
            report(f"{prefix}.count", f"must be > 0, got {group.count}")
        if group.speed_min < 0:
            report(f"{prefix}.speed_min", f"must be >= 0, got {group.speed_min}")
        if group.speed_min > group.speed_max:
            report(
                f"{prefix}.speed_min",
                f"speed_min {group.speed_min} exceeds speed_max {group.speed_max}",
            )
        if group.buffer_size <= 0:
            report(f"{prefix}.buffer_size", f"must be > 0, got {group.buffer_size}")
        if group.msg_ttl <= 0:
            report(f"{prefix}.msg_ttl", f"must be > 0, got {group.msg_ttl}")
        for interface in group.interfaces:
            if interface not in s.interfaces:
                report(f"{prefix}.interfaces", f"undeclared interface '{interface}'")
        if check_maps:
            for map_name in group.ok_maps:
                problem = _map_problem(s, map_name, map_problems)
                if problem:
                    report(f"{prefix}.ok_maps", problem)
        if "copies" in group.router_params and not _is_positive_int(group.router_params["copies"]):
            report(f"{prefix}.router.copies", f"must be an integer >= 1, got '{group.router_params['copies']}'")

    # --- Traffic ---
    t = s.traffic
    if t is not None:
        if not t.source_groups:
            report("traffic.source_groups", "at least one source group is required")
        for name in t.source_groups:
            if s.group_by_name(name) is None:
                report("traffic.source_groups", f"unknown group '{name}'")
        if s.group_by_name(t.dest_group) is None:
            report("traffic.dest_group", f"unknown group '{t.dest_group}'")
        if t.dest_group in t.source_groups:
            report("traffic.dest_group", "destination group is also a source group")
        if t.interval_min <= 0:
            report("traffic.interval", f"interval_min must be > 0, got {t.interval_min}")
        if t.interval_min > t.interval_max:
            report("traffic.interval", f"interval_min {t.interval_min} exceeds interval_max {t.interval_max}")
        if t.size_min <= 0:
            report("traffic.size", f"size_min must be > 0, got {t.size_min}")
        if t.size_min > t.size_max:
            report("traffic.size", f"size_min {t.size_min} exceeds size_max {t.size_max}")

    return violations


def _is_positive_int(value: str) -> bool:
    try:
        return int(value) >= 1
    except ValueError:
        return False


def _map_problem(s: Scenario, map_name: str, cache: dict[str, Optional[str]]) -> Optional[str]:
    """Why an okMaps file cannot be used in this world, or None."""
    if map_name not in cache:
        cache[map_name] = _check_map(s, map_name)
    return cache[map_name]


def _check_map(s: Scenario, map_name: str) -> Optional[str]:
    path = s.resolve_map(map_name)
    if not path.is_file():
        return f"map file '{map_name}' not found under {s.map_dir}"
    try:
        graph = load_map(path)
    except MapParseError as e:
        return f"map file '{map_name}' is malformed: {e}"
    except (OSError, UnicodeDecodeError) as e:
        return f"map file '{map_name}' cannot be read: {e}"
    outside = graph.out_of_world(s.world_width, s.world_height)
    if outside:
        x, y = graph.position(outside[0])
        return (
            f"map file '{map_name}' has {len(outside)} vertices outside the "
            f"{s.world_width:g}x{s.world_height:g} world, e.g. ({x:g}, {y:g})"
        )
    return None

import logging

import pytest

from dtnsim.core.errors import ScenarioParseError, ScenarioValidationError, SweepAxisError
from dtnsim.scenario import (
    expand_sweep,
    format_size,
    load_scenario,
    parse_scenario,
    parse_size,
    serialize_scenario,
    validate,
)

MINIMAL_TEXT = """
end_time = 3600
world_size = 4500, 3400
interface.bluetooth.transmit_speed = 2M
interface.bluetooth.transmit_range = 120
Group1.name = Senders
Group1.count = 3
Group1.interfaces = bluetooth
Group2.name = Receivers
Group2.count = 2
Group2.interfaces = bluetooth
traffic.source_groups = Senders
traffic.dest_group = Receivers
"""


def _fields(violations):
    return {v.field for v in violations}


# --- Parsing ---

def test_bundled_nepal_scenario(nepal_path):
    s = load_scenario(nepal_path)

    assert s.end_time == 43200
    assert (s.world_width, s.world_height) == (4500, 3400)
    assert s.warmup == 1000
    assert s.router.variant == "snw"
    assert s.router.copies == 16
    assert s.router.binary is True
    assert s.half_duplex is True
    assert [g.name for g in s.groups] == [
        "VictimsA", "VictimsB", "VictimsC", "Rescuer", "TruckA", "TruckB", "DroneA", "DroneB",
    ]
    assert s.total_hosts == 177
    assert s.interfaces["bluetooth"].transmit_speed == 2_000_000
    assert s.interfaces["highspeed"].transmit_range == 500

    rescuer = s.group_by_name("Rescuer")
    assert rescuer.buffer_size == 50_000_000
    assert rescuer.interfaces == ("bluetooth", "highspeed")
    assert (rescuer.speed_min, rescuer.speed_max) == (1.2, 2.8)

    truck_b = s.group_by_name("TruckB")
    assert truck_b.ok_maps == ("pedestrian_paths.wkt", "shops.wkt")
    assert s.traffic.source_groups == ("VictimsA", "VictimsB", "VictimsC")
    assert (s.traffic.size_min, s.traffic.size_max) == (500_000, 1_000_000)


def test_bundled_scenarios_validate_cleanly(nepal_path, minimal_path):
    assert validate(load_scenario(nepal_path)) == []
    assert validate(load_scenario(minimal_path)) == []


def test_ttl_is_minutes_by_default(nepal_path):
    s = load_scenario(nepal_path)
    assert s.ttl_seconds(s.group_by_name("VictimsA")) == 1200 * 60


def test_ttl_unit_seconds():
    s = parse_scenario(MINIMAL_TEXT + "scenario.ttl_unit = seconds\nGroup1.msg_ttl = 90\n")
    assert s.ttl_seconds(s.groups[0]) == 90


def test_mandatory_keys_only_fill_documented_defaults():
    s = parse_scenario("end_time = 100\nworld_size = 10, 10\nGroup1.count = 1\n")
    assert s.time_step == 0.5
    assert s.report_interval == 300
    assert s.warmup == 0
    assert s.router.variant == "epidemic"
    assert s.groups[0].name == "Group1"
    assert s.half_duplex is False


def test_malformed_line_reports_line_number():
    with pytest.raises(ScenarioParseError) as excinfo:
        parse_scenario("end_time = 100\nworld_size 10, 10\n")
    assert excinfo.value.line_no == 2


def test_bad_value_reports_line_number():
    with pytest.raises(ScenarioParseError) as excinfo:
        parse_scenario("end_time = soon\n")
    assert excinfo.value.line_no == 1


def test_missing_mandatory_keys():
    with pytest.raises(ScenarioValidationError) as excinfo:
        parse_scenario("world_size = 10, 10\n")
    assert _fields(excinfo.value.violations) == {"end_time", "groups"}


def test_unknown_keys_are_warnings(caplog):
    with caplog.at_level(logging.WARNING, logger="dtnsim.scenario.parser"):
        s = parse_scenario(MINIMAL_TEXT + "colour = blue\n")
    assert s.end_time == 3600
    assert "colour" in caplog.text


def test_group_router_overrides():
    s = parse_scenario(MINIMAL_TEXT + "Group1.router.copies = 8\n")
    assert s.groups[0].router_params == {"copies": "8"}


def test_serialize_round_trip(nepal_path):
    s = load_scenario(nepal_path)
    assert parse_scenario(serialize_scenario(s)) == s


def test_defaults_are_plain_strings(minimal_path):
    s = load_scenario(minimal_path)
    assert type(s.router.variant) is str and s.router.variant == "epidemic"
    assert type(s.ttl_unit) is str and s.ttl_unit == "minutes"
    text = serialize_scenario(s)
    assert "router = epidemic\n" in text
    assert "scenario.ttl_unit = minutes\n" in text
    assert parse_scenario(text, base_dir=minimal_path.parent) == s


def test_size_helpers():
    assert parse_size("500k") == 500_000
    assert parse_size("1M") == 1_000_000
    assert parse_size("2G") == 2_000_000_000
    assert parse_size(42) == 42
    assert format_size(50_000_000) == "50M"
    assert format_size(1234) == "1234"


# --- Validation ---

def test_inverted_speed_range():
    s = parse_scenario(MINIMAL_TEXT + "Group1.speed = 3, 1\n")
    violations = validate(s, check_maps=False)
    assert "Senders.speed_min" in _fields(violations)


def test_undeclared_interface():
    s = parse_scenario(MINIMAL_TEXT + "Group2.interfaces = bluetooth, wifi\n")
    violations = validate(s, check_maps=False)
    assert any(v.field == "Receivers.interfaces" and "wifi" in v.message for v in violations)


def test_missing_map_file(tmp_path):
    s = parse_scenario(MINIMAL_TEXT + "Group1.ok_maps = nowhere.wkt\n", base_dir=tmp_path)
    assert "Senders.ok_maps" in _fields(validate(s))


def test_map_outside_world(tmp_path):
    (tmp_path / "long.wkt").write_text("LINESTRING (0 0, 9999 0)\n")
    text = MINIMAL_TEXT.replace("world_size = 4500, 3400", "world_size = 100, 100")
    s = parse_scenario(text + "Group1.ok_maps = long.wkt\nGroup2.ok_maps = long.wkt\n", base_dir=tmp_path)
    violations = [v for v in validate(s) if v.field.endswith(".ok_maps")]
    assert {v.field for v in violations} == {"Senders.ok_maps", "Receivers.ok_maps"}
    assert all("outside" in v.message for v in violations)


def test_malformed_map(tmp_path):
    (tmp_path / "broken.wkt").write_text("LINESTRING (0 0)\n")
    s = parse_scenario(MINIMAL_TEXT + "Group1.ok_maps = broken.wkt\n", base_dir=tmp_path)
    violations = [v for v in validate(s) if v.field == "Senders.ok_maps"]
    assert len(violations) == 1 and "malformed" in violations[0].message


def test_bundled_maps_fit_their_world(nepal_path):
    assert validate(load_scenario(nepal_path)) == []


def test_negative_end_time_and_bad_copies():
    s = parse_scenario(MINIMAL_TEXT.replace("end_time = 3600", "end_time = -1") + "snw.copies = 0\n")
    fields = _fields(validate(s, check_maps=False))
    assert {"end_time", "snw.copies"} <= fields


def test_unknown_traffic_groups():
    s = parse_scenario(MINIMAL_TEXT.replace("dest_group = Receivers", "dest_group = Nobody"))
    assert "traffic.dest_group" in _fields(validate(s, check_maps=False))


def test_every_problem_reported_at_once():
    text = MINIMAL_TEXT + "Group1.speed = 3, 1\nGroup1.count = 0\nGroup2.buffer_size = 0\n"
    fields = _fields(validate(parse_scenario(text), check_maps=False))
    assert {"Senders.speed_min", "Senders.count", "Receivers.buffer_size"} <= fields


# --- Sweeps ---

def test_buffer_sweep_by_group_number(nepal_path):
    s = load_scenario(nepal_path)
    variants = expand_sweep(s, "Group4.bufferSize", ["10M", "50M", "100M"])
    assert [v.group_by_name("Rescuer").buffer_size for v in variants] == [10_000_000, 50_000_000, 100_000_000]
    assert all(v.seed == s.seed for v in variants)
    assert all(v.group_by_name("VictimsA") == s.group_by_name("VictimsA") for v in variants)


def test_buffer_sweep_by_group_name(nepal_path):
    s = load_scenario(nepal_path)
    variants = expand_sweep(s, "Rescuer.buffer_size", ["10M"])
    assert variants[0].group_by_name("Rescuer").buffer_size == 10_000_000


def test_seed_and_router_sweeps(nepal_path):
    s = load_scenario(nepal_path)
    assert [v.seed for v in expand_sweep(s, "seed", ["1", "2"])] == [1, 2]
    assert [v.router.variant for v in expand_sweep(s, "router", ["epidemic", "snw"])] == ["epidemic", "snw"]


def test_empty_sweep(nepal_path):
    assert expand_sweep(load_scenario(nepal_path), "seed", []) == []


def test_unknown_sweep_axis(nepal_path):
    s = load_scenario(nepal_path)
    with pytest.raises(SweepAxisError):
        expand_sweep(s, "Group4.colour", ["red"])
    with pytest.raises(SweepAxisError):
        expand_sweep(s, "Group42.bufferSize", ["10M"])


def test_half_duplex_flag():
    s = parse_scenario(MINIMAL_TEXT + "scenario.half_duplex = yes\n")
    assert s.half_duplex is True
    with pytest.raises(ScenarioParseError):
        parse_scenario(MINIMAL_TEXT + "half_duplex = maybe\n")

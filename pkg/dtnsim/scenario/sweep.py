"""
Parameter sweeps: one Scenario per axis value, everything else equal.

Sweepable axes:
  seed                         -> integer seeds
  router                       -> epidemic | snw
  Group<N>.buffer_size         -> sizes ('10M', 50000000, ...)
  <GroupName>.buffer_size      -> same, addressed by group name
(`bufferSize` is accepted as well.)
"""
import re
from typing import Any, Iterable

from dtnsim.core.errors import SweepAxisError
from dtnsim.scenario.models import RouterVariant, Scenario
from dtnsim.scenario.parser import GROUP_FIELD_ALIASES, parse_size

_GROUP_INDEX = re.compile(r"^Group(\d+)$")


def expand_sweep(s: Scenario, axis: str, values: Iterable[Any]) -> list[Scenario]:
    """Return one Scenario per value; the seed is shared unless it is the axis."""
    values = list(values)
    apply = _axis_setter(s, axis)
    try:
        return [apply(value) for value in values]
    except ValueError as e:
        raise SweepAxisError(axis, str(e)) from e


def _axis_setter(s: Scenario, axis: str):
    if axis == "seed":
        return lambda value: s.model_copy(update={"seed": int(value)})

    if axis == "router":
        def set_router(value):
            variant = value if isinstance(value, RouterVariant) else RouterVariant(str(value).strip().lower())
            return s.model_copy(update={"router": s.router.model_copy(update={"variant": variant.value})})
        return set_router

    if "." in axis:
        owner, raw_field = axis.split(".", 1)
        if GROUP_FIELD_ALIASES.get(raw_field.lower()) == "buffer_size":
            index = _group_index(s, owner, axis)

            def set_buffer(value):
                groups = list(s.groups)
                groups[index] = groups[index].model_copy(update={"buffer_size": parse_size(value)})
                return s.model_copy(update={"groups": tuple(groups)})
            return set_buffer

    raise SweepAxisError(axis)


def _group_index(s: Scenario, owner: str, axis: str) -> int:
    match = _GROUP_INDEX.match(owner)
    if match:
        index = int(match.group(1)) - 1
        if 0 <= index < len(s.groups):
            return index
        raise SweepAxisError(axis, f"no group number {index + 1}")
    for index, group in enumerate(s.groups):
        if group.name == owner:
            return index
    raise SweepAxisError(axis, f"unknown group '{owner}'")

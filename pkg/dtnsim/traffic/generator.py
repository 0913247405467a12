"""
SOS message creation events.

One global renewal process drives all traffic: event gaps are uniform
in [interval_min, interval_max], the first event at 0 + gap. Each event
picks a source uniformly over every host of the source groups, a
destination uniformly over the destination group, and a size uniformly
in [size_min, size_max] bytes.

The schedule is a pure function of (traffic spec, seed, horizon, host
layout). Draws come from the run's ("traffic",) stream in a fixed
order per event (gap, source, destination, size).
"""
import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence, Union

from dtnsim.core.rng import RandomStreams
from dtnsim.scenario.models import TrafficSpec

logger = logging.getLogger(__name__)

EVENTS_COLUMNS = ("time", "id", "source", "destination", "size")


@dataclass(frozen=True)
class CreationEvent:
    time: float
    id: str
    source: int
    destination: int
    size: int  # bytes


def schedule_events(
    spec: TrafficSpec,
    seed: int,
    end_time: float,
    hosts: Mapping[str, Sequence[int]],
) -> list[CreationEvent]:
    """
    Creation events with 0 <= time < end_time, in time order.

    `hosts` maps group name to that group's node ids.
    """
    sources = sorted(node for name in spec.source_groups for node in hosts.get(name, ()))
    destinations = sorted(hosts.get(spec.dest_group, ()))
    if not sources or not destinations or end_time <= 0:
        return []

    rng = RandomStreams(seed).stream("traffic")
    events: list[CreationEvent] = []
    time = 0.0
    while True:
        time += rng.uniform(spec.interval_min, spec.interval_max)
        if time >= end_time:
            break
        source = rng.choice(sources)
        destination = rng.choice(destinations)
        size = rng.randint(spec.size_min, spec.size_max)
        events.append(CreationEvent(
            time=time,
            id=f"{spec.name_prefix}{len(events) + 1}",
            source=source,
            destination=destination,
            size=size,
        ))

    logger.debug(f"Scheduled {len(events)} creation events before t={end_time}")
    return events


def write_events_csv(path: Union[str, Path], events: Sequence[CreationEvent]) -> Path:
    """Export the schedule as time,id,source,destination,size."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(EVENTS_COLUMNS)
        for event in events:
            writer.writerow([f"{event.time:.4f}", event.id, event.source, event.destination, event.size])
    return path

"""
Run statistics and their CSV renderings.

Formulas:
  delivery probability = delivered / created (0 when nothing was created)
  overhead ratio       = (relayed - delivered) / delivered (NaN when nothing was delivered)
  latency / hop count  = over first deliveries only
  buffer time          = over buffer drops and TTL expiries only

CSV column order is fixed by the *_COLUMNS tuples below. Real numbers
are written with 4 decimals; undefined values are written as NaN.
"""
import csv
import logging
import math
import statistics
from collections import Counter
from pathlib import Path
from typing import Iterable, Sequence, Union

from pydantic import BaseModel

from dtnsim.metrics.accumulator import MetricsAccumulator

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = (
    "scenario_id",
    "router",
    "buffer",
    "seed",
    "created",
    "started",
    "relayed",
    "aborted",
    "delivered",
    "duplicate_deliveries",
    "dropped",
    "dropped_buffer",
    "expired",
    "rejected",
    "delivery_probability",
    "overhead_ratio",
    "latency_avg",
    "latency_median",
    "latency_min",
    "latency_max",
    "hopcount_avg",
    "hopcount_min",
    "hopcount_max",
    "buffertime_avg",
)
TIMELINE_COLUMNS = ("time", "created", "delivered", "delivery_rate")
HOPS_COLUMNS = ("hops", "count")
CONTACTS_COLUMNS = ("time", "event", "node_a", "node_b", "interface")

NAN = float("nan")


class SummaryRecord(BaseModel):
    """One summary.csv row."""
    scenario_id: str = ""
    router: str = ""
    buffer: str = ""
    seed: int = 0
    created: int
    started: int
    relayed: int
    aborted: int
    delivered: int
    duplicate_deliveries: int
    dropped: int
    dropped_buffer: int
    expired: int
    rejected: int
    delivery_probability: float
    overhead_ratio: float
    latency_avg: float
    latency_median: float
    latency_min: float
    latency_max: float
    hopcount_avg: float
    hopcount_min: float
    hopcount_max: float
    buffertime_avg: float

    model_config = {"frozen": True}

    def as_row(self) -> list[str]:
        return [format_value(getattr(self, column)) for column in SUMMARY_COLUMNS]


# --- Formulas ---

def delivery_probability(delivered: int, created: int) -> float:
    return delivered / created if created else 0.0


def overhead_ratio(relayed: int, delivered: int) -> float:
    return (relayed - delivered) / delivered if delivered else NAN


def median(samples: Iterable[float]) -> float:
    """Middle order statistic (mean of the two middle ones for even counts); NaN if empty."""
    values = list(samples)
    if not values:
        return NAN
    return float(statistics.median(values))


def mean(samples: Sequence[float]) -> float:
    return math.fsum(samples) / len(samples) if samples else NAN


def _extreme(samples: Sequence[float], pick) -> float:
    return float(pick(samples)) if samples else NAN


def summary(
    acc: MetricsAccumulator,
    scenario_id: str = "",
    router: str = "",
    buffer: str = "",
    seed: int = 0,
) -> SummaryRecord:
    return SummaryRecord(
        scenario_id=scenario_id,
        router=router,
        buffer=buffer,
        seed=seed,
        created=acc.created,
        started=acc.started,
        relayed=acc.relayed,
        aborted=acc.aborted,
        delivered=acc.delivered,
        duplicate_deliveries=acc.duplicate_deliveries,
        dropped=acc.dropped,
        dropped_buffer=acc.dropped_buffer,
        expired=acc.expired,
        rejected=acc.rejected,
        delivery_probability=delivery_probability(acc.delivered, acc.created),
        overhead_ratio=overhead_ratio(acc.relayed, acc.delivered),
        latency_avg=mean(acc.latency_samples),
        latency_median=median(acc.latency_samples),
        latency_min=_extreme(acc.latency_samples, min),
        latency_max=_extreme(acc.latency_samples, max),
        hopcount_avg=mean(acc.hop_samples),
        hopcount_min=_extreme(acc.hop_samples, min),
        hopcount_max=_extreme(acc.hop_samples, max),
        buffertime_avg=mean(acc.buffer_time_samples),
    )


def timeseries(acc: MetricsAccumulator, interval: float, end_time: float) -> list[tuple[float, int, int, float]]:
    """
    (time, created so far, delivered so far, cumulative delivery rate)
    at 0, interval, 2*interval, ... below end_time, plus a final row at
    end_time holding the run totals.
    """
    if interval <= 0:
        raise ValueError("interval must be positive")
    rows = []
    k = 0
    while k * interval < end_time:
        time, created, delivered = acc.counts_at(k * interval)
        rows.append((time, created, delivered, delivery_probability(delivered, created)))
        k += 1
    rows.append((end_time, acc.created, acc.delivered, delivery_probability(acc.delivered, acc.created)))
    return rows


def hop_histogram(acc: MetricsAccumulator) -> dict[int, int]:
    """Delivered messages per hop count, ascending by hop count."""
    return dict(sorted(Counter(acc.hop_samples).items()))


# --- CSV output ---

def format_value(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return "NaN" if math.isnan(value) else f"{value:.4f}"
    return str(value)


def _write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
    return path


def write_summary_csv(path: Union[str, Path], records: Sequence[SummaryRecord]) -> Path:
    return _write_csv(path, SUMMARY_COLUMNS, (record.as_row() for record in records))


def write_timeline_csv(path: Union[str, Path], rows: Sequence[tuple[float, int, int, float]]) -> Path:
    return _write_csv(path, TIMELINE_COLUMNS, rows)


def write_hops_csv(path: Union[str, Path], histogram: dict[int, int]) -> Path:
    return _write_csv(path, HOPS_COLUMNS, histogram.items())


def write_contacts_csv(path: Union[str, Path], rows: Sequence[tuple[float, str, int, int, str]]) -> Path:
    return _write_csv(path, CONTACTS_COLUMNS, rows)


def read_csv(path: Union[str, Path]) -> list[dict[str, str]]:
    with Path(path).open(newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def read_timeline_csv(path: Union[str, Path]) -> list[tuple[float, float]]:
    """(time, delivery rate) pairs from a timeline.csv."""
    return [(float(row["time"]), float(row["delivery_rate"])) for row in read_csv(path)]


def read_hops_csv(path: Union[str, Path]) -> dict[int, int]:
    return {int(row["hops"]): int(row["count"]) for row in read_csv(path)}


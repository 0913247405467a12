"""
Run and sweep orchestration plus report emission.

A run validates its scenario, simulates it and writes
summary.csv, timeline.csv and hops.csv (plus contacts.csv / events.csv
when tracing) into its output directory. A sweep expands one scenario
along an axis, runs every variant into OUT/<scenario_id>/ and merges the
summaries into OUT/summary.csv in input order.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Iterable, Optional, Union

from pydantic import BaseModel

from dtnsim.core.config import Settings, get_settings
from dtnsim.core.errors import ScenarioValidationError
from dtnsim.engine.simulation import Simulation
from dtnsim.metrics import reports
from dtnsim.metrics.reports import SummaryRecord
from dtnsim.scenario.models import Scenario
from dtnsim.scenario.parser import format_size
from dtnsim.scenario.sweep import expand_sweep
from dtnsim.scenario.validation import validate
from dtnsim.traffic.generator import write_events_csv

logger = logging.getLogger(__name__)


class RunResult(BaseModel):
    scenario_id: str
    seed: int
    summary: SummaryRecord
    reports: dict[str, str] = {}  # report name -> path

    model_config = {"frozen": True}


def destination_buffer(s: Scenario) -> str:
    """Buffer size of the traffic destination group, e.g. '50M'."""
    group = s.group_by_name(s.traffic.dest_group) if s.traffic else None
    return format_size(group.buffer_size) if group else "-"


def scenario_id(s: Scenario) -> str:
    return f"{s.name}-{s.router.variant}-{destination_buffer(s)}-s{s.seed}"


def run(
    s: Scenario,
    out_dir: Optional[Union[str, Path]] = None,
    settings: Optional[Settings] = None,
    trace: bool = False,
) -> RunResult:
    """Simulate one scenario and write its reports."""
    settings = settings or get_settings()
    violations = validate(s)
    if violations:
        raise ScenarioValidationError(violations)

    run_id = scenario_id(s)
    out = Path(out_dir if out_dir is not None else settings.OUTPUT_DIR)
    out.mkdir(parents=True, exist_ok=True)

    simulation = Simulation(s, settings=settings, trace_contacts=trace or settings.CONTACT_TRACE)
    acc = simulation.run()

    record = reports.summary(acc, scenario_id=run_id, router=s.router.variant, buffer=destination_buffer(s), seed=s.seed)
    paths = {
        "summary": reports.write_summary_csv(out / "summary.csv", [record]),
        "timeline": reports.write_timeline_csv(
            out / "timeline.csv", reports.timeseries(acc, s.report_interval, s.end_time)
        ),
        "hops": reports.write_hops_csv(out / "hops.csv", reports.hop_histogram(acc)),
    }
    if simulation.trace_contacts:
        paths["contacts"] = reports.write_contacts_csv(out / "contacts.csv", simulation.contact_trace)
    if trace or settings.EVENTS_TRACE:
        paths["events"] = write_events_csv(out / "events.csv", simulation.events)

    logger.info(
        f"Run {run_id}: delivery_probability={record.delivery_probability:.4f} "
        f"overhead_ratio={record.overhead_ratio:.4f} -> {out}"
    )
    return RunResult(
        scenario_id=run_id,
        seed=s.seed,
        summary=record,
        reports={name: str(path) for name, path in paths.items()},
    )


def _run_job(s: Scenario, out_dir: str, trace: bool) -> RunResult:
    # process-pool entry point; each worker reads its own settings
    return run(s, out_dir, trace=trace)


def sweep(
    s: Scenario,
    axis: str,
    values: Iterable[Any],
    out_dir: Optional[Union[str, Path]] = None,
    settings: Optional[Settings] = None,
    trace: bool = False,
) -> list[RunResult]:
    """Run every variant of `s` along `axis`; returns results in input order."""
    settings = settings or get_settings()
    variants = expand_sweep(s, axis, values)
    if not variants:
        logger.info(f"Sweep over {axis}: no values, nothing to run")
        return []

    for variant in variants:
        violations = validate(variant)
        if violations:
            raise ScenarioValidationError(violations)

    out = Path(out_dir if out_dir is not None else settings.OUTPUT_DIR)
    out.mkdir(parents=True, exist_ok=True)

    run_dirs: list[str] = []
    seen: dict[str, int] = {}
    for variant in variants:
        name = scenario_id(variant)
        seen[name] = seen.get(name, 0) + 1
        if seen[name] > 1:
            name = f"{name}-{seen[name]}"
        run_dirs.append(str(out / name))

    logger.info(f"Sweep over {axis}: {len(variants)} runs, workers={settings.SWEEP_WORKERS}")
    if settings.SWEEP_WORKERS > 1:
        with ProcessPoolExecutor(max_workers=settings.SWEEP_WORKERS) as pool:
            futures = [pool.submit(_run_job, v, d, trace) for v, d in zip(variants, run_dirs)]
            results = [f.result() for f in futures]
    else:
        results = [run(v, d, settings=settings, trace=trace) for v, d in zip(variants, run_dirs)]

    merged = reports.write_summary_csv(out / "summary.csv", [r.summary for r in results])
    logger.info(f"Sweep summary written to {merged}")
    return results

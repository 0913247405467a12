"""
Static figures from report CSVs.

  timeline: cumulative delivery rate over time, one line per timeline.csv
  hops:     grouped bars of hop-count histograms, one series per hops.csv

Each figure is written as a PNG next to a whitespace-separated .dat file
carrying the same data for gnuplot.
"""
import logging
from pathlib import Path
from typing import Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from dtnsim.metrics.reports import read_hops_csv, read_timeline_csv  # noqa: E402

logger = logging.getLogger(__name__)


def _label(path: Path) -> str:
    # out/<scenario_id>/timeline.csv -> scenario_id
    return path.parent.name or path.stem


def plot_timelines(paths: Sequence[Union[str, Path]], out: Union[str, Path]) -> tuple[Path, Path]:
    """Write <out>.png and <out>.dat; returns both paths."""
    paths = [Path(p) for p in paths]
    out = Path(out).with_suffix("")
    out.parent.mkdir(parents=True, exist_ok=True)
    series = [(_label(p), read_timeline_csv(p)) for p in paths]

    plt.figure(figsize=(10, 6))
    for label, rows in series:
        plt.plot([t for t, _ in rows], [rate for _, rate in rows], label=label)
    plt.xlabel("Time (s)")
    plt.ylabel("Cumulative delivery rate")
    plt.title("Message Delivery Success Rate Over Time")
    plt.ylim(0.0, 1.0)
    plt.legend()
    png = out.with_suffix(".png")
    plt.savefig(png)
    plt.close()

    dat = out.with_suffix(".dat")
    with dat.open("w", encoding="utf-8") as f:
        for label, rows in series:
            f.write(f"# {label}\n# time delivery_rate\n")
            for t, rate in rows:
                f.write(f"{t:.4f} {rate:.4f}\n")
            f.write("\n\n")  # gnuplot dataset separator
    logger.info(f"Wrote {png} and {dat}")
    return png, dat


def plot_hops(paths: Sequence[Union[str, Path]], out: Union[str, Path]) -> tuple[Path, Path]:
    """Grouped bar chart of hop histograms; returns (png, dat)."""
    paths = [Path(p) for p in paths]
    out = Path(out).with_suffix("")
    out.parent.mkdir(parents=True, exist_ok=True)
    series = [(_label(p), read_hops_csv(p)) for p in paths]
    hops = sorted({h for _, histogram in series for h in histogram})

    plt.figure(figsize=(10, 6))
    width = 0.8 / max(1, len(series))
    for i, (label, histogram) in enumerate(series):
        offsets = [h - 0.4 + width * (i + 0.5) for h in hops]
        plt.bar(offsets, [histogram.get(h, 0) for h in hops], width, label=label)
    plt.xlabel("Hop count")
    plt.ylabel("Delivered messages")
    plt.title("Hop Count Comparison")
    plt.xticks(hops)
    plt.legend()
    png = out.with_suffix(".png")
    plt.savefig(png)
    plt.close()

    dat = out.with_suffix(".dat")
    with dat.open("w", encoding="utf-8") as f:
        f.write("# hops " + " ".join(label for label, _ in series) + "\n")
        for h in hops:
            f.write(f"{h} " + " ".join(str(histogram.get(h, 0)) for _, histogram in series) + "\n")
    logger.info(f"Wrote {png} and {dat}")
    return png, dat

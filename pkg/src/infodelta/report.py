"""Chart and table emission from analysis bundles.

Every chart is a static SVG with a CSV twin carrying the plotted numbers,
so results stay inspectable without a renderer.  Output bytes are fully
determined by the bundles.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .config import RunConfig
from .errors import NothingToAnalyzeError
from .serialize import fresh_dir, write_json
from .svg import DEMAND_COLOR, GRID_COLOR, SUPPLY_COLOR, bar_table, line_chart, scatter_chart

REPORT_SCHEMA_VERSION = 1


def _load_bundles(analysis_dir: Path) -> list[dict]:
    bundles = []
    for path in sorted(analysis_dir.glob("*.json")):
        if path.name in ("aggregate.json",):
            continue
        doc = json.loads(path.read_text(encoding="utf-8"))
        if isinstance(doc, dict) and "supply_source" in doc:
            bundles.append(doc)
    return bundles


def _csv_lines(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(str(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def _series_files(bundle: dict, stem: str, report_dir: Path) -> list[str]:
    title = f"{bundle['subtopic_id']} / {bundle['supply_source']}: supply vs demand"
    x_labels = (bundle["week_start"][0], bundle["week_start"][-1])
    svg = line_chart(
        title,
        x_labels,
        [("supply", bundle["supply"], SUPPLY_COLOR), ("demand", bundle["demand"], DEMAND_COLOR)],
        (0, 100),
    )
    (report_dir / f"{stem}__series.svg").write_text(svg, encoding="utf-8")
    csv_text = _csv_lines(
        "week_start,supply,demand",
        zip(bundle["week_start"], bundle["supply"], bundle["demand"]),
    )
    (report_dir / f"{stem}__series.csv").write_text(csv_text, encoding="utf-8")
    return [f"{stem}__series.svg", f"{stem}__series.csv"]


def _delta_files(bundle: dict, stem: str, report_dir: Path) -> list[str]:
    th = bundle["thresholds"]
    title = f"{bundle['subtopic_id']} / {bundle['supply_source']}: weekly delta"
    x_labels = (bundle["week_start"][0], bundle["week_start"][-1])
    svg = line_chart(
        title,
        x_labels,
        [("delta", bundle["delta"], SUPPLY_COLOR)],
        (-100, 100),
        hlines=[
            (0.0, GRID_COLOR, "2,2"),
            (th["upper"], DEMAND_COLOR, "4,2"),
            (th["lower"], DEMAND_COLOR, "4,2"),
        ],
    )
    (report_dir / f"{stem}__delta.svg").write_text(svg, encoding="utf-8")
    rows = [
        (week, value, f"{th['upper']:.6f}", f"{th['lower']:.6f}")
        for week, value in zip(bundle["week_start"], bundle["delta"])
    ]
    csv_text = _csv_lines("week_start,delta,upper_threshold,lower_threshold", rows)
    (report_dir / f"{stem}__delta.csv").write_text(csv_text, encoding="utf-8")
    return [f"{stem}__delta.svg", f"{stem}__delta.csv"]


def _scatter_files(bundle: dict, stem: str, report_dir: Path) -> tuple[list[str], str | None]:
    """Delta versus log-engagement scatter; omitted (with the reason
    passed back for the index) when the correlation is undefined."""
    eng = bundle.get("engagement")
    if eng is None:
        return [], None
    outcome = eng["correlation"]
    if outcome["r"] is None:
        return [], f"scatter omitted: correlation undefined ({outcome['undefined_reason']})"
    log_eng = [math.log10(1.0 + e) for e in eng["engagement_sum"]]
    title = (
        f"{bundle['subtopic_id']} / {bundle['supply_source']}: "
        f"delta vs engagement (r={outcome['r']:.3f})"
    )
    y_hi = max(1.0, math.ceil(max(log_eng)))
    svg = scatter_chart(
        title,
        list(zip((float(d) for d in bundle["delta"]), log_eng)),
        (-100.0, 100.0),
        (0.0, y_hi),
        ("delta", "log10(1+engagement)"),
    )
    (report_dir / f"{stem}__scatter.svg").write_text(svg, encoding="utf-8")
    rows = [
        (week, d, f"{le:.6f}")
        for week, d, le in zip(bundle["week_start"], bundle["delta"], log_eng)
    ]
    csv_text = _csv_lines("week_start,delta,log10_engagement", rows)
    (report_dir / f"{stem}__scatter.csv").write_text(csv_text, encoding="utf-8")
    return [f"{stem}__scatter.svg", f"{stem}__scatter.csv"], None


def _cumulative_files(bundles: list[dict], report_dir: Path) -> list[str]:
    rows = [
        (
            f"{b['subtopic_id']} / {b['supply_source']}",
            float(b["cumulative"]["supply"]),
            float(b["cumulative"]["demand"]),
        )
        for b in bundles
    ]
    svg = bar_table("Cumulative supply and demand over the window", rows, ("supply", "demand"))
    (report_dir / "cumulative.svg").write_text(svg, encoding="utf-8")
    csv_rows = [
        (b["subtopic_id"], b["supply_source"], b["cumulative"]["supply"], b["cumulative"]["demand"])
        for b in bundles
    ]
    csv_text = _csv_lines("subtopic_id,source,cumulative_supply,cumulative_demand", csv_rows)
    (report_dir / "cumulative.csv").write_text(csv_text, encoding="utf-8")
    return ["cumulative.svg", "cumulative.csv"]


def run_report(config: RunConfig) -> dict:
    """Render charts and tables for every analysis bundle.

    Returns the report index, also written to `<output_dir>/report/index.json`.
    """
    analysis_dir = config.output_dir / "analysis"
    bundles = _load_bundles(analysis_dir) if analysis_dir.is_dir() else []
    if not bundles:
        raise NothingToAnalyzeError(f"no analysis bundles under {analysis_dir}")

    report_dir = fresh_dir(config.output_dir / "report")

    files: list[str] = []
    notes: list[str] = []
    for bundle in bundles:
        stem = f"{bundle['subtopic_id']}__{bundle['supply_source']}"
        files.extend(_series_files(bundle, stem, report_dir))
        files.extend(_delta_files(bundle, stem, report_dir))
        scatter, note = _scatter_files(bundle, stem, report_dir)
        files.extend(scatter)
        if note:
            notes.append(f"{stem}: {note}")
    files.extend(_cumulative_files(bundles, report_dir))

    index = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "bundles": len(bundles),
        "files": sorted(files),
        "notes": notes,
    }
    write_json(report_dir / "index.json", index)
    return index

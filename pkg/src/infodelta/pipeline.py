"""Pipeline steps behind the CLI: ingest raw inputs, analyze, summarize.

Each step reads only what the previous one wrote under the configured
output directory, so the steps can be re-run independently.  All outputs
are byte-deterministic for fixed inputs: files are written in sorted
order, floats with fixed precision, and nothing records wall-clock time.
"""

from __future__ import annotations

import datetime as dt
import math
from pathlib import Path

from . import __version__
from .analysis import (
    CorrelationOutcome,
    cross_correlation,
    delta,
    detect_episodes,
    engagement_correlation,
    ols_fit,
    thresholds,
)
from .config import RunConfig
from .errors import (
    ConfigError,
    InfodeltaError,
    NetworkError,
    NothingToAnalyzeError,
    RankDeficientError,
)
from .gdelt import FixtureTransport, LiveTransport, fetch_gdelt_timeline
from .ingest import assign_subtopics, read_posts, read_trends_csv
from .seriesops import (
    DateWindow,
    EngagementSeries,
    NormalizedSeries,
    aggregate_weekly,
    align,
    clip,
    cumulative,
    demand_passthrough,
    rescale,
)
from .serialize import (
    fresh_dir,
    read_engagement_csv,
    read_series_csv,
    sha256_file,
    write_engagement_csv,
    write_json,
    write_series_csv,
)
from .taxonomy import load_default_taxonomy, load_taxonomy

MANIFEST_SCHEMA_VERSION = 1
BUNDLE_SCHEMA_VERSION = 1

PLATFORM_SOURCES = ("facebook", "instagram")

LAG_CONVENTION = "positive lag means demand lags supply by that many weeks"


def _load_taxonomy(config: RunConfig):
    if config.taxonomy_path is None:
        return load_default_taxonomy()
    return load_taxonomy(config.taxonomy_path)


def _series_path(series_dir: Path, subtopic_id: str, source: str) -> Path:
    return series_dir / f"{subtopic_id}__{source}.csv"


# ---------------------------------------------------------------------------
# ingest


def run_ingest(config: RunConfig) -> dict:
    """Read configured inputs and persist per-(subtopic, source) series.

    Returns the run manifest, which is also written to
    `<output_dir>/ingest/manifest.json`.  A subtopic with a missing input
    for some source is marked incomplete with a warning, not a failure.
    """
    taxonomy = _load_taxonomy(config)
    platforms = tuple(s for s in config.sources if s in PLATFORM_SOURCES)
    if platforms and config.posts_path is None:
        raise ConfigError("sources include social platforms but 'inputs.posts' is not set")
    if "gdelt" in config.sources and config.gdelt is None:
        raise ConfigError("sources include gdelt but 'inputs.gdelt' is not configured")

    # config problems above must not cost the user a previous run's output
    ingest_dir = fresh_dir(config.output_dir / "ingest")
    series_dir = ingest_dir / "series"
    engagement_dir = ingest_dir / "engagement"
    series_dir.mkdir()
    engagement_dir.mkdir()

    warnings: list[str] = []
    incomplete: dict[str, list[str]] = {}
    inputs: list[dict] = []
    counts = {"posts_read": 0, "posts_assigned": 0, "out_of_window": 0, "bad_rows": 0}

    def mark_incomplete(subtopic_id: str, source: str, reason: str) -> None:
        incomplete.setdefault(subtopic_id, []).append(source)
        warnings.append(f"{subtopic_id}/{source}: {reason}")

    if platforms:
        result = read_posts(config.posts_path, config.window)
        records = assign_subtopics(result.records, taxonomy)
        counts["posts_read"] = len(result.records) + result.skipped_out_of_window + len(result.row_errors)
        counts["posts_assigned"] = sum(1 for r in records if r.subtopic_id is not None)
        counts["out_of_window"] = result.skipped_out_of_window
        counts["bad_rows"] = len(result.row_errors)
        write_json(ingest_dir / "skip_report.json", result.skip_report)
        inputs.append({"path": str(config.posts_path), "sha256": sha256_file(config.posts_path)})
        for sub in taxonomy.subtopics:
            for platform in platforms:
                raw, eng = aggregate_weekly(records, sub.id, config.window, platform=platform)
                write_series_csv(_series_path(series_dir, sub.id, platform), raw)
                write_engagement_csv(engagement_dir / f"{sub.id}__{platform}.csv", eng)

    if config.trends_dir is not None:
        for sub in taxonomy.subtopics:
            path = config.trends_dir / f"{sub.id}.csv"
            if not path.exists():
                mark_incomplete(sub.id, "trends", f"no search-interest file at {path}")
                continue
            raw = clip(read_trends_csv(path, sub.id), config.window)
            write_series_csv(_series_path(series_dir, sub.id, "trends"), raw)
            inputs.append({"path": str(path), "sha256": sha256_file(path)})
    else:
        warnings.append("no trends_dir configured; demand series not ingested")

    if "gdelt" in config.sources:
        if config.gdelt.transport == "fixture":
            transport = FixtureTransport(config.gdelt.fixture_dir)
        else:
            transport = LiveTransport()
        for sub in taxonomy.subtopics:
            try:
                raw = fetch_gdelt_timeline(
                    sub.news_query, config.gdelt.country, config.window, transport, sub.id
                )
            except NetworkError as exc:
                mark_incomplete(sub.id, "gdelt", str(exc))
                continue
            write_series_csv(_series_path(series_dir, sub.id, "gdelt"), raw)

    outputs = []
    for path in sorted(ingest_dir.rglob("*")):
        if path.is_file() and path.name != "manifest.json":
            outputs.append(
                {"path": str(path.relative_to(config.output_dir)), "sha256": sha256_file(path)}
            )

    manifest = {
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "package_version": __version__,
        "window": {"start": config.window.start, "end": config.window.end},
        "sources": list(config.sources),
        "subtopics": taxonomy.subtopic_ids(),
        "inputs": sorted(inputs, key=lambda e: e["path"]),
        "outputs": outputs,
        "counts": counts,
        "incomplete_subtopics": {k: sorted(v) for k, v in sorted(incomplete.items())},
        "warnings": warnings,
    }
    write_json(ingest_dir / "manifest.json", manifest)
    return manifest


# ---------------------------------------------------------------------------
# analyze


def _clip_engagement(eng: EngagementSeries, weeks: tuple[dt.date, ...]) -> EngagementSeries | None:
    if weeks[0] < eng.week_start[0] or weeks[-1] > eng.week_start[-1]:
        return None
    i = (weeks[0] - eng.week_start[0]).days // 7
    n = len(weeks)
    return EngagementSeries(
        subtopic_id=eng.subtopic_id,
        platform=eng.platform,
        week_start=weeks,
        engagement_sum=eng.engagement_sum[i : i + n],
        post_count=eng.post_count[i : i + n],
        followers_sum=eng.followers_sum[i : i + n],
    )


def _correlation_json(outcome: CorrelationOutcome) -> dict:
    return {"r": outcome.r, "undefined_reason": outcome.undefined_reason}


def _engagement_block(delta_series, eng: EngagementSeries) -> dict:
    """Per-platform engagement statistics for one delta series."""
    outcome = engagement_correlation(delta_series, eng)
    block = {
        "platform": eng.platform,
        "correlation": _correlation_json(outcome),
        "engagement_sum": list(eng.engagement_sum),
        "post_count": list(eng.post_count),
        "ols": None,
    }
    rows = [
        (math.log10(1.0 + e), d, math.log10(1.0 + f / c))
        for d, e, c, f in zip(delta_series.values, eng.engagement_sum, eng.post_count, eng.followers_sum)
        if c > 0
    ]
    if len(rows) < 4:
        block["ols"] = {"skipped_reason": "fewer than 4 weeks with posts"}
        return block
    y = [row[0] for row in rows]
    X = [[1.0, row[1], row[2]] for row in rows]
    try:
        beta, r_squared = ols_fit(y, X)
    except RankDeficientError:
        block["ols"] = {"skipped_reason": "rank-deficient design (constant delta or audience)"}
        return block
    block["ols"] = {
        "model": "log10(1+engagement) ~ 1 + delta + log10(1+followers_mean)",
        "coefficients": {
            "intercept": float(beta[0]),
            "delta": float(beta[1]),
            "log_followers": float(beta[2]),
        },
        "r_squared": float(r_squared),
        "n_weeks": len(rows),
    }
    return block


def _analyze_pair(
    supply_raw,
    demand_raw,
    engagement: EngagementSeries | None,
    max_lag: int,
    min_episode_len: int,
) -> dict:
    """Assemble the full analysis bundle for one (subtopic, source) pair."""
    supply_all = rescale(supply_raw)
    demand_all = demand_passthrough(demand_raw)
    weeks, s_values, d_values = align(supply_all, demand_all)
    supply = NormalizedSeries(
        supply_all.subtopic_id, supply_all.source, weeks, s_values, supply_all.degenerate
    )
    demand = NormalizedSeries(
        demand_all.subtopic_id, demand_all.source, weeks, d_values, demand_all.degenerate
    )

    delta_series = delta(supply, demand)
    th = thresholds(supply, demand)
    episodes = detect_episodes(delta_series, th, min_len=min_episode_len)

    n = len(weeks)
    effective_lag = min(max_lag, n - 3)
    lag_corr = cross_correlation(supply.values, demand.values, effective_lag)

    bundle = {
        "schema_version": BUNDLE_SCHEMA_VERSION,
        "subtopic_id": supply.subtopic_id,
        "supply_source": supply.source,
        "week_start": list(weeks),
        "supply": list(supply.values),
        "demand": list(demand.values),
        "degenerate": {"supply": supply.degenerate, "demand": demand.degenerate},
        "delta": list(delta_series.values),
        "thresholds": {"upper": th.upper, "lower": th.lower},
        "episodes": [
            {
                "kind": ep.kind,
                "start_week": ep.start_week,
                "end_week": ep.end_week,
                "weeks": (ep.end_week - ep.start_week).days // 7 + 1,
                "peak_value": ep.peak_value,
                "mean_value": ep.mean_value,
            }
            for ep in episodes
        ],
        "lag_correlation": {
            "convention": LAG_CONVENTION,
            "max_lag": effective_lag,
            "lags": list(lag_corr.lags),
            "r": list(lag_corr.r),
            "peak_lag": lag_corr.peak_lag,
            "peak_r": lag_corr.peak_r,
            "r_at_zero": lag_corr.r_at(0),
        },
        "cumulative": {"supply": cumulative(supply), "demand": cumulative(demand)},
        "engagement": None,
    }
    if effective_lag < max_lag:
        bundle["lag_correlation"]["note"] = f"max_lag clamped to {effective_lag} for {n} aligned weeks"
    if engagement is not None:
        eng = _clip_engagement(engagement, weeks)
        if eng is not None:
            bundle["engagement"] = _engagement_block(delta_series, eng)
    return bundle


def _summary_row(bundle: dict) -> dict:
    eng = bundle["engagement"]
    lag = bundle["lag_correlation"]
    voids = [e for e in bundle["episodes"] if e["kind"] == "void"]
    overs = [e for e in bundle["episodes"] if e["kind"] == "overabundance"]
    return {
        "subtopic_id": bundle["subtopic_id"],
        "source": bundle["supply_source"],
        "r_at_zero": lag["r_at_zero"],
        "peak_lag": lag["peak_lag"],
        "peak_r": lag["peak_r"],
        "cumulative_supply": bundle["cumulative"]["supply"],
        "cumulative_demand": bundle["cumulative"]["demand"],
        "void_episodes": len(voids),
        "void_weeks": sum(e["weeks"] for e in voids),
        "overabundance_episodes": len(overs),
        "overabundance_weeks": sum(e["weeks"] for e in overs),
        "engagement_r": eng["correlation"]["r"] if eng else None,
    }


_SUMMARY_COLUMNS = (
    "subtopic_id",
    "source",
    "r_at_zero",
    "peak_lag",
    "peak_r",
    "cumulative_supply",
    "cumulative_demand",
    "void_episodes",
    "void_weeks",
    "overabundance_episodes",
    "overabundance_weeks",
    "engagement_r",
)


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _write_summary_csv(path: Path, rows: list[dict]) -> None:
    lines = [",".join(_SUMMARY_COLUMNS)]
    for row in rows:
        lines.append(",".join(_format_cell(row[c]) for c in _SUMMARY_COLUMNS))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _aggregate(rows: list[dict], failures: list[dict]) -> dict:
    """Cross-subtopic roll-up; reports both averages the per-pair peak and
    lag-zero correlations produce, labeled, since they differ in general."""
    lag0 = [r["r_at_zero"] for r in rows if r["r_at_zero"] is not None]
    peaks = [r["peak_r"] for r in rows if r["peak_r"] is not None]
    peak_lags = [r["peak_lag"] for r in rows if r["peak_lag"] is not None]
    modal_lag = None
    if peak_lags:
        tally: dict[int, int] = {}
        for lag in peak_lags:
            tally[lag] = tally.get(lag, 0) + 1
        modal_lag = min(sorted(tally), key=lambda k: (-tally[k], abs(k)))

    # A subtopic gets a cumulative verdict only when all of its supply
    # sources agree; disagreement or a tie lands it in "mixed".
    verdicts: dict[str, set[str]] = {}
    for row in rows:
        if row["cumulative_supply"] > row["cumulative_demand"]:
            verdict = "supply"
        elif row["cumulative_supply"] < row["cumulative_demand"]:
            verdict = "demand"
        else:
            verdict = "tie"
        verdicts.setdefault(row["subtopic_id"], set()).add(verdict)
    demand_led = sorted(s for s, v in verdicts.items() if v == {"demand"})
    supply_led = sorted(s for s, v in verdicts.items() if v == {"supply"})
    mixed = sorted(s for s in verdicts if s not in demand_led and s not in supply_led)

    return {
        "pairs_analyzed": len(rows),
        "mean_lag_zero_r": (sum(lag0) / len(lag0)) if lag0 else None,
        "mean_peak_r": (sum(peaks) / len(peaks)) if peaks else None,
        "modal_peak_lag": modal_lag,
        "lag_convention": LAG_CONVENTION,
        "demand_exceeds_supply": demand_led,
        "supply_exceeds_demand": supply_led,
        "mixed_cumulative": mixed,
        "failures": failures,
    }


def run_analyze(config: RunConfig) -> dict:
    """Analyze every ingested (subtopic, supply source) pair against demand.

    Writes one JSON bundle per pair plus `summary.csv` and
    `aggregate.json`; a failing pair is recorded and skipped without
    affecting the others.  Raises NothingToAnalyzeError when no ingested
    series are present at all.
    """
    series_dir = config.output_dir / "ingest" / "series"
    engagement_dir = config.output_dir / "ingest" / "engagement"
    analysis_dir = config.output_dir / "analysis"

    series_files = sorted(series_dir.glob("*.csv")) if series_dir.is_dir() else []
    if not series_files:
        raise NothingToAnalyzeError(f"no ingested series under {series_dir}")

    supplies: list = []
    demands: dict[str, object] = {}
    for path in series_files:
        series = read_series_csv(path)
        if series.source == "trends":
            demands[series.subtopic_id] = series
        elif series.source in config.sources:
            supplies.append(series)

    fresh_dir(analysis_dir)
    rows: list[dict] = []
    failures: list[dict] = []
    for supply_raw in supplies:
        label = f"{supply_raw.subtopic_id}__{supply_raw.source}"
        demand_raw = demands.get(supply_raw.subtopic_id)
        if demand_raw is None:
            failures.append({"pair": label, "error": "no demand series ingested for this subtopic"})
            continue
        engagement = None
        eng_path = engagement_dir / f"{supply_raw.subtopic_id}__{supply_raw.source}.csv"
        if eng_path.exists():
            engagement = read_engagement_csv(eng_path)
        try:
            bundle = _analyze_pair(
                supply_raw, demand_raw, engagement, config.max_lag, config.min_episode_len
            )
        except InfodeltaError as exc:
            failures.append({"pair": label, "error": str(exc)})
            continue
        write_json(analysis_dir / f"{label}.json", bundle)
        rows.append(_summary_row(bundle))

    if not rows and failures:
        raise NothingToAnalyzeError(
            f"all {len(failures)} pairs failed; first: {failures[0]['pair']}: {failures[0]['error']}"
        )
    rows.sort(key=lambda r: (r["subtopic_id"], r["source"]))
    _write_summary_csv(analysis_dir / "summary.csv", rows)
    aggregate = _aggregate(rows, failures)
    write_json(analysis_dir / "aggregate.json", aggregate)
    return aggregate

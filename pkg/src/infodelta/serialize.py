"""Deterministic on-disk formats: series CSVs and fixed-precision JSON.

Every float is written with exactly six decimals and rows follow a fixed
order, so repeated runs over the same inputs produce byte-identical files
and golden tests can compare bytes directly.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import json
import math
import shutil
from pathlib import Path

from .errors import FormatError, SchemaError
from .seriesops import EngagementSeries, RawSeries

SERIES_HEADER = "subtopic_id,source,week_start,value"
ENGAGEMENT_HEADER = "subtopic_id,source,week_start,engagement_sum,post_count,followers_sum"


def dump_json(value: object, indent: int = 0) -> str:
    """Serialize to JSON with %.6f floats and preserved key order."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if value is None:
        return "null"
    if value is True or value is False:
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite float {value!r} in JSON output")
        return f"{value:.6f}"
    if isinstance(value, dt.date):
        return f'"{value.isoformat()}"'
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = ",\n".join(f"{inner}{dump_json(v, indent + 1)}" for v in value)
        return f"[\n{items}\n{pad}]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = []
        for key, v in value.items():
            if not isinstance(key, str):
                raise ValueError(f"JSON object keys must be strings, got {key!r}")
            parts.append(f"{inner}{json.dumps(key)}: {dump_json(v, indent + 1)}")
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    raise ValueError(f"cannot serialize {type(value).__name__} to JSON")


def write_json(path: str | Path, value: object) -> None:
    Path(path).write_text(dump_json(value) + "\n", encoding="utf-8")


def write_series_csv(path: str | Path, series: RawSeries) -> None:
    lines = [SERIES_HEADER]
    for week, value in zip(series.week_start, series.values):
        lines.append(f"{series.subtopic_id},{series.source},{week.isoformat()},{value}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_series_csv(path: str | Path) -> RawSeries:
    path = Path(path)
    lines = [l for l in path.read_text(encoding="utf-8").splitlines() if l.strip()]
    if not lines or lines[0] != SERIES_HEADER:
        raise SchemaError(f"{path}: expected header {SERIES_HEADER!r}")
    subtopic_id = source = None
    weeks: list[dt.date] = []
    values: list[int] = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 4:
            raise FormatError(f"{path}: wrong field count", lineno)
        sid, src, week_s, value_s = fields
        if subtopic_id is None:
            subtopic_id, source = sid, src
        elif (sid, src) != (subtopic_id, source):
            raise FormatError(f"{path}: mixed series labels", lineno)
        try:
            weeks.append(dt.date.fromisoformat(week_s))
            values.append(int(value_s))
        except ValueError:
            raise FormatError(f"{path}: bad row {line!r}", lineno) from None
    if not weeks:
        raise SchemaError(f"{path}: no data rows")
    return RawSeries(subtopic_id=subtopic_id, source=source, week_start=tuple(weeks), values=tuple(values))


def write_engagement_csv(path: str | Path, series: EngagementSeries) -> None:
    lines = [ENGAGEMENT_HEADER]
    rows = zip(series.week_start, series.engagement_sum, series.post_count, series.followers_sum)
    for week, eng, count, followers in rows:
        lines.append(f"{series.subtopic_id},{series.platform},{week.isoformat()},{eng},{count},{followers}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_engagement_csv(path: str | Path) -> EngagementSeries:
    path = Path(path)
    lines = [l for l in path.read_text(encoding="utf-8").splitlines() if l.strip()]
    if not lines or lines[0] != ENGAGEMENT_HEADER:
        raise SchemaError(f"{path}: expected header {ENGAGEMENT_HEADER!r}")
    subtopic_id = platform = None
    weeks: list[dt.date] = []
    cols: tuple[list[int], list[int], list[int]] = ([], [], [])
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 6:
            raise FormatError(f"{path}: wrong field count", lineno)
        sid, plat, week_s, *rest = fields
        if subtopic_id is None:
            subtopic_id, platform = sid, plat
        elif (sid, plat) != (subtopic_id, platform):
            raise FormatError(f"{path}: mixed series labels", lineno)
        try:
            weeks.append(dt.date.fromisoformat(week_s))
            for col, raw in zip(cols, rest):
                col.append(int(raw))
        except ValueError:
            raise FormatError(f"{path}: bad row {line!r}", lineno) from None
    if not weeks:
        raise SchemaError(f"{path}: no data rows")
    return EngagementSeries(
        subtopic_id=subtopic_id,
        platform=platform,
        week_start=tuple(weeks),
        engagement_sum=tuple(cols[0]),
        post_count=tuple(cols[1]),
        followers_sum=tuple(cols[2]),
    )


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def fresh_dir(path: str | Path) -> Path:
    """Recreate `path` as an empty directory.

    Pipeline stages own their output subtrees outright; starting from an
    empty directory keeps files from an earlier, differently configured
    run from leaking into this run's listing.
    """
    path = Path(path)
    if path.is_dir():
        shutil.rmtree(path)
    path.mkdir(parents=True)
    return path

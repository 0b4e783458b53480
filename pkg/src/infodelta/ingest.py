"""Readers for the evidence sources: post dumps and search-interest exports.

Post dumps are flat CSV files with the header
`platform,posted_at,account_id,followers_at_post,total_engagement,text`
(posted_at in RFC 3339).  Search-interest exports follow the usual layout
of a category line, a blank line, a `Week,<label>` header (the localized
`Settimana` is accepted too) and weekly `YYYY-MM-DD,value` rows where
`<1` stands for a volume too low to be reported.
"""

from __future__ import annotations

import csv
import datetime as dt
import re
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import (
    EmptyFileError,
    FormatError,
    RangeError,
    RowError,
    SchemaError,
)
from .queries import match_tokens, tokenize
from .seriesops import DateWindow, RawSeries, monday_of
from .taxonomy import Taxonomy

POSTS_HEADER = ["platform", "posted_at", "account_id", "followers_at_post", "total_engagement", "text"]

_PLATFORMS = {"facebook", "instagram", "other"}


@dataclass(frozen=True)
class PostRecord:
    """One social post with its audience and interaction counts."""

    platform: str
    posted_at: dt.datetime  # UTC, second precision
    account_id: str
    followers_at_post: int
    total_engagement: int
    text: str
    subtopic_id: str | None = None


@dataclass
class PostIngestResult:
    """Posts kept from a dump plus the skip accounting for the rest."""

    records: list[PostRecord]
    skipped_out_of_window: int = 0
    row_errors: list[RowError] = field(default_factory=list)

    @property
    def skip_report(self) -> dict:
        return {
            "out_of_window": self.skipped_out_of_window,
            "bad_rows": [str(e) for e in self.row_errors],
        }


def parse_rfc3339(text: str) -> dt.datetime:
    """Parse an RFC 3339 timestamp to a UTC datetime at second precision."""
    cleaned = text.strip()
    if cleaned.endswith(("Z", "z")):
        cleaned = cleaned[:-1] + "+00:00"
    parsed = dt.datetime.fromisoformat(cleaned)
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=dt.timezone.utc)
    return parsed.astimezone(dt.timezone.utc).replace(microsecond=0)


def _parse_count(raw: str, name: str, line: int) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise RowError(f"{name} is not an integer: {raw!r}", line) from None
    if value < 0:
        raise RowError(f"{name} is negative: {value}", line)
    return value


def read_posts(path: str | Path, window: DateWindow) -> PostIngestResult:
    """Read a post dump, keeping rows whose timestamp falls in the window.

    Out-of-window rows and unusable rows are skipped and counted, never
    fatal; a missing header column raises SchemaError.
    """
    path = Path(path)
    result = PostIngestResult(records=[])
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in POSTS_HEADER if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing columns {missing}")
        for row in reader:
            line = reader.line_num
            try:
                platform = (row["platform"] or "").strip().lower()
                if platform not in _PLATFORMS:
                    raise RowError(f"unknown platform {row['platform']!r}", line)
                try:
                    posted_at = parse_rfc3339(row["posted_at"] or "")
                except ValueError:
                    raise RowError(f"unparseable timestamp {row['posted_at']!r}", line) from None
                record = PostRecord(
                    platform=platform,
                    posted_at=posted_at,
                    account_id=(row["account_id"] or "").strip(),
                    followers_at_post=_parse_count(row["followers_at_post"] or "", "followers_at_post", line),
                    total_engagement=_parse_count(row["total_engagement"] or "", "total_engagement", line),
                    text=row["text"] or "",
                )
            except RowError as err:
                result.row_errors.append(err)
                continue
            if not window.contains_timestamp(record.posted_at):
                result.skipped_out_of_window += 1
                continue
            result.records.append(record)
    return result


def assign_subtopics(posts: list[PostRecord], taxonomy: Taxonomy) -> list[PostRecord]:
    """Tag each post with the first subtopic (in taxonomy order) whose
    post query matches its text; non-matching posts stay untagged."""
    subtopics = taxonomy.subtopics
    assigned = []
    for post in posts:
        tokens = tokenize(post.text)
        subtopic_id = None
        for sub in subtopics:
            if match_tokens(sub.post_query, tokens):
                subtopic_id = sub.id
                break
        assigned.append(replace(post, subtopic_id=subtopic_id))
    return assigned


# ---------------------------------------------------------------------------
# Search-interest exports

_TRENDS_HEADER_RE = re.compile(r"^(week|settimana)\s*,", re.IGNORECASE)
_TRENDS_ROW_RE = re.compile(r"^(\d{4}-\d{2}-\d{2}),(.*)$")


def read_trends_csv(path: str | Path, subtopic_id: str | None = None) -> RawSeries:
    """Parse a weekly search-interest export into a demand series.

    `<1` maps to 0 and week dates are re-anchored to the Monday of their
    ISO week.  When `subtopic_id` is omitted the label from the header row
    is used.
    """
    path = Path(path)
    lines = path.read_text(encoding="utf-8-sig").splitlines()
    if not any(line.strip() for line in lines):
        raise EmptyFileError(f"{path}: file is empty")
    label = None
    weeks: list[dt.date] = []
    values: list[int] = []
    in_data = False
    for lineno, raw_line in enumerate(lines, start=1):
        line = raw_line.strip()
        if not in_data:
            m = _TRENDS_HEADER_RE.match(line)
            if m:
                label = line.split(",", 1)[1].strip()
                in_data = True
            continue
        if not line:
            continue
        m = _TRENDS_ROW_RE.match(line)
        if not m:
            raise FormatError(f"malformed row {line!r}", lineno)
        try:
            day = dt.date.fromisoformat(m.group(1))
        except ValueError:
            raise FormatError(f"invalid date {m.group(1)!r}", lineno) from None
        raw_value = m.group(2).strip().strip('"')
        if raw_value == "<1":
            value = 0
        else:
            try:
                value = int(raw_value)
            except ValueError:
                raise FormatError(f"non-integer value {raw_value!r}", lineno) from None
            if value < 0 or value > 100:
                raise RangeError(f"line {lineno}: value {value} outside the 0-100 scale")
        weeks.append(monday_of(day))
        values.append(value)

    if not in_data:
        raise FormatError("no Week/Settimana header row found", len(lines) or 1)
    if not weeks:
        raise EmptyFileError(f"{path}: no data rows")
    return RawSeries(
        subtopic_id=subtopic_id if subtopic_id is not None else (label or path.stem),
        source="trends",
        week_start=tuple(weeks),
        values=tuple(values),
    )

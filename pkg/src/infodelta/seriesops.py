"""Weekly series machinery: calendar bucketing, aggregation, 0-100 rescaling.

Weeks are ISO weeks anchored on Monday.  A raw series holds non-negative
integer counts over a gap-free run of consecutive Mondays; rescaling maps
it onto the 0-100 scale where 100 is the window maximum, using half-up
rounding computed in exact integer arithmetic.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import NoOverlapError, WindowError

WEEK = dt.timedelta(days=7)

PLATFORMS = ("facebook", "instagram", "other")
SOURCES = ("facebook", "instagram", "gdelt", "trends", "other")


def week_of(timestamp: dt.datetime) -> dt.date:
    """Monday (ISO week start) of the week containing the UTC timestamp.

    Naive datetimes are taken to already be in UTC.
    """
    if timestamp.tzinfo is not None:
        timestamp = timestamp.astimezone(dt.timezone.utc)
    day = timestamp.date()
    return day - dt.timedelta(days=day.weekday())


def monday_of(day: dt.date) -> dt.date:
    """Monday of the ISO week containing a calendar date."""
    return day - dt.timedelta(days=day.weekday())


@dataclass(frozen=True)
class DateWindow:
    """Analysis window expressed as first and last Monday, both inclusive."""

    start: dt.date
    end: dt.date

    def __post_init__(self):
        if self.start.weekday() != 0 or self.end.weekday() != 0:
            raise WindowError(f"window bounds must be Mondays: {self.start} .. {self.end}")
        if self.start > self.end:
            raise WindowError(f"window start {self.start} is after end {self.end}")

    @property
    def n_weeks(self) -> int:
        return (self.end - self.start).days // 7 + 1

    def weeks(self) -> list[dt.date]:
        return [self.start + i * WEEK for i in range(self.n_weeks)]

    def index_of(self, week: dt.date) -> int | None:
        """Index of a Monday within the window, None if outside."""
        if week < self.start or week > self.end:
            return None
        return (week - self.start).days // 7

    def contains_timestamp(self, timestamp: dt.datetime) -> bool:
        return self.index_of(week_of(timestamp)) is not None

    def last_day(self) -> dt.date:
        return self.end + dt.timedelta(days=6)


def _check_weeks(week_start: Sequence[dt.date]) -> None:
    if not week_start:
        raise WindowError("series must cover at least one week")
    for i, day in enumerate(week_start):
        if day.weekday() != 0:
            raise WindowError(f"week_start[{i}] = {day} is not a Monday")
        if i and day - week_start[i - 1] != WEEK:
            raise WindowError(f"weeks not consecutive at index {i}: {week_start[i-1]} -> {day}")


@dataclass(frozen=True)
class RawSeries:
    """Per-subtopic weekly counts from one source, gap-free."""

    subtopic_id: str
    source: str
    week_start: tuple[dt.date, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "week_start", tuple(self.week_start))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.source not in SOURCES:
            raise WindowError(f"unknown source {self.source!r}")
        _check_weeks(self.week_start)
        if len(self.values) != len(self.week_start):
            raise WindowError("values and week_start must have the same length")
        if any(v < 0 for v in self.values):
            raise WindowError("series values must be non-negative")


@dataclass(frozen=True)
class NormalizedSeries:
    """Weekly values on the 0-100 scale (rescaled supply or raw demand)."""

    subtopic_id: str
    source: str
    week_start: tuple[dt.date, ...]
    values: tuple[int, ...]
    degenerate: bool = False  # all-zero underlying raw series

    def __post_init__(self):
        object.__setattr__(self, "week_start", tuple(self.week_start))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        _check_weeks(self.week_start)
        if len(self.values) != len(self.week_start):
            raise WindowError("values and week_start must have the same length")
        if any(v < 0 or v > 100 for v in self.values):
            raise WindowError("normalized values must lie in [0, 100]")


@dataclass(frozen=True)
class EngagementSeries:
    """Weekly interaction totals for one subtopic on one platform.

    followers_sum accumulates followers_at_post over the week's posts so a
    mean audience size can be recovered for the engagement regression.
    """

    subtopic_id: str
    platform: str
    week_start: tuple[dt.date, ...]
    engagement_sum: tuple[int, ...]
    post_count: tuple[int, ...]
    followers_sum: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "week_start", tuple(self.week_start))
        object.__setattr__(self, "engagement_sum", tuple(int(v) for v in self.engagement_sum))
        object.__setattr__(self, "post_count", tuple(int(v) for v in self.post_count))
        followers = self.followers_sum or tuple(0 for _ in self.week_start)
        object.__setattr__(self, "followers_sum", tuple(int(v) for v in followers))
        _check_weeks(self.week_start)
        n = len(self.week_start)
        if not (len(self.engagement_sum) == len(self.post_count) == len(self.followers_sum) == n):
            raise WindowError("engagement series columns must all have the same length")
        if any(v < 0 for col in (self.engagement_sum, self.post_count, self.followers_sum) for v in col):
            raise WindowError("engagement series values must be non-negative")


def aggregate_weekly(
    posts,
    subtopic_id: str,
    window: DateWindow,
    platform: str | None = None,
) -> tuple[RawSeries, EngagementSeries]:
    """Bucket subtopic-assigned posts into weekly counts and engagement sums.

    Weeks with no posts get zeros; the output covers the full window with
    no gaps.  When `platform` is given only that platform's posts count
    and the outputs are labeled with it; otherwise all posts count and the
    label falls back to the posts' sole platform (or "other" when mixed
    or empty).
    """
    n = window.n_weeks
    counts = [0] * n
    engagement = [0] * n
    followers = [0] * n
    seen_platforms: set[str] = set()
    for post in posts:
        if post.subtopic_id != subtopic_id:
            continue
        if platform is not None and post.platform != platform:
            continue
        idx = window.index_of(week_of(post.posted_at))
        if idx is None:
            continue
        counts[idx] += 1
        engagement[idx] += post.total_engagement
        followers[idx] += post.followers_at_post
        seen_platforms.add(post.platform)

    if platform is not None:
        label = platform
    elif len(seen_platforms) == 1:
        label = seen_platforms.pop()
    else:
        label = "other"

    weeks = tuple(window.weeks())
    raw = RawSeries(subtopic_id=subtopic_id, source=label, week_start=weeks, values=tuple(counts))
    eng = EngagementSeries(
        subtopic_id=subtopic_id,
        platform=label,
        week_start=weeks,
        engagement_sum=tuple(engagement),
        post_count=tuple(counts),
        followers_sum=tuple(followers),
    )
    return raw, eng


def _rescale_value(value: int, peak: int) -> int:
    # floor(100*value/peak + 0.5) without float arithmetic, so positive
    # integer scaling of the whole series cannot perturb the rounding.
    return (200 * value + peak) // (2 * peak)


def rescale(series: RawSeries) -> NormalizedSeries:
    """Map raw weekly counts onto 0-100 with 100 at the window maximum.

    Half-up rounding of 100*v/max; an all-zero series maps to all zeros
    with the degenerate flag set instead of failing.
    """
    peak = max(series.values)
    if peak == 0:
        values = tuple(0 for _ in series.values)
        degenerate = True
    else:
        values = tuple(_rescale_value(v, peak) for v in series.values)
        degenerate = False
    return NormalizedSeries(
        subtopic_id=series.subtopic_id,
        source=series.source,
        week_start=series.week_start,
        values=values,
        degenerate=degenerate,
    )


def demand_passthrough(series: RawSeries) -> NormalizedSeries:
    """Wrap an already 0-100 demand series without rescaling it.

    Search-interest exports are normalized at the provider; re-normalizing
    a window clipped out of a longer export would distort them.
    """
    if any(v > 100 for v in series.values):
        raise WindowError("demand passthrough requires values in [0, 100]")
    return NormalizedSeries(
        subtopic_id=series.subtopic_id,
        source=series.source,
        week_start=series.week_start,
        values=series.values,
        degenerate=all(v == 0 for v in series.values),
    )


class AlignedPair(NamedTuple):
    week_start: tuple[dt.date, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]


def align(a: NormalizedSeries, b: NormalizedSeries) -> AlignedPair:
    """Restrict two series to their common weeks, preserving order."""
    start = max(a.week_start[0], b.week_start[0])
    end = min(a.week_start[-1], b.week_start[-1])
    if start > end:
        raise NoOverlapError(
            f"series do not overlap: {a.week_start[0]}..{a.week_start[-1]} vs "
            f"{b.week_start[0]}..{b.week_start[-1]}"
        )
    ia = (start - a.week_start[0]).days // 7
    ib = (start - b.week_start[0]).days // 7
    n = (end - start).days // 7 + 1
    weeks = a.week_start[ia : ia + n]
    return AlignedPair(weeks, a.values[ia : ia + n], b.values[ib : ib + n])


def clip(series: RawSeries, window: DateWindow) -> RawSeries:
    """Restrict a raw series to the part of it lying inside the window."""
    start = max(series.week_start[0], window.start)
    end = min(series.week_start[-1], window.end)
    if start > end:
        raise NoOverlapError("series lies entirely outside the window")
    i = (start - series.week_start[0]).days // 7
    n = (end - start).days // 7 + 1
    return RawSeries(
        subtopic_id=series.subtopic_id,
        source=series.source,
        week_start=series.week_start[i : i + n],
        values=series.values[i : i + n],
    )


def cumulative(series: NormalizedSeries) -> int:
    """Total of the normalized values over the whole series."""
    return sum(series.values)

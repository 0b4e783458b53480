"""Calendar bucketing, weekly aggregation, and 0-100 rescaling."""

import datetime as dt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infodelta.errors import NoOverlapError, WindowError
from infodelta.ingest import PostRecord
from infodelta.seriesops import (
    DateWindow,
    NormalizedSeries,
    RawSeries,
    aggregate_weekly,
    align,
    clip,
    cumulative,
    demand_passthrough,
    monday_of,
    rescale,
    week_of,
)

UTC = dt.timezone.utc


def _ts(text):
    return dt.datetime.fromisoformat(text).replace(tzinfo=UTC)


def _post(when, platform="facebook", engagement=0, followers=100, subtopic_id="s"):
    return PostRecord(
        platform=platform,
        posted_at=_ts(when),
        account_id="a",
        followers_at_post=followers,
        total_engagement=engagement,
        text="",
        subtopic_id=subtopic_id,
    )


class TestWeekOf:
    def test_monday_is_identity(self):
        assert week_of(_ts("2022-12-26T09:00:00")) == dt.date(2022, 12, 26)

    def test_sunday_maps_back(self):
        assert week_of(_ts("2023-01-01T23:59:59")) == dt.date(2022, 12, 26)

    def test_midweek(self):
        assert week_of(_ts("2024-08-14T00:00:00")) == dt.date(2024, 8, 12)

    def test_timezone_normalized_before_bucketing(self):
        # 23:30 Sunday in UTC+3 is still Sunday 20:30 UTC
        aware = dt.datetime(2023, 1, 2, 1, 30, tzinfo=dt.timezone(dt.timedelta(hours=3)))
        assert week_of(aware) == dt.date(2022, 12, 26)

    @given(st.dates(dt.date(2000, 1, 6), dt.date(2030, 12, 1)), st.integers(0, 6))
    def test_constant_within_week_and_idempotent(self, day, offset):
        monday = monday_of(day)
        inside = dt.datetime.combine(monday + dt.timedelta(days=offset), dt.time(12), tzinfo=UTC)
        assert week_of(inside) == monday
        assert monday_of(monday) == monday


class TestDateWindow:
    def test_paper_window_is_86_weeks(self):
        window = DateWindow(dt.date(2022, 12, 26), dt.date(2024, 8, 12))
        assert window.n_weeks == 86
        assert window.weeks()[0] == dt.date(2022, 12, 26)
        assert window.weeks()[-1] == dt.date(2024, 8, 12)

    def test_non_monday_rejected(self):
        with pytest.raises(WindowError):
            DateWindow(dt.date(2023, 1, 1), dt.date(2023, 1, 9))

    def test_reversed_rejected(self):
        with pytest.raises(WindowError):
            DateWindow(dt.date(2023, 1, 9), dt.date(2023, 1, 2))

    def test_index_and_containment(self):
        window = DateWindow(dt.date(2023, 1, 2), dt.date(2023, 1, 16))
        assert window.index_of(dt.date(2023, 1, 9)) == 1
        assert window.index_of(dt.date(2023, 1, 23)) is None
        assert window.contains_timestamp(_ts("2023-01-22T23:00:00"))  # Sunday of last week
        assert not window.contains_timestamp(_ts("2023-01-23T00:00:00"))


class TestAggregateWeekly:
    def test_hand_bucket(self):
        window = DateWindow(dt.date(2022, 12, 26), dt.date(2022, 12, 26))
        posts = [_post("2022-12-26T10:00:00"), _post("2022-12-28T10:00:00")]
        raw, _ = aggregate_weekly(posts, "s", window)
        assert raw.values == (2,)

    def test_empty_posts_full_window_of_zeros(self):
        window = DateWindow(dt.date(2023, 1, 2), dt.date(2023, 1, 23))
        raw, eng = aggregate_weekly([], "s", window)
        assert raw.values == (0, 0, 0, 0)
        assert eng.engagement_sum == (0, 0, 0, 0)

    def test_engagement_summed(self):
        window = DateWindow(dt.date(2023, 1, 2), dt.date(2023, 1, 2))
        posts = [_post("2023-01-03T10:00:00", engagement=10), _post("2023-01-04T10:00:00", engagement=32)]
        _, eng = aggregate_weekly(posts, "s", window)
        assert eng.engagement_sum == (42,)

    def test_platform_filter(self):
        window = DateWindow(dt.date(2023, 1, 2), dt.date(2023, 1, 2))
        posts = [_post("2023-01-03T10:00:00"), _post("2023-01-04T11:00:00", platform="instagram")]
        raw, _ = aggregate_weekly(posts, "s", window, platform="instagram")
        assert raw.values == (1,)
        assert raw.source == "instagram"

    def test_other_subtopics_ignored(self):
        window = DateWindow(dt.date(2023, 1, 2), dt.date(2023, 1, 2))
        posts = [_post("2023-01-03T10:00:00", subtopic_id="t")]
        raw, _ = aggregate_weekly(posts, "s", window)
        assert raw.values == (0,)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.tuples(st.integers(0, 27), st.integers(0, 500)), max_size=60))
    def test_conservation(self, offsets):
        window = DateWindow(dt.date(2023, 1, 2), dt.date(2023, 1, 23))
        posts = [
            _post(
                (dt.datetime(2023, 1, 2, 8, tzinfo=UTC) + dt.timedelta(days=day)).isoformat()[:19],
                engagement=engagement,
            )
            for day, engagement in offsets
        ]
        raw, eng = aggregate_weekly(posts, "s", window)
        assert sum(raw.values) == len(posts)
        assert sum(eng.engagement_sum) == sum(p.total_engagement for p in posts)


class TestRescale:
    def _raw(self, values):
        weeks = [dt.date(2023, 1, 2) + dt.timedelta(weeks=i) for i in range(len(values))]
        return RawSeries("s", "facebook", tuple(weeks), tuple(values))

    def test_documented_example(self):
        assert rescale(self._raw([4, 8, 2])).values == (50, 100, 25)

    def test_all_zero_degenerate(self):
        out = rescale(self._raw([0, 0, 0]))
        assert out.values == (0, 0, 0)
        assert out.degenerate

    def test_constant_series_all_100(self):
        assert rescale(self._raw([7, 7, 7])).values == (100, 100, 100)

    def test_half_up_rounding(self):
        # 1/8 -> 12.5 rounds up to 13
        assert rescale(self._raw([1, 8])).values == (13, 100)

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(0, 10_000), min_size=1, max_size=120))
    def test_bounds_peak_and_order(self, values):
        out = rescale(self._raw(values)).values
        assert all(0 <= v <= 100 for v in out)
        if any(values):
            assert max(out) == 100
        for i in range(len(values)):
            for j in range(len(values)):
                if values[i] <= values[j]:
                    assert out[i] <= out[j]

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(0, 10_000), min_size=1, max_size=120), st.integers(1, 97))
    def test_scale_invariance_exact(self, values, k):
        assert rescale(self._raw(values)).values == rescale(self._raw([k * v for v in values])).values


class TestPassthroughAlignClip:
    def _norm(self, start, values, source="trends"):
        weeks = tuple(start + dt.timedelta(weeks=i) for i in range(len(values)))
        return NormalizedSeries("s", source, weeks, tuple(values))

    def test_passthrough_keeps_values(self):
        raw = RawSeries("s", "trends", (dt.date(2023, 1, 2),), (37,))
        assert demand_passthrough(raw).values == (37,)

    def test_passthrough_rejects_out_of_scale(self):
        raw = RawSeries("s", "trends", (dt.date(2023, 1, 2),), (101,))
        with pytest.raises(WindowError):
            demand_passthrough(raw)

    def test_align_identical(self):
        a = self._norm(dt.date(2023, 1, 2), [1, 2, 3])
        weeks, left, right = align(a, a)
        assert left == right == (1, 2, 3)
        assert len(weeks) == 3

    def test_align_offset_by_two(self):
        a = self._norm(dt.date(2023, 1, 2), list(range(12)))
        b = self._norm(dt.date(2023, 1, 16), list(range(10, 22)))
        weeks, left, right = align(a, b)
        assert len(weeks) == 10
        assert left == tuple(range(2, 12))
        assert right == tuple(range(10, 20))

    def test_align_disjoint(self):
        a = self._norm(dt.date(2023, 1, 2), [1])
        b = self._norm(dt.date(2023, 6, 5), [1])
        with pytest.raises(NoOverlapError):
            align(a, b)

    def test_clip_to_window(self):
        raw = RawSeries(
            "s",
            "trends",
            tuple(dt.date(2023, 1, 2) + dt.timedelta(weeks=i) for i in range(8)),
            tuple(range(8)),
        )
        window = DateWindow(dt.date(2023, 1, 16), dt.date(2023, 1, 30))
        out = clip(raw, window)
        assert out.values == (2, 3, 4)
        assert out.week_start[0] == dt.date(2023, 1, 16)

    def test_cumulative(self):
        assert cumulative(self._norm(dt.date(2023, 1, 2), [1, 2, 3])) == 6
        assert cumulative(self._norm(dt.date(2023, 1, 2), [0, 0])) == 0


class TestSeriesValidation:
    def test_gap_rejected(self):
        weeks = (dt.date(2023, 1, 2), dt.date(2023, 1, 16))
        with pytest.raises(WindowError):
            RawSeries("s", "facebook", weeks, (1, 2))

    def test_negative_rejected(self):
        with pytest.raises(WindowError):
            RawSeries("s", "facebook", (dt.date(2023, 1, 2),), (-1,))

    def test_unknown_source_rejected(self):
        with pytest.raises(WindowError):
            RawSeries("s", "twitter", (dt.date(2023, 1, 2),), (1,))

    def test_normalized_range_enforced(self):
        with pytest.raises(WindowError):
            NormalizedSeries("s", "facebook", (dt.date(2023, 1, 2),), (101,))

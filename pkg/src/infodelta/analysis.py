"""Supply/demand analytics: delta series, episodes, lagged correlation, OLS.

The weekly delta is normalized supply minus normalized demand, in
[-100, 100].  Sustained strictly-positive excursions above the mean supply
are overabundance episodes; sustained strictly-negative excursions below
minus the mean demand are information voids.  Cross-correlation scans a
symmetric lag window with the convention that r(k) is the Pearson
correlation of (x_t, y_{t+k}), so with x = supply and y = demand a
positive peak lag means demand lags supply.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass
from statistics import fmean
from typing import Sequence

import numpy as np

from .errors import (
    AlignmentError,
    RankDeficientError,
    TooShortError,
)
from .seriesops import EngagementSeries, NormalizedSeries

# Lags with fewer overlapping samples than this are undefined.
MIN_OVERLAP = 3
RANK_TOLERANCE = 1e-10


@dataclass(frozen=True)
class DeltaSeries:
    """Weekly supply-minus-demand values for one subtopic and supply source."""

    subtopic_id: str
    supply_source: str
    week_start: tuple[dt.date, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "week_start", tuple(self.week_start))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != len(self.week_start):
            raise AlignmentError("delta values and weeks must have the same length")
        if any(v < -100 or v > 100 for v in self.values):
            raise AlignmentError("delta values must lie in [-100, 100]")


@dataclass(frozen=True)
class Thresholds:
    """Episode thresholds: mean supply above zero, minus mean demand below."""

    upper: float
    lower: float

    def __post_init__(self):
        if not (self.lower <= 0.0 <= self.upper):
            raise AlignmentError(f"thresholds must straddle zero: {self.lower}, {self.upper}")


@dataclass(frozen=True)
class Episode:
    """A maximal run of weeks strictly beyond one of the thresholds."""

    kind: str  # "void" | "overabundance"
    start_week: dt.date
    end_week: dt.date  # inclusive
    peak_value: int  # most extreme delta in the run
    mean_value: float


@dataclass(frozen=True)
class LagCorrelation:
    """Pearson r per lag over a symmetric window, with the selected peak.

    r entries are None where the overlap is too short or a windowed
    segment has zero variance.  peak_lag/peak_r are None when no lag has
    a defined correlation.
    """

    lags: tuple[int, ...]
    r: tuple[float | None, ...]
    peak_lag: int | None
    peak_r: float | None

    def r_at(self, lag: int) -> float | None:
        return self.r[self.lags.index(lag)]


def _require_same_weeks(a_weeks, b_weeks) -> None:
    if tuple(a_weeks) != tuple(b_weeks):
        raise AlignmentError("series cover different weeks; align them first")


def delta(supply: NormalizedSeries, demand: NormalizedSeries) -> DeltaSeries:
    """Elementwise normalized supply minus normalized demand."""
    _require_same_weeks(supply.week_start, demand.week_start)
    values = tuple(s - d for s, d in zip(supply.values, demand.values))
    return DeltaSeries(
        subtopic_id=supply.subtopic_id,
        supply_source=supply.source,
        week_start=supply.week_start,
        values=values,
    )


def thresholds(supply: NormalizedSeries, demand: NormalizedSeries) -> Thresholds:
    """Mean supply as the upper threshold, minus mean demand as the lower."""
    _require_same_weeks(supply.week_start, demand.week_start)
    upper = fmean(supply.values)
    lower = -fmean(demand.values) + 0.0  # avoid -0.0
    return Thresholds(upper=upper, lower=lower)


def detect_episodes(delta_series: DeltaSeries, th: Thresholds, min_len: int = 1) -> list[Episode]:
    """Maximal runs of weeks strictly beyond a threshold, ordered by start.

    Weeks exactly on a threshold are neutral and break runs.
    """
    if min_len < 1:
        raise ValueError("min_len must be >= 1")
    episodes: list[Episode] = []
    run_kind: str | None = None
    run_start = 0
    values = delta_series.values

    def flush(end_index: int) -> None:
        if run_kind is None:
            return
        length = end_index - run_start
        if length < min_len:
            return
        run = values[run_start:end_index]
        peak = max(run) if run_kind == "overabundance" else min(run)
        episodes.append(
            Episode(
                kind=run_kind,
                start_week=delta_series.week_start[run_start],
                end_week=delta_series.week_start[end_index - 1],
                peak_value=peak,
                mean_value=fmean(run),
            )
        )

    for i, v in enumerate(values):
        kind = "overabundance" if v > th.upper else "void" if v < th.lower else None
        if kind != run_kind:
            flush(i)
            run_kind = kind
            run_start = i
    flush(len(values))
    return episodes


def _pearson(x: np.ndarray, y: np.ndarray) -> float | None:
    xd = x - x.mean()
    yd = y - y.mean()
    denom = math.sqrt(float(np.dot(xd, xd)) * float(np.dot(yd, yd)))
    if denom == 0.0:
        return None
    r = float(np.dot(xd, yd)) / denom
    return max(-1.0, min(1.0, r))


def cross_correlation(x: Sequence[float], y: Sequence[float], max_lag: int) -> LagCorrelation:
    """Pearson r of (x_t, y_{t+k}) for each lag k in [-max_lag, max_lag].

    Positive k means y lags x by k weeks (x leads).  The peak is the
    maximum defined r; ties go to the smallest |lag|, then to the negative
    lag.
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    n = xa.size
    if n != ya.size:
        raise AlignmentError("series must have the same length")
    if n < MIN_OVERLAP:
        raise TooShortError(f"need at least {MIN_OVERLAP} samples, got {n}")
    if max_lag < 0 or max_lag > n - MIN_OVERLAP:
        raise ValueError(f"max_lag must lie in [0, {n - MIN_OVERLAP}] for length {n}")

    lags = tuple(range(-max_lag, max_lag + 1))
    rs: list[float | None] = []
    for k in lags:
        if k >= 0:
            xs, ys = xa[: n - k], ya[k:]
        else:
            xs, ys = xa[-k:], ya[: n + k]
        rs.append(_pearson(xs, ys) if xs.size >= MIN_OVERLAP else None)

    defined = [(r, lag) for lag, r in zip(lags, rs) if r is not None]
    if defined:
        # max r, ties broken by smallest |lag|, then negative before positive
        peak_r, peak_lag = max(defined, key=lambda p: (p[0], -abs(p[1]), 1 if p[1] < 0 else 0))
    else:
        peak_r = peak_lag = None
    return LagCorrelation(lags=lags, r=tuple(rs), peak_lag=peak_lag, peak_r=peak_r)


@dataclass(frozen=True)
class CorrelationOutcome:
    """A correlation that may be undefined, with the reason spelled out."""

    r: float | None
    undefined_reason: str | None = None

    @property
    def defined(self) -> bool:
        return self.r is not None


def engagement_correlation(delta_series: DeltaSeries, eng: EngagementSeries) -> CorrelationOutcome:
    """Pearson correlation of weekly delta with log10(1 + engagement).

    Zero variance on either side yields an undefined outcome with a
    reason code rather than a silent zero.
    """
    _require_same_weeks(delta_series.week_start, eng.week_start)
    x = np.asarray(delta_series.values, dtype=float)
    y = np.log10(1.0 + np.asarray(eng.engagement_sum, dtype=float))
    if np.ptp(x) == 0.0:
        return CorrelationOutcome(None, "zero_variance_delta")
    if np.ptp(y) == 0.0:
        return CorrelationOutcome(None, "zero_variance_engagement")
    r = _pearson(x, y)
    if r is None:
        return CorrelationOutcome(None, "zero_variance_delta")
    return CorrelationOutcome(r, None)


def ols_fit(y: Sequence[float], X: Sequence[Sequence[float]]) -> tuple[np.ndarray, float]:
    """Least-squares fit of y on a design matrix that includes its own
    intercept column; returns (coefficients, r_squared).

    Raises RankDeficientError when the smallest singular value falls below
    1e-10 of the largest.
    """
    ya = np.asarray(y, dtype=float)
    Xa = np.asarray(X, dtype=float)
    if Xa.ndim != 2:
        raise ValueError("X must be a 2-d design matrix")
    n, p = Xa.shape
    if ya.shape != (n,):
        raise ValueError(f"y has length {ya.size}, X has {n} rows")
    if n < p:
        raise ValueError(f"underdetermined system: {n} rows for {p} columns")
    singular = np.linalg.svd(Xa, compute_uv=False)
    if singular[-1] < RANK_TOLERANCE * singular[0]:
        raise RankDeficientError(
            f"design matrix is rank-deficient (condition {singular[0] / max(singular[-1], 1e-300):.3e})"
        )
    beta, *_ = np.linalg.lstsq(Xa, ya, rcond=None)
    residuals = ya - Xa @ beta
    ssr = float(residuals @ residuals)
    sst = float(((ya - ya.mean()) ** 2).sum())
    if sst > 0.0:
        r_squared = 1.0 - ssr / sst
    else:
        r_squared = 1.0 if ssr <= 1e-24 else 0.0
    return beta, r_squared

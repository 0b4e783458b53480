"""News-volume timeline client for the GDELT DOC 2.0 API.

Requests ask for the raw daily article-count timeline of a boolean query
restricted to one source country; daily counts are summed into ISO weeks.
Two transports exist: a live HTTP transport that rate-limits itself to one
request per five seconds and retries transient failures with exponential
backoff, and a fixture transport that replays recorded response bodies
from disk (one file per request, named by the SHA-256 of the request URL).
"""

from __future__ import annotations

import datetime as dt
import hashlib
import json
import time
from pathlib import Path
from urllib.parse import quote

import requests

from .errors import ApiFormatError, EmptyQueryError, NetworkError
from .queries import BooleanQuery, to_gdelt
from .seriesops import DateWindow, RawSeries, monday_of

BASE_URL = "https://api.gdeltproject.org/api/v2/doc/doc"

# HTTP statuses treated as transient and retried.
TRANSIENT_STATUSES = {429, 500, 502, 503, 504}
MAX_ATTEMPTS = 3
MIN_INTERVAL = 5.0


def build_url(query: BooleanQuery, country: str, window: DateWindow) -> str:
    """Request URL for the raw-volume timeline of a query in one country."""
    q = f"{to_gdelt(query)} sourcecountry:{country}"
    start = f"{window.start:%Y%m%d}000000"
    end = f"{window.last_day():%Y%m%d}235959"
    return (
        f"{BASE_URL}?query={quote(q)}&mode=timelinevolraw&format=json"
        f"&startdatetime={start}&enddatetime={end}"
    )


def fixture_name(url: str) -> str:
    """File name a recorded response body is stored under."""
    return hashlib.sha256(url.encode("utf-8")).hexdigest() + ".json"


class FixtureTransport:
    """Replays recorded response bodies from a directory."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def get(self, url: str) -> bytes:
        path = self.directory / fixture_name(url)
        if not path.exists():
            raise NetworkError(f"no recorded fixture for {url} (expected {path.name})")
        return path.read_bytes()


class LiveTransport:
    """Rate-limited HTTP GET with bounded retries on transient failures.

    A request is attempted at most `max_attempts` times in total; attempts
    are spaced at least `min_interval` seconds apart, plus exponential
    backoff after a transient failure.  The clock and sleep functions are
    injectable for testing.
    """

    def __init__(
        self,
        min_interval: float = MIN_INTERVAL,
        max_attempts: int = MAX_ATTEMPTS,
        backoff_base: float = 1.0,
        timeout: float = 30.0,
        session: requests.Session | None = None,
        sleep=time.sleep,
        clock=time.monotonic,
    ):
        self.min_interval = min_interval
        self.max_attempts = max_attempts
        self.backoff_base = backoff_base
        self.timeout = timeout
        self.session = session or requests.Session()
        self._sleep = sleep
        self._clock = clock
        self._last_request: float | None = None

    def _wait_for_slot(self) -> None:
        if self._last_request is not None:
            elapsed = self._clock() - self._last_request
            if elapsed < self.min_interval:
                self._sleep(self.min_interval - elapsed)

    def get(self, url: str) -> bytes:
        last_status: int | None = None
        last_cause = "transient failure"
        for attempt in range(self.max_attempts):
            if attempt:
                self._sleep(self.backoff_base * 2 ** (attempt - 1))
            self._wait_for_slot()
            self._last_request = self._clock()
            try:
                response = self.session.get(url, timeout=self.timeout)
            except requests.RequestException as exc:
                last_cause = f"transport error: {exc}"
                continue
            if response.status_code == 200:
                return response.content
            last_status = response.status_code
            last_cause = f"HTTP {response.status_code}"
            if response.status_code not in TRANSIENT_STATUSES:
                raise NetworkError(f"request failed: {last_cause}", status=last_status)
        raise NetworkError(
            f"request failed after {self.max_attempts} attempts: {last_cause}",
            status=last_status,
        )


def _parse_point_date(raw: str) -> dt.date:
    text = raw.strip()
    # Recorded bodies carry dates as 20230101T000000Z, 20230101000000 or
    # plain ISO.
    digits = text.replace("T", "").rstrip("Zz")
    if digits.isdigit() and len(digits) >= 8:
        return dt.date(int(digits[0:4]), int(digits[4:6]), int(digits[6:8]))
    try:
        return dt.date.fromisoformat(text[:10])
    except ValueError:
        raise ApiFormatError(f"unparseable timeline date {raw!r}") from None


def parse_timeline(body: bytes) -> list[tuple[dt.date, int]]:
    """Extract (day, article count) points from a response body."""
    try:
        doc = json.loads(body.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ApiFormatError(f"response body is not JSON: {exc}") from exc
    timeline = doc.get("timeline") if isinstance(doc, dict) else None
    if not isinstance(timeline, list) or not timeline:
        raise ApiFormatError("response JSON lacks a timeline")
    data = timeline[0].get("data") if isinstance(timeline[0], dict) else None
    if not isinstance(data, list):
        raise ApiFormatError("timeline entry lacks a data list")
    points: list[tuple[dt.date, int]] = []
    for item in data:
        if not isinstance(item, dict) or "date" not in item or "value" not in item:
            raise ApiFormatError(f"malformed timeline point {item!r}")
        day = _parse_point_date(str(item["date"]))
        try:
            value = int(round(float(item["value"])))
        except (TypeError, ValueError):
            raise ApiFormatError(f"non-numeric timeline value {item['value']!r}") from None
        if value < 0:
            raise ApiFormatError(f"negative article count {value}")
        points.append((day, value))
    return points


def fetch_gdelt_timeline(
    query: BooleanQuery,
    country: str,
    window: DateWindow,
    transport,
    subtopic_id: str = "",
) -> RawSeries:
    """Fetch the weekly news-volume series for a query in one country.

    Daily counts are summed into ISO weeks and clipped to the window;
    weeks without any reported day come out as 0, so the result always
    covers the full window.
    """
    if query is None:
        raise EmptyQueryError("news query is missing")
    url = build_url(query, country, window)
    body = transport.get(url)
    points = parse_timeline(body)
    values = [0] * window.n_weeks
    for day, count in points:
        idx = window.index_of(monday_of(day))
        if idx is not None:
            values[idx] += count
    return RawSeries(
        subtopic_id=subtopic_id,
        source="gdelt",
        week_start=tuple(window.weeks()),
        values=tuple(values),
    )

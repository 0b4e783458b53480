"""Shared fixtures: a small two-subtopic corpus and taxonomy for fast tests."""

from __future__ import annotations

import datetime as dt
import json
import random
import textwrap
from pathlib import Path

import pytest

from infodelta.config import GdeltConfig, RunConfig
from infodelta.gdelt import build_url, fixture_name
from infodelta.seriesops import DateWindow
from infodelta.taxonomy import load_taxonomy

MINI_TAXONOMY_YAML = """\
schema_version: 1
topics:
  - name: Buildings
    subtopics:
      - id: green_homes
        name: Green Homes
        post_query: '"casa green" OR "case green"'
        news_query: '"casa green"'
        trends_spec: Casa green
        trends_is_topic_entity: false
      - id: heat_pumps
        name: Heat Pumps
        post_query: '"pompa di calore" OR "pompe di calore"'
        news_query: '"pompa di calore"'
        trends_spec: Pompa di calore
        trends_is_topic_entity: true
"""


@pytest.fixture
def mini_taxonomy(tmp_path):
    path = tmp_path / "taxonomy.yaml"
    path.write_text(MINI_TAXONOMY_YAML, encoding="utf-8")
    return load_taxonomy(path)


@pytest.fixture
def mini_window():
    # 13 ISO weeks, Monday-anchored
    return DateWindow(dt.date(2023, 1, 2), dt.date(2023, 3, 27))


def build_mini_corpus(root: Path, window: DateWindow, seed: int = 11) -> RunConfig:
    """Small deterministic corpus for the mini taxonomy: posts on both
    platforms, trends files, gdelt fixtures, plus the run config."""
    rng = random.Random(seed)
    root.mkdir(parents=True, exist_ok=True)
    (root / "trends").mkdir(exist_ok=True)
    (root / "gdelt").mkdir(exist_ok=True)
    taxonomy_path = root / "taxonomy.yaml"
    taxonomy_path.write_text(MINI_TAXONOMY_YAML, encoding="utf-8")
    taxonomy = load_taxonomy(taxonomy_path)

    phrases = {"green_homes": "casa green", "heat_pumps": "pompa di calore"}
    rows = ["platform,posted_at,account_id,followers_at_post,total_engagement,text"]
    for sub in taxonomy.subtopics:
        for week_index, week in enumerate(window.weeks()):
            for offset, platform in enumerate(("facebook", "instagram")):
                for _ in range(2 + (week_index + offset) % 4):
                    moment = dt.datetime.combine(week, dt.time(8, 0), tzinfo=dt.timezone.utc)
                    moment += dt.timedelta(days=rng.randint(0, 6), minutes=rng.randint(0, 700))
                    rows.append(
                        f"{platform},{moment:%Y-%m-%dT%H:%M:%SZ},acct{rng.randint(1, 40)},"
                        f"{rng.randint(500, 90000)},{rng.randint(0, 400)},"
                        f"oggi parliamo della {phrases[sub.id]} con una nota"
                    )
    (root / "posts.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")

    for index, sub in enumerate(taxonomy.subtopics):
        header = "Settimana" if index % 2 else "Week"
        lines = ["Categoria: Tutte le categorie", "", f"{header},{sub.name}: (Italia)"]
        for week_index, week in enumerate(window.weeks()):
            value = (17 * (week_index + 3) + 31 * index) % 101
            lines.append(f"{week.isoformat()},{value if value else '<1'}")
        (root / "trends" / f"{sub.id}.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

        url = build_url(sub.news_query, "IT", window)
        data = [
            {"date": f"{week:%Y%m%d}T000000Z", "value": (13 * week_index + 7 * index) % 40}
            for week_index, week in enumerate(window.weeks())
        ]
        body = {"timeline": [{"series": "Article Count", "data": data}]}
        (root / "gdelt" / fixture_name(url)).write_text(json.dumps(body), encoding="utf-8")

    (root / "run.yaml").write_text(
        textwrap.dedent(
            f"""\
            schema_version: 1
            taxonomy: taxonomy.yaml
            window:
              start: {window.start.isoformat()}
              end: {window.end.isoformat()}
            inputs:
              posts: posts.csv
              trends_dir: trends
              gdelt:
                transport: fixture
                fixture_dir: gdelt
                country: IT
            output_dir: out
            """
        ),
        encoding="utf-8",
    )
    return RunConfig(
        taxonomy_path=taxonomy_path,
        window=window,
        posts_path=root / "posts.csv",
        trends_dir=root / "trends",
        gdelt=GdeltConfig(transport="fixture", fixture_dir=root / "gdelt", country="IT"),
        output_dir=root / "out",
    )


@pytest.fixture
def mini_corpus(tmp_path, mini_window):
    return build_mini_corpus(tmp_path / "corpus", mini_window)


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # expose each phase's report on the item so teardown fixtures can see
    # whether the test body passed (used for the acceptance verdict lines)
    outcome = yield
    report = outcome.get_result()
    setattr(item, "rep_" + report.when, report)

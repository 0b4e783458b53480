#!/usr/bin/env python3
"""Regenerate the bundled synthetic corpus under src/infodelta/data/corpus.

The corpus is built from a per-subtopic latent AR(1) signal shared between
the demand series and every supply source, so that supply and demand are
contemporaneously coupled (target lag-0 Pearson r around 0.35) and the
cross-correlation peak sits at lag 0.  Fifteen subtopics are designed
demand-heavy (flat high search interest, peaky supply) and three are
supply-heavy; the generator runs the real pipeline afterwards and fails
loudly when the built corpus misses any designed property.

Usage: python scripts/generate_corpus.py [--seed N] [--check-only]
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import shutil
import sys
import tempfile
from pathlib import Path

import numpy as np

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from infodelta.config import GdeltConfig, RunConfig  # noqa: E402
from infodelta.gdelt import build_url, fixture_name  # noqa: E402
from infodelta.ingest import assign_subtopics, read_posts  # noqa: E402
from infodelta.pipeline import run_analyze, run_ingest  # noqa: E402
from infodelta.queries import Or, Phrase  # noqa: E402
from infodelta.seriesops import DateWindow  # noqa: E402
from infodelta.taxonomy import load_default_taxonomy  # noqa: E402

CORPUS_DIR = REPO / "src" / "infodelta" / "data" / "corpus"

WINDOW = DateWindow(dt.date(2022, 12, 26), dt.date(2024, 8, 12))

# Subtopics where cumulative supply must exceed cumulative demand.
SUPPLY_LED = {
    "buildings_energetic_requalification",
    "mobility_cycle_lane",
    "work_green_deal",
}

PHI = 0.55  # AR(1) memory of every latent component
ALPHA2 = 0.30  # shared-component weight; measured lag-0 r also gains
# from the aligned event spike, landing near the 0.35 target.

NOISE_POSTS = 40  # in-window posts matching no subtopic
OUT_OF_WINDOW_POSTS = 6

FILLER = (
    "oggi parliamo sul tema con una analisi dei dati nota aggiornamento breve "
    "punto situazione che per molto interessante nuovo report commento lettura "
    "settimanale focus quadro sintesi numeri tendenza osservazioni riflessione "
    "confronto scenario dettagli bilancio panorama"
).split()


def ar1(rng: np.random.Generator, n: int, phi: float = PHI) -> np.ndarray:
    """Stationary unit-variance AR(1) path."""
    x = np.empty(n)
    x[0] = rng.normal()
    scale = np.sqrt(1.0 - phi * phi)
    for t in range(1, n):
        x[t] = phi * x[t - 1] + scale * rng.normal()
    return x


def query_phrases(query) -> list[str]:
    if isinstance(query, Phrase):
        return [query.text]
    if isinstance(query, Or) and all(isinstance(c, Phrase) for c in query.children):
        return [c.text for c in query.children]
    raise AssertionError(f"corpus generator expects OR-of-phrases post queries, got {query!r}")


def build_subtopic(rng: np.random.Generator, supply_led: bool, n: int) -> dict:
    """Latent-coupled weekly demand values and per-source supply counts."""
    a = np.sqrt(ALPHA2)
    b = np.sqrt(1.0 - ALPHA2)
    shared = ar1(rng, n)
    latents = {ch: a * shared + b * ar1(rng, n) for ch in ("demand", "facebook", "instagram", "gdelt")}

    if supply_led:
        demand = np.clip(np.round(20.0 + 10.0 * latents["demand"]), 0, 100).astype(int)
        params = {"facebook": (12.0, 1.8), "instagram": (10.0, 1.5), "gdelt": (50.0, 7.0)}
        spike_week = None
    else:
        demand = np.clip(np.round(56.0 + 15.0 * latents["demand"]), 0, 100).astype(int)
        params = {"facebook": (9.0, 3.0), "instagram": (7.0, 2.5), "gdelt": (45.0, 14.0)}
        spike_week = int(rng.integers(10, n - 10))
        demand[spike_week] = min(100, demand[spike_week] + 30)

    counts = {}
    for source, (base, sd) in params.items():
        c = np.maximum(0, np.round(base + sd * latents[source])).astype(int)
        if spike_week is not None:
            c[spike_week] += int(round(2.5 * base))
        counts[source] = c
    return {"demand": demand, "counts": counts, "spike_week": spike_week}


def derive(seed: int) -> dict:
    """Designed series plus the per-subtopic RNG left ready for post drawing."""
    taxonomy = load_default_taxonomy()
    children = np.random.SeedSequence(seed).spawn(len(taxonomy.subtopics) + 1)
    designed = {}
    for index, sub in enumerate(taxonomy.subtopics):
        rng = np.random.default_rng(children[index])
        built = build_subtopic(rng, sub.id in SUPPLY_LED, WINDOW.n_weeks)
        built["rng"] = rng
        built["localized_header"] = index % 2 == 1
        designed[sub.id] = built
    designed["__noise_rng__"] = np.random.default_rng(children[-1])
    return designed


def write_trends_csv(path: Path, name: str, weeks, values, localized: bool) -> None:
    header_word = "Settimana" if localized else "Week"
    lines = ["Categoria: Tutte le categorie", ""]
    lines.append(f"{header_word},{name}: (Italia)")
    for week, value in zip(weeks, values):
        lines.append(f"{week.isoformat()},{value if value > 0 else '<1'}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_gdelt_fixture(directory: Path, subtopic, weekly_counts) -> None:
    """Recorded response body with each weekly count spread over its days."""
    url = build_url(subtopic.news_query, "IT", WINDOW)
    data = []
    for week, total in zip(WINDOW.weeks(), weekly_counts):
        total = int(total)
        for day_index in range(7):
            day = week + dt.timedelta(days=day_index)
            value = total // 7 + (1 if day_index < total % 7 else 0)
            data.append({"date": f"{day:%Y%m%d}T000000Z", "value": value})
    body = {
        "query_details": {"title": f"Article count for {subtopic.id}"},
        "timeline": [{"series": "Article Count", "data": data}],
    }
    (directory / fixture_name(url)).write_text(json.dumps(body, indent=1), encoding="utf-8")


def make_posts(rng: np.random.Generator, subtopic, platform: str, weeks, counts) -> list[dict]:
    phrases = query_phrases(subtopic.post_query)
    posts = []
    for week, count in zip(weeks, counts):
        for _ in range(int(count)):
            phrase = phrases[int(rng.integers(len(phrases)))]
            lead = rng.choice(FILLER, size=int(rng.integers(2, 6)))
            tail = rng.choice(FILLER, size=int(rng.integers(1, 5)))
            text = " ".join([*lead, phrase, *tail])
            moment = dt.datetime.combine(week, dt.time(0, 0), tzinfo=dt.timezone.utc) + dt.timedelta(
                days=int(rng.integers(0, 7)),
                hours=int(rng.integers(6, 23)),
                minutes=int(rng.integers(0, 60)),
                seconds=int(rng.integers(0, 60)),
            )
            posts.append(
                {
                    "platform": platform,
                    "posted_at": moment.strftime("%Y-%m-%dT%H:%M:%SZ"),
                    "account_id": f"acct_{platform[:2]}_{int(rng.integers(1, 400)):03d}",
                    "followers_at_post": int(rng.lognormal(9.2, 0.6)),
                    "total_engagement": int(rng.lognormal(3.0, 1.1)),
                    "text": text,
                }
            )
    return posts


def make_noise_posts(rng: np.random.Generator) -> list[dict]:
    """Posts matching no subtopic plus a few outside the window."""
    posts = []
    weeks = WINDOW.weeks()
    for _ in range(NOISE_POSTS):
        week = weeks[int(rng.integers(0, WINDOW.n_weeks))]
        moment = dt.datetime.combine(week, dt.time(12, 0), tzinfo=dt.timezone.utc) + dt.timedelta(
            days=int(rng.integers(0, 7)), minutes=int(rng.integers(0, 600))
        )
        posts.append(
            {
                "platform": "facebook" if rng.integers(2) else "instagram",
                "posted_at": moment.strftime("%Y-%m-%dT%H:%M:%SZ"),
                "account_id": f"acct_xx_{int(rng.integers(1, 400)):03d}",
                "followers_at_post": int(rng.lognormal(9.2, 0.6)),
                "total_engagement": int(rng.lognormal(3.0, 1.1)),
                "text": " ".join(rng.choice(FILLER, size=int(rng.integers(4, 9)))),
            }
        )
    for offset_days in (-21, -10, -3, 2, 9, 30):
        edge = WINDOW.start if offset_days < 0 else WINDOW.last_day()
        moment = dt.datetime.combine(
            edge + dt.timedelta(days=offset_days), dt.time(10, 30), tzinfo=dt.timezone.utc
        )
        posts.append(
            {
                "platform": "facebook",
                "posted_at": moment.strftime("%Y-%m-%dT%H:%M:%SZ"),
                "account_id": "acct_fb_001",
                "followers_at_post": 5000,
                "total_engagement": 10,
                "text": "aggiornamento casa green fuori finestra",
            }
        )
    return posts


def write_posts_csv(path: Path, posts: list[dict]) -> None:
    posts = sorted(posts, key=lambda p: (p["posted_at"], p["platform"], p["account_id"], p["text"]))
    lines = ["platform,posted_at,account_id,followers_at_post,total_engagement,text"]
    for p in posts:
        assert "," not in p["text"] and '"' not in p["text"]
        lines.append(
            f"{p['platform']},{p['posted_at']},{p['account_id']},"
            f"{p['followers_at_post']},{p['total_engagement']},{p['text']}"
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


RUN_CONFIG = """\
# Run config for the bundled synthetic corpus.  Relative paths resolve
# against this file's directory; point output_dir somewhere writable when
# running against an installed copy.
schema_version: 1
taxonomy: default
window:
  start: 2022-12-26
  end: 2024-08-12
inputs:
  posts: posts.csv
  trends_dir: trends
  gdelt:
    transport: fixture
    fixture_dir: gdelt
    country: IT
output_dir: out
max_lag: 8
min_episode_len: 1
sources: [facebook, instagram, gdelt]
"""


def generate(designed: dict) -> None:
    taxonomy = load_default_taxonomy()
    if CORPUS_DIR.exists():
        shutil.rmtree(CORPUS_DIR)
    (CORPUS_DIR / "trends").mkdir(parents=True)
    (CORPUS_DIR / "gdelt").mkdir()

    weeks = WINDOW.weeks()
    all_posts = []
    for sub in taxonomy.subtopics:
        built = designed[sub.id]
        write_trends_csv(
            CORPUS_DIR / "trends" / f"{sub.id}.csv",
            sub.name,
            weeks,
            built["demand"],
            built["localized_header"],
        )
        write_gdelt_fixture(CORPUS_DIR / "gdelt", sub, built["counts"]["gdelt"])
        for platform in ("facebook", "instagram"):
            all_posts.extend(make_posts(built["rng"], sub, platform, weeks, built["counts"][platform]))
    all_posts.extend(make_noise_posts(designed["__noise_rng__"]))
    write_posts_csv(CORPUS_DIR / "posts.csv", all_posts)
    (CORPUS_DIR / "run_config.yaml").write_text(RUN_CONFIG, encoding="utf-8")
    print(f"wrote corpus: {len(all_posts)} posts, 18 trends files, 18 gdelt fixtures")


def verify(designed: dict) -> dict:
    """Run the real pipeline over the corpus and check every designed property."""
    taxonomy = load_default_taxonomy()
    with tempfile.TemporaryDirectory() as tmp:
        config = RunConfig(
            taxonomy_path=None,
            window=WINDOW,
            posts_path=CORPUS_DIR / "posts.csv",
            trends_dir=CORPUS_DIR / "trends",
            gdelt=GdeltConfig(transport="fixture", fixture_dir=CORPUS_DIR / "gdelt", country="IT"),
            output_dir=Path(tmp),
        )
        manifest = run_ingest(config)
        assert not manifest["incomplete_subtopics"], manifest["incomplete_subtopics"]
        assert not manifest["warnings"], manifest["warnings"]
        aggregate = run_analyze(config)

        # every post must land on its designed subtopic, or on none
        result = read_posts(CORPUS_DIR / "posts.csv", WINDOW)
        assert not result.row_errors, result.row_errors[:3]
        assert result.skipped_out_of_window == OUT_OF_WINDOW_POSTS
        records = assign_subtopics(result.records, taxonomy)
        by_sub: dict[str | None, int] = {}
        for record in records:
            by_sub[record.subtopic_id] = by_sub.get(record.subtopic_id, 0) + 1
        for sub in taxonomy.subtopics:
            expected = sum(
                int(c)
                for platform in ("facebook", "instagram")
                for c in designed[sub.id]["counts"][platform]
            )
            assert by_sub.get(sub.id, 0) == expected, (sub.id, by_sub.get(sub.id), expected)
        assert by_sub.get(None, 0) == NOISE_POSTS

        assert aggregate["pairs_analyzed"] == 54
        assert not aggregate["failures"], aggregate["failures"]
        mean_r = aggregate["mean_lag_zero_r"]
        assert 0.30 <= mean_r <= 0.40, f"mean lag-0 r {mean_r:.4f} outside the inner band"
        assert aggregate["modal_peak_lag"] == 0, aggregate["modal_peak_lag"]
        expected_supply_led = sorted(SUPPLY_LED)
        expected_demand_led = sorted(s.id for s in taxonomy.subtopics if s.id not in SUPPLY_LED)
        assert aggregate["supply_exceeds_demand"] == expected_supply_led, aggregate["supply_exceeds_demand"]
        assert aggregate["demand_exceeds_supply"] == expected_demand_led, aggregate["demand_exceeds_supply"]
        assert aggregate["mixed_cumulative"] == []

        # engagement correlation must be defined on every platform pair
        summary = (Path(tmp) / "analysis" / "summary.csv").read_text().splitlines()
        for line in summary[1:]:
            cells = line.split(",")
            if cells[1] in ("facebook", "instagram"):
                assert cells[-1] != "", f"undefined engagement correlation for {cells[0]}/{cells[1]}"
    return aggregate


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20240812)
    parser.add_argument("--check-only", action="store_true", help="verify the committed corpus only")
    args = parser.parse_args()

    designed = derive(args.seed)
    if not args.check_only:
        generate(designed)
        designed = derive(args.seed)  # fresh RNG state for the count checks

    aggregate = verify(designed)
    print(
        f"verified: mean lag-0 r = {aggregate['mean_lag_zero_r']:.4f}, "
        f"mean peak r = {aggregate['mean_peak_r']:.4f}, "
        f"modal peak lag = {aggregate['modal_peak_lag']}, "
        f"partition {len(aggregate['demand_exceeds_supply'])}/{len(aggregate['supply_exceeds_demand'])}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""SVG/CSV report emission from analysis bundles."""

import dataclasses
import datetime as dt
import json
import xml.etree.ElementTree as ET

import pytest

from infodelta.errors import NothingToAnalyzeError
from infodelta.pipeline import run_analyze, run_ingest
from infodelta.report import run_report
from infodelta.serialize import write_json


@pytest.fixture
def reported(mini_corpus):
    run_ingest(mini_corpus)
    run_analyze(mini_corpus)
    index = run_report(mini_corpus)
    return mini_corpus, index


class TestRunReport:
    def test_index_lists_written_files(self, reported):
        config, index = reported
        report_dir = config.output_dir / "report"
        on_disk = sorted(p.name for p in report_dir.iterdir() if p.name != "index.json")
        assert index["files"] == on_disk
        assert index["bundles"] == 6

    def test_every_pair_gets_series_and_delta_charts(self, reported):
        config, index = reported
        for sub in ("green_homes", "heat_pumps"):
            for source in ("facebook", "instagram", "gdelt"):
                stem = f"{sub}__{source}"
                assert f"{stem}__series.svg" in index["files"]
                assert f"{stem}__series.csv" in index["files"]
                assert f"{stem}__delta.svg" in index["files"]
                assert f"{stem}__delta.csv" in index["files"]

    def test_scatter_only_for_platform_pairs(self, reported):
        _, index = reported
        assert "green_homes__facebook__scatter.svg" in index["files"]
        assert "green_homes__gdelt__scatter.svg" not in index["files"]

    def test_cumulative_table_present(self, reported):
        config, index = reported
        assert "cumulative.svg" in index["files"]
        lines = (config.output_dir / "report" / "cumulative.csv").read_text().splitlines()
        assert lines[0] == "subtopic_id,source,cumulative_supply,cumulative_demand"
        assert len(lines) == 1 + 6

    def test_all_svgs_are_well_formed_xml(self, reported):
        config, _ = reported
        svgs = list((config.output_dir / "report").glob("*.svg"))
        assert svgs
        for path in svgs:
            root = ET.fromstring(path.read_text(encoding="utf-8"))
            assert root.tag.endswith("svg")

    def test_csv_twin_row_counts(self, reported):
        config, _ = reported
        n_weeks = 13
        report_dir = config.output_dir / "report"
        for name in ("green_homes__facebook__series.csv", "green_homes__facebook__delta.csv"):
            lines = (report_dir / name).read_text().splitlines()
            assert len(lines) == 1 + n_weeks

    def test_rerun_byte_identical(self, reported):
        config, _ = reported
        report_dir = config.output_dir / "report"
        before = {p.name: p.read_bytes() for p in report_dir.iterdir()}
        run_report(config)
        after = {p.name: p.read_bytes() for p in report_dir.iterdir()}
        assert before == after

    def test_no_bundles_is_fatal(self, mini_corpus):
        with pytest.raises(NothingToAnalyzeError):
            run_report(mini_corpus)


class TestScatterOmission:
    def _write_bundle(self, analysis_dir, correlation):
        weeks = [dt.date(2023, 1, 2) + dt.timedelta(weeks=i) for i in range(4)]
        bundle = {
            "schema_version": 1,
            "subtopic_id": "flat",
            "supply_source": "facebook",
            "week_start": weeks,
            "supply": [10, 10, 10, 10],
            "demand": [10, 10, 10, 10],
            "degenerate": {"supply": False, "demand": False},
            "delta": [0, 0, 0, 0],
            "thresholds": {"upper": 10.0, "lower": -10.0},
            "episodes": [],
            "lag_correlation": {
                "convention": "positive lag means demand lags supply by that many weeks",
                "max_lag": 1,
                "lags": [-1, 0, 1],
                "r": [None, None, None],
                "peak_lag": None,
                "peak_r": None,
                "r_at_zero": None,
            },
            "cumulative": {"supply": 40, "demand": 40},
            "engagement": {
                "platform": "facebook",
                "correlation": correlation,
                "engagement_sum": [1, 2, 3, 4],
                "post_count": [1, 1, 1, 1],
                "ols": {"skipped_reason": "rank-deficient design (constant delta or audience)"},
            },
        }
        analysis_dir.mkdir(parents=True, exist_ok=True)
        write_json(analysis_dir / "flat__facebook.json", bundle)

    def test_undefined_correlation_noted_not_drawn(self, mini_corpus, tmp_path):
        config = dataclasses.replace(mini_corpus, output_dir=tmp_path / "flat_run")
        self._write_bundle(
            config.output_dir / "analysis",
            {"r": None, "undefined_reason": "zero_variance_delta"},
        )
        index = run_report(config)
        assert index["files"] == [
            "cumulative.csv",
            "cumulative.svg",
            "flat__facebook__delta.csv",
            "flat__facebook__delta.svg",
            "flat__facebook__series.csv",
            "flat__facebook__series.svg",
        ]
        assert index["notes"] == [
            "flat__facebook: scatter omitted: correlation undefined (zero_variance_delta)"
        ]

    def test_defined_correlation_adds_scatter_with_r_in_title(self, mini_corpus, tmp_path):
        config = dataclasses.replace(mini_corpus, output_dir=tmp_path / "ok_run")
        self._write_bundle(config.output_dir / "analysis", {"r": 0.25, "undefined_reason": None})
        index = run_report(config)
        assert "flat__facebook__scatter.svg" in index["files"]
        svg = (config.output_dir / "report" / "flat__facebook__scatter.svg").read_text()
        assert "r=0.250" in svg
        assert index["notes"] == []

    def test_aggregate_json_ignored_as_bundle(self, mini_corpus, tmp_path):
        config = dataclasses.replace(mini_corpus, output_dir=tmp_path / "agg_run")
        analysis_dir = config.output_dir / "analysis"
        self._write_bundle(analysis_dir, {"r": None, "undefined_reason": "zero_variance_delta"})
        write_json(analysis_dir / "aggregate.json", {"pairs_analyzed": 1})
        index = run_report(config)
        assert index["bundles"] == 1

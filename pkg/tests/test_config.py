"""Run configuration loading and CLI overrides."""

import datetime as dt
from pathlib import Path

import pytest

from infodelta.config import (
    RunConfig,
    bundled_corpus_dir,
    corpus_run_config,
    load_config,
    parse_window,
)
from infodelta.errors import ConfigError
from infodelta.seriesops import DateWindow

MINIMAL = """\
schema_version: 1
window:
  start: 2023-01-02
  end: 2023-03-27
inputs:
  posts: posts.csv
  trends_dir: trends
  gdelt:
    transport: fixture
    fixture_dir: gdelt
output_dir: out
"""


def _write(tmp_path, text=MINIMAL, name="run.yaml"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestParseWindow:
    def test_dates(self):
        window = parse_window("2023-01-02", "2023-01-30")
        assert window == DateWindow(dt.date(2023, 1, 2), dt.date(2023, 1, 30))

    def test_bad_date_is_config_error(self):
        with pytest.raises(ConfigError):
            parse_window("not-a-date", "2023-01-30")

    def test_non_monday_is_config_error(self):
        with pytest.raises(ConfigError):
            parse_window("2023-01-03", "2023-01-30")


class TestLoadConfig:
    def test_minimal(self, tmp_path):
        config = load_config(_write(tmp_path))
        assert config.window.n_weeks == 13
        assert config.posts_path == tmp_path / "posts.csv"
        assert config.trends_dir == tmp_path / "trends"
        assert config.gdelt.transport == "fixture"
        assert config.gdelt.fixture_dir == tmp_path / "gdelt"
        assert config.gdelt.country == "IT"
        assert config.output_dir == tmp_path / "out"
        assert config.taxonomy_path is None
        assert config.max_lag == 8
        assert config.min_episode_len == 1
        assert config.sources == ("facebook", "instagram", "gdelt")

    def test_absolute_paths_kept(self, tmp_path):
        text = MINIMAL.replace("posts: posts.csv", f"posts: {tmp_path}/abs.csv")
        config = load_config(_write(tmp_path, text))
        assert config.posts_path == tmp_path / "abs.csv"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "nope.yaml")

    def test_not_yaml(self, tmp_path):
        with pytest.raises(ConfigError, match="not valid YAML"):
            load_config(_write(tmp_path, "a: [unclosed"))

    def test_wrong_schema_version(self, tmp_path):
        with pytest.raises(ConfigError, match="schema_version"):
            load_config(_write(tmp_path, MINIMAL.replace("schema_version: 1", "schema_version: 9")))

    def test_missing_window(self, tmp_path):
        with pytest.raises(ConfigError, match="window"):
            load_config(_write(tmp_path, "schema_version: 1\noutput_dir: out\n"))

    def test_missing_output_dir(self, tmp_path):
        text = MINIMAL.replace("output_dir: out\n", "")
        with pytest.raises(ConfigError, match="output_dir"):
            load_config(_write(tmp_path, text))

    def test_bad_transport(self, tmp_path):
        with pytest.raises(ConfigError, match="transport"):
            load_config(_write(tmp_path, MINIMAL.replace("transport: fixture", "transport: carrier-pigeon")))

    def test_fixture_transport_needs_dir(self, tmp_path):
        text = MINIMAL.replace("    fixture_dir: gdelt\n", "")
        with pytest.raises(ConfigError, match="fixture_dir"):
            load_config(_write(tmp_path, text))

    def test_unknown_source_rejected(self, tmp_path):
        text = MINIMAL + "sources: [facebook, telegram]\n"
        with pytest.raises(ConfigError, match="telegram"):
            load_config(_write(tmp_path, text))

    def test_window_override(self, tmp_path):
        config = load_config(_write(tmp_path), overrides={"window": "2023-01-02:2023-01-16"})
        assert config.window.n_weeks == 3

    def test_malformed_window_override(self, tmp_path):
        with pytest.raises(ConfigError, match="START:END"):
            load_config(_write(tmp_path), overrides={"window": "2023-01-02"})

    def test_sources_override(self, tmp_path):
        config = load_config(_write(tmp_path), overrides={"sources": "facebook, gdelt"})
        assert config.sources == ("facebook", "gdelt")

    def test_numeric_overrides(self, tmp_path):
        config = load_config(
            _write(tmp_path), overrides={"max_lag": "4", "min_episode_len": "2"}
        )
        assert config.max_lag == 4
        assert config.min_episode_len == 2

    def test_non_integer_max_lag(self, tmp_path):
        with pytest.raises(ConfigError, match="integer"):
            load_config(_write(tmp_path), overrides={"max_lag": "molto"})


class TestRunConfigValidation:
    def _kwargs(self):
        return dict(
            taxonomy_path=None,
            window=DateWindow(dt.date(2023, 1, 2), dt.date(2023, 1, 30)),
            posts_path=None,
            trends_dir=None,
            gdelt=None,
            output_dir=Path("out"),
        )

    def test_max_lag_positive(self):
        with pytest.raises(ConfigError):
            RunConfig(**self._kwargs(), max_lag=0)

    def test_min_episode_len_positive(self):
        with pytest.raises(ConfigError):
            RunConfig(**self._kwargs(), min_episode_len=0)

    def test_sources_must_not_be_empty(self):
        with pytest.raises(ConfigError):
            RunConfig(**self._kwargs(), sources=())


class TestBundledCorpus:
    def test_corpus_dir_contents(self):
        corpus = bundled_corpus_dir()
        assert (corpus / "run_config.yaml").is_file()
        assert (corpus / "posts.csv").is_file()
        assert sorted(p.name for p in (corpus / "trends").glob("*.csv"))
        assert sorted(p.name for p in (corpus / "gdelt").glob("*.json"))

    def test_corpus_config_redirects_output(self, tmp_path):
        config = corpus_run_config(tmp_path / "run")
        assert config.output_dir == tmp_path / "run"
        assert config.window.n_weeks == 86
        assert config.posts_path.is_file()
        assert config.gdelt.transport == "fixture"

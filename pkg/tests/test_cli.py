"""Command-line interface: exit codes, messages, overrides."""

import pytest

from infodelta.cli import main


@pytest.fixture
def run_yaml(mini_corpus):
    # build_mini_corpus writes run.yaml next to the corpus it describes
    return str(mini_corpus.posts_path.parent / "run.yaml")


class TestExitCodes:
    def test_full_pipeline_via_cli(self, run_yaml, capsys):
        assert main(["ingest", "--config", run_yaml]) == 0
        assert "ingest: wrote" in capsys.readouterr().out
        assert main(["analyze", "--config", run_yaml]) == 0
        assert "6 pairs analyzed, 0 failed" in capsys.readouterr().out
        assert main(["report", "--config", run_yaml]) == 0
        assert "report:" in capsys.readouterr().out

    def test_missing_config_file(self, tmp_path, capsys):
        code = main(["ingest", "--config", str(tmp_path / "absent.yaml")])
        assert code == 2
        assert "config error" in capsys.readouterr().err

    def test_malformed_config(self, tmp_path, capsys):
        bad = tmp_path / "bad.yaml"
        bad.write_text("schema_version: 9\n", encoding="utf-8")
        assert main(["analyze", "--config", str(bad)]) == 2
        assert "schema_version" in capsys.readouterr().err

    def test_analyze_before_ingest(self, run_yaml, capsys):
        assert main(["analyze", "--config", run_yaml]) == 1
        assert "no ingested series" in capsys.readouterr().err

    def test_report_before_analyze(self, run_yaml, capsys):
        assert main(["report", "--config", run_yaml]) == 1
        assert "no analysis bundles" in capsys.readouterr().err

    def test_unknown_command_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["frobnicate"])
        assert exc_info.value.code == 2

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["--version"])
        assert exc_info.value.code == 0
        assert capsys.readouterr().out.startswith("infodelta ")


class TestOverridesAndWarnings:
    def test_sources_override(self, run_yaml, mini_corpus, capsys):
        assert main(["ingest", "--config", run_yaml, "--sources", "facebook"]) == 0
        series_dir = mini_corpus.output_dir / "ingest" / "series"
        names = {p.name for p in series_dir.glob("*.csv")}
        assert all("instagram" not in n and "gdelt" not in n for n in names)

    def test_bad_sources_override(self, run_yaml, capsys):
        assert main(["ingest", "--config", run_yaml, "--sources", "tiktok"]) == 2
        assert "tiktok" in capsys.readouterr().err

    def test_window_override(self, run_yaml, mini_corpus, capsys):
        code = main(
            ["ingest", "--config", run_yaml, "--window", "2023-01-02:2023-01-30"]
        )
        assert code == 0
        series = (
            (mini_corpus.output_dir / "ingest" / "series" / "green_homes__facebook.csv")
            .read_text()
            .splitlines()
        )
        assert len(series) == 1 + 5  # header + five weeks

    def test_incomplete_subtopic_warns_but_exits_zero(self, run_yaml, mini_corpus, capsys):
        (mini_corpus.trends_dir / "green_homes.csv").unlink()
        assert main(["ingest", "--config", run_yaml]) == 0
        err = capsys.readouterr().err
        assert "warning" in err and "green_homes/trends" in err

    def test_analyze_failure_isolation_warns(self, run_yaml, mini_corpus, capsys):
        (mini_corpus.trends_dir / "green_homes.csv").unlink()
        main(["ingest", "--config", run_yaml])
        capsys.readouterr()
        assert main(["analyze", "--config", run_yaml]) == 0
        captured = capsys.readouterr()
        assert "3 pairs analyzed, 3 failed" in captured.out
        assert "no demand series" in captured.err

    def test_scatter_note_forwarded(self, run_yaml, mini_corpus, capsys, monkeypatch):
        main(["ingest", "--config", run_yaml])
        main(["analyze", "--config", run_yaml])
        # blank out one correlation to force an omission note
        import json

        path = mini_corpus.output_dir / "analysis" / "green_homes__facebook.json"
        bundle = json.loads(path.read_text())
        bundle["engagement"]["correlation"] = {
            "r": None,
            "undefined_reason": "zero_variance_engagement",
        }
        path.write_text(json.dumps(bundle), encoding="utf-8")
        capsys.readouterr()
        assert main(["report", "--config", run_yaml]) == 0
        assert "scatter omitted" in capsys.readouterr().err

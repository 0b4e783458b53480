"""Run configuration for the pipeline CLI.

Configs are YAML; relative paths are resolved against the directory the
config file lives in, so a corpus directory can carry its own config.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import yaml

from .errors import ConfigError, WindowError
from .seriesops import DateWindow

CONFIG_SCHEMA_VERSION = 1

SUPPLY_SOURCES = ("facebook", "instagram", "gdelt")


@dataclass
class GdeltConfig:
    transport: str  # "live" | "fixture"
    fixture_dir: Path | None
    country: str = "IT"


@dataclass
class RunConfig:
    taxonomy_path: Path | None  # None = bundled default
    window: DateWindow
    posts_path: Path | None
    trends_dir: Path | None
    gdelt: GdeltConfig | None
    output_dir: Path
    max_lag: int = 8
    min_episode_len: int = 1
    sources: tuple[str, ...] = ("facebook", "instagram", "gdelt")

    def __post_init__(self):
        if self.max_lag < 1:
            raise ConfigError("max_lag must be >= 1")
        if self.min_episode_len < 1:
            raise ConfigError("min_episode_len must be >= 1")
        bad = [s for s in self.sources if s not in SUPPLY_SOURCES]
        if bad:
            raise ConfigError(f"unknown sources {bad}; valid: {list(SUPPLY_SOURCES)}")
        if not self.sources:
            raise ConfigError("at least one supply source must be enabled")


def _parse_date(raw: object, name: str) -> dt.date:
    if isinstance(raw, dt.date):
        return raw
    try:
        return dt.date.fromisoformat(str(raw))
    except ValueError:
        raise ConfigError(f"{name}: invalid date {raw!r}") from None


def parse_window(start: object, end: object) -> DateWindow:
    try:
        return DateWindow(_parse_date(start, "window.start"), _parse_date(end, "window.end"))
    except WindowError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path, overrides: dict | None = None) -> RunConfig:
    """Load a YAML run config, applying CLI override values on top."""
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config {path} is not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config {path}: top level must be a mapping")
    if doc.get("schema_version") != CONFIG_SCHEMA_VERSION:
        raise ConfigError(f"config {path}: unsupported schema_version {doc.get('schema_version')!r}")

    base = path.parent

    def resolve(raw: object) -> Path:
        p = Path(str(raw))
        return p if p.is_absolute() else (base / p)

    overrides = overrides or {}

    window_doc = doc.get("window")
    if not isinstance(window_doc, dict) or "start" not in window_doc or "end" not in window_doc:
        raise ConfigError(f"config {path}: 'window' needs 'start' and 'end'")
    window = parse_window(window_doc["start"], window_doc["end"])
    if overrides.get("window"):
        start_s, _, end_s = overrides["window"].partition(":")
        if not end_s:
            raise ConfigError("--window override must look like START:END")
        window = parse_window(start_s, end_s)

    inputs = doc.get("inputs") or {}
    if not isinstance(inputs, dict):
        raise ConfigError(f"config {path}: 'inputs' must be a mapping")

    taxonomy_raw = doc.get("taxonomy", "default")
    taxonomy_path = None if taxonomy_raw in (None, "default") else resolve(taxonomy_raw)

    gdelt_cfg = None
    gdelt_doc = inputs.get("gdelt")
    if gdelt_doc is not None:
        if not isinstance(gdelt_doc, dict):
            raise ConfigError(f"config {path}: 'inputs.gdelt' must be a mapping")
        transport = gdelt_doc.get("transport")
        if transport not in ("live", "fixture"):
            raise ConfigError(f"config {path}: gdelt transport must be 'live' or 'fixture'")
        fixture_dir = None
        if transport == "fixture":
            if not gdelt_doc.get("fixture_dir"):
                raise ConfigError(f"config {path}: fixture transport needs 'fixture_dir'")
            fixture_dir = resolve(gdelt_doc["fixture_dir"])
        gdelt_cfg = GdeltConfig(
            transport=transport,
            fixture_dir=fixture_dir,
            country=str(gdelt_doc.get("country", "IT")),
        )

    if "output_dir" not in doc:
        raise ConfigError(f"config {path}: 'output_dir' is required")

    sources = doc.get("sources", list(SUPPLY_SOURCES))
    if overrides.get("sources"):
        sources = [s.strip() for s in overrides["sources"].split(",") if s.strip()]
    if not isinstance(sources, list):
        raise ConfigError(f"config {path}: 'sources' must be a list")

    try:
        max_lag = int(overrides.get("max_lag") or doc.get("max_lag", 8))
        min_episode_len = int(overrides.get("min_episode_len") or doc.get("min_episode_len", 1))
    except (TypeError, ValueError):
        raise ConfigError("max_lag and min_episode_len must be integers") from None

    return RunConfig(
        taxonomy_path=taxonomy_path,
        window=window,
        posts_path=resolve(inputs["posts"]) if inputs.get("posts") else None,
        trends_dir=resolve(inputs["trends_dir"]) if inputs.get("trends_dir") else None,
        gdelt=gdelt_cfg,
        output_dir=resolve(doc["output_dir"]),
        max_lag=max_lag,
        min_episode_len=min_episode_len,
        sources=tuple(sources),
    )


def bundled_corpus_dir() -> Path:
    """Directory of the synthetic corpus shipped with the package."""
    return Path(str(resources.files("infodelta").joinpath("data/corpus")))


def corpus_run_config(output_dir: str | Path) -> RunConfig:
    """RunConfig for the bundled corpus, writing under `output_dir`.

    The bundled `run_config.yaml` keeps its output next to the corpus,
    which is read-only for installed packages; this helper redirects it.
    """
    corpus = bundled_corpus_dir()
    config = load_config(corpus / "run_config.yaml")
    return replace(config, output_dir=Path(output_dir))

"""Topic/subtopic hierarchy and its YAML configuration loader.

Each subtopic carries three query definitions: a boolean query for social
posts, a boolean query for news timelines, and a search-interest spec that
is either a topic-entity label or a plain keyword.  A default taxonomy
(4 topics, 18 subtopics for the Italian climate-transition debate) ships
with the package; only a few of its keyword queries are canonical, the
rest are editable placeholders.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import yaml

from .errors import ConfigError, DuplicateIdError, EmptyQueryError, QuerySyntaxError
from .queries import BooleanQuery, parse_query

TAXONOMY_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Subtopic:
    """A leaf of the taxonomy with its per-source query definitions."""

    id: str
    name: str
    topic: str
    post_query: BooleanQuery
    news_query: BooleanQuery
    trends_spec: str
    trends_is_topic_entity: bool


@dataclass(frozen=True)
class Topic:
    name: str
    subtopics: tuple[Subtopic, ...]


@dataclass(frozen=True)
class Taxonomy:
    topics: tuple[Topic, ...]

    @property
    def subtopics(self) -> tuple[Subtopic, ...]:
        return tuple(s for t in self.topics for s in t.subtopics)

    def subtopic_ids(self) -> list[str]:
        return [s.id for s in self.subtopics]

    def get(self, subtopic_id: str) -> Subtopic:
        for s in self.subtopics:
            if s.id == subtopic_id:
                return s
        raise KeyError(subtopic_id)


def default_taxonomy_path() -> Path:
    """Path of the bundled default taxonomy config."""
    return Path(str(resources.files("infodelta").joinpath("data/default_taxonomy.yaml")))


def _parse_subtopic_query(raw: object, subtopic_id: str, field: str) -> BooleanQuery:
    if not isinstance(raw, str) or not raw.strip():
        raise ConfigError(f"subtopic {subtopic_id!r}: field {field!r} is missing or empty")
    try:
        return parse_query(raw)
    except (EmptyQueryError, QuerySyntaxError) as exc:
        raise ConfigError(f"subtopic {subtopic_id!r}: field {field!r}: {exc}") from exc


def load_taxonomy(path: str | Path) -> Taxonomy:
    """Load and validate a taxonomy config file.

    Raises ConfigError naming the offending subtopic and field, and
    DuplicateIdError when two subtopics share an id.
    """
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read taxonomy file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"taxonomy file {path} is not valid YAML: {exc}") from exc

    if not isinstance(doc, dict):
        raise ConfigError(f"taxonomy file {path}: top level must be a mapping")
    version = doc.get("schema_version")
    if version != TAXONOMY_SCHEMA_VERSION:
        raise ConfigError(f"taxonomy file {path}: unsupported schema_version {version!r}")
    raw_topics = doc.get("topics")
    if not isinstance(raw_topics, list) or not raw_topics:
        raise ConfigError(f"taxonomy file {path}: 'topics' must be a non-empty list")

    seen_ids: set[str] = set()
    topics: list[Topic] = []
    for raw_topic in raw_topics:
        if not isinstance(raw_topic, dict) or not raw_topic.get("name"):
            raise ConfigError(f"taxonomy file {path}: every topic needs a 'name'")
        topic_name = str(raw_topic["name"])
        raw_subs = raw_topic.get("subtopics")
        if not isinstance(raw_subs, list) or not raw_subs:
            raise ConfigError(f"topic {topic_name!r}: 'subtopics' must be a non-empty list")
        subtopics: list[Subtopic] = []
        for raw_sub in raw_subs:
            if not isinstance(raw_sub, dict):
                raise ConfigError(f"topic {topic_name!r}: subtopic entries must be mappings")
            sub_id = raw_sub.get("id")
            if not isinstance(sub_id, str) or not sub_id:
                raise ConfigError(f"topic {topic_name!r}: subtopic with missing 'id'")
            if sub_id in seen_ids:
                raise DuplicateIdError(f"duplicate subtopic id {sub_id!r}")
            seen_ids.add(sub_id)
            name = raw_sub.get("name")
            if not isinstance(name, str) or not name:
                raise ConfigError(f"subtopic {sub_id!r}: field 'name' is missing or empty")
            trends_spec = raw_sub.get("trends_spec")
            if not isinstance(trends_spec, str) or not trends_spec.strip():
                raise ConfigError(f"subtopic {sub_id!r}: field 'trends_spec' is missing or empty")
            is_entity = raw_sub.get("trends_is_topic_entity", True)
            if not isinstance(is_entity, bool):
                raise ConfigError(
                    f"subtopic {sub_id!r}: field 'trends_is_topic_entity' must be a boolean"
                )
            subtopics.append(
                Subtopic(
                    id=sub_id,
                    name=name,
                    topic=topic_name,
                    post_query=_parse_subtopic_query(raw_sub.get("post_query"), sub_id, "post_query"),
                    news_query=_parse_subtopic_query(raw_sub.get("news_query"), sub_id, "news_query"),
                    trends_spec=trends_spec.strip(),
                    trends_is_topic_entity=is_entity,
                )
            )
        topics.append(Topic(name=topic_name, subtopics=tuple(subtopics)))
    return Taxonomy(topics=tuple(topics))


def load_default_taxonomy() -> Taxonomy:
    return load_taxonomy(default_taxonomy_path())

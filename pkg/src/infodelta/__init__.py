"""Weekly information supply/demand analytics.

Quantifies how content production (social posts, news volume) tracks
search interest for a configurable topic taxonomy: 0-100 rescaled weekly
series, supply-demand deltas, information voids and overabundance
episodes, lagged cross-correlation, and delta-engagement statistics.
"""

__version__ = "0.1.0"

from .analysis import (
    CorrelationOutcome,
    DeltaSeries,
    Episode,
    LagCorrelation,
    Thresholds,
    cross_correlation,
    delta,
    detect_episodes,
    engagement_correlation,
    ols_fit,
    thresholds,
)
from .config import RunConfig, bundled_corpus_dir, corpus_run_config, load_config
from .errors import InfodeltaError
from .gdelt import FixtureTransport, LiveTransport, fetch_gdelt_timeline
from .ingest import PostIngestResult, PostRecord, assign_subtopics, read_posts, read_trends_csv
from .queries import And, BooleanQuery, Or, Phrase, matches, parse_query, print_query, to_gdelt
from .seriesops import (
    DateWindow,
    EngagementSeries,
    NormalizedSeries,
    RawSeries,
    aggregate_weekly,
    align,
    cumulative,
    demand_passthrough,
    rescale,
    week_of,
)
from .pipeline import run_analyze, run_ingest
from .report import run_report
from .taxonomy import Taxonomy, load_default_taxonomy, load_taxonomy

__all__ = [
    "And",
    "BooleanQuery",
    "CorrelationOutcome",
    "DateWindow",
    "DeltaSeries",
    "EngagementSeries",
    "Episode",
    "FixtureTransport",
    "InfodeltaError",
    "LagCorrelation",
    "LiveTransport",
    "NormalizedSeries",
    "Or",
    "Phrase",
    "PostIngestResult",
    "PostRecord",
    "RawSeries",
    "RunConfig",
    "Taxonomy",
    "Thresholds",
    "aggregate_weekly",
    "align",
    "assign_subtopics",
    "bundled_corpus_dir",
    "corpus_run_config",
    "cross_correlation",
    "cumulative",
    "delta",
    "demand_passthrough",
    "detect_episodes",
    "engagement_correlation",
    "fetch_gdelt_timeline",
    "load_config",
    "load_default_taxonomy",
    "load_taxonomy",
    "matches",
    "ols_fit",
    "parse_query",
    "print_query",
    "read_posts",
    "read_trends_csv",
    "rescale",
    "run_analyze",
    "run_ingest",
    "run_report",
    "thresholds",
    "to_gdelt",
    "week_of",
]

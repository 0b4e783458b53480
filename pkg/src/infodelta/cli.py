"""Command-line entry point: `infodelta ingest|analyze|report --config <path>`.

Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import load_config
from .errors import ConfigError, InfodeltaError
from .pipeline import run_analyze, run_ingest
from .report import run_report


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infodelta",
        description="Batch pipeline comparing weekly information supply against search demand.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{ingest,analyze,report}")
    for name, help_text in (
        ("ingest", "read raw inputs and persist weekly series"),
        ("analyze", "compute deltas, episodes, and correlations per subtopic"),
        ("report", "render SVG charts and CSV tables from analysis bundles"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to the YAML run config")
        cmd.add_argument("--window", metavar="START:END", help="override window (Monday dates)")
        cmd.add_argument("--max-lag", type=int, metavar="N", help="override cross-correlation lag bound")
        cmd.add_argument(
            "--min-episode-len", type=int, metavar="N", help="override minimum episode length in weeks"
        )
        cmd.add_argument(
            "--sources", metavar="A,B", help="override supply sources (subset of facebook,instagram,gdelt)"
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    overrides = {
        "window": args.window,
        "max_lag": args.max_lag,
        "min_episode_len": args.min_episode_len,
        "sources": args.sources,
    }
    try:
        config = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"infodelta: config error: {exc}", file=sys.stderr)
        return 2

    step = {"ingest": run_ingest, "analyze": run_analyze, "report": run_report}[args.command]
    try:
        result = step(config)
    except ConfigError as exc:
        print(f"infodelta: config error: {exc}", file=sys.stderr)
        return 2
    except (InfodeltaError, OSError) as exc:
        print(f"infodelta: {args.command} failed: {exc}", file=sys.stderr)
        return 1

    for warning in result.get("warnings", []):
        print(f"infodelta: warning: {warning}", file=sys.stderr)
    if args.command == "ingest":
        n = len(result.get("outputs", []))
        print(f"ingest: wrote {n} files under {config.output_dir / 'ingest'}")
    elif args.command == "analyze":
        print(
            f"analyze: {result['pairs_analyzed']} pairs analyzed, "
            f"{len(result['failures'])} failed; outputs under {config.output_dir / 'analysis'}"
        )
        for failure in result["failures"]:
            print(f"infodelta: warning: {failure['pair']}: {failure['error']}", file=sys.stderr)
    else:
        print(
            f"report: {len(result['files'])} files for {result['bundles']} bundles "
            f"under {config.output_dir / 'report'}"
        )
        for note in result["notes"]:
            print(f"infodelta: note: {note}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

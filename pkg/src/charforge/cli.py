"""charforge command line.

Subcommands mirror the pipeline stages; flags override the config file.
Exit codes: 0 success, 1 usage or config error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .config import PipelineConfig
from .errors import ConfigError, DataError
from . import pipeline

log = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--store", help="store root directory")
    p.add_argument("--verbose", action="store_true", help="log record-level decisions")
    p.add_argument("--log-file", help="write structured logs to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="charforge")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="filter and persist raw articles")
    _add_common(p)
    p.add_argument("--in", dest="input", required=True, help="articles.jsonl")
    p.add_argument("--house", required=True)
    p.add_argument("--from", dest="date_from", help="YYYY-MM-DD")
    p.add_argument("--to", dest="date_to", help="YYYY-MM-DD")

    for name, _help in [
        ("resolve", "rewrite coreferences and partial names"),
        ("clauses", "extract typed clauses from CoNLL-U parses"),
        ("synth", "synthesize demonstrations, filter and split"),
        ("prompts", "emit prompt jobs for the test entities"),
        ("evaluate", "match generated text against the reference corpora"),
    ]:
        p = sub.add_parser(name, help=_help)
        _add_common(p)
        p.add_argument("--house", required=True)
        if name == "synth":
            p.add_argument("--threshold", type=int, help="minimum sentence count (exclusive)")
            p.add_argument("--test-entities", type=int, help="held-out entity count")
        if name == "evaluate":
            p.add_argument("--embedder", help="'stub' or http endpoint")
            p.add_argument("--threshold", type=float, help="cosine threshold")

    p = sub.add_parser("report", help="aggregate metrics into report.csv / report.md")
    _add_common(p)

    p = sub.add_parser("run", help="run all stages")
    _add_common(p)
    p.add_argument("--in", dest="inputs", action="append", default=[],
                   metavar="HOUSE=FILE", help="input per house (repeatable)")
    p.add_argument("--from-stage", default="ingest", choices=pipeline.STAGE_ORDER)

    return parser


def _setup_logging(args) -> None:
    handlers: list[logging.Handler] = []
    console = logging.StreamHandler(sys.stderr)
    console.setLevel(logging.INFO if args.verbose else logging.WARNING)
    handlers.append(console)
    if args.log_file:
        fh = logging.FileHandler(args.log_file, encoding="utf-8")
        fh.setLevel(logging.INFO)
        handlers.append(fh)
    logging.basicConfig(level=logging.INFO, handlers=handlers,
                        format="%(levelname)s %(name)s %(message)s", force=True)


def _load_config(args) -> PipelineConfig:
    if args.config:
        cfg = PipelineConfig.from_file(args.config)
    else:
        cfg = PipelineConfig()
    if getattr(args, "store", None):
        cfg.store = args.store
    if getattr(args, "house", None) and args.house not in cfg.media_houses:
        cfg.media_houses = cfg.media_houses + [args.house]
    if getattr(args, "date_from", None):
        cfg.date_from = args.date_from
    if getattr(args, "date_to", None):
        cfg.date_to = args.date_to
    if getattr(args, "embedder", None):
        cfg.embedder = args.embedder
    if args.command == "synth":
        if getattr(args, "threshold", None) is not None:
            cfg.demo_threshold = args.threshold
        if getattr(args, "test_entities", None) is not None:
            cfg.test_entity_count = args.test_entities
    if args.command == "evaluate" and getattr(args, "threshold", None) is not None:
        cfg.cosine_threshold = args.threshold
    if not cfg.media_houses and args.command != "report":
        # report without a config discovers houses from the store
        raise ConfigError("no media house given (use --house or the config file)")
    cfg.validate(require_houses=args.command != "report")
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _setup_logging(args)
    try:
        cfg = _load_config(args)
        if args.command == "ingest":
            result = pipeline.run_ingest(cfg, args.house, args.input)
        elif args.command in ("resolve", "clauses", "synth", "prompts", "evaluate"):
            fn = getattr(pipeline, f"run_{args.command}")
            result = fn(cfg, args.house)
        elif args.command == "report":
            result = pipeline.run_report(cfg)
        elif args.command == "run":
            inputs = {}
            for item in args.inputs:
                if "=" not in item:
                    raise ConfigError(f"--in expects HOUSE=FILE, got {item!r}")
                house, path = item.split("=", 1)
                inputs[house] = path
            result = pipeline.run_all(cfg, inputs or None, args.from_stage)
        else:  # pragma: no cover
            raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(result, sort_keys=True, default=str))
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line driver emitting deterministic CSV/JSON reports.

Subcommands:
  norms        one row per (corpus entry, requested norm)
  equivalence  two-sided band report: LHS vs test-weight and searched duals
  search       infimum search per entry with floor/test ordering checks

A JSON config file supplies the corpus, grids, theorem parameters and
search settings; the flags --output, --format, --seed and --grid-scale
override or extend it.  Exit codes: 0 success, 2 configuration error,
3 at least one row failed (the report file is still written).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from .corpus import corpus_from_json_file, default_corpus, make_corpus
from .dual import DualParams, dual_params
from .errors import ConfigError
from .quadrature import EvalGrids, grids_from_config
from .report import (
    equivalence_report,
    norms_report,
    search_report,
    write_report,
)
from .search import SearchConfig

__all__ = ["main", "cmd_norms", "cmd_equivalence", "cmd_search"]


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {path}: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError(f"config root must be a JSON object: {path}")
    return config


def _resolve_corpus(config: dict):
    if "corpus" in config and config["corpus"] is not None:
        return make_corpus(config["corpus"])
    if "corpus_path" in config and config["corpus_path"] is not None:
        return corpus_from_json_file(str(config["corpus_path"]))
    return default_corpus()


def _resolve_params(config: dict) -> DualParams:
    params = config.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("config key 'params' must be an object")
    theorem = config.get("theorem", "S2_bergman")
    return dual_params(
        str(theorem),
        p=float(params.get("p", 3.0)),
        alpha=(None if params.get("alpha") is None else float(params["alpha"])),
        s=(None if params.get("s") is None else float(params["s"])),
        aperture=(
            None if params.get("aperture") is None else float(params["aperture"])
        ),
    )


def _resolve_search(config: dict, seed: int | None) -> SearchConfig | None:
    block = config.get("search", {})
    if block is None:
        return None
    if not isinstance(block, dict):
        raise ConfigError("config key 'search' must be an object or null")
    search = SearchConfig.from_json(block)
    if seed is not None:
        search = replace(search, seed=seed)
    return search


def _resolve_seed(config: dict, args) -> int | None:
    if args.seed is not None:
        return int(args.seed)
    if "seed" in config and config["seed"] is not None:
        return int(config["seed"])
    return None


def _resolve_output(config: dict, args) -> tuple[str, str]:
    output = args.output or config.get("output")
    if not output:
        raise ConfigError("no output path: pass --output or set 'output' in config")
    parent = os.path.dirname(os.path.abspath(output))
    if not os.path.isdir(parent):
        raise ConfigError(f"output directory does not exist: {parent}")
    fmt = args.format or config.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unknown report format: {fmt!r}; expected csv or json")
    return str(output), str(fmt)


def _base_grids(config: dict, scale: int) -> EvalGrids:
    return grids_from_config(config.get("grid"), scale=scale)


def _refined_grids(config: dict, scale: int, theorem: str) -> EvalGrids:
    grid_cfg = dict(config.get("grid") or {})
    if theorem == "S3_bloch":
        grid_cfg["doubled_a"] = True
    return grids_from_config(grid_cfg, scale=2 * scale)


def _finish(report, rows, output: str, fmt: str) -> int:
    write_report(report, output, fmt)
    failed = [row for row in rows if getattr(row, "error", None)]
    if failed:
        print(
            f"{len(failed)} of {len(rows)} rows failed; first: "
            f"{failed[0].label}: {failed[0].error}",
            file=sys.stderr,
        )
        return 3
    return 0


def cmd_norms(config: dict, args) -> int:
    corpus = _resolve_corpus(config)
    grids = _base_grids(config, args.grid_scale)
    requests = config.get("norms")
    if requests is not None and not isinstance(requests, list):
        raise ConfigError("config key 'norms' must be a list of requests")
    output, fmt = _resolve_output(config, args)
    report = norms_report(corpus, requests, grids)
    return _finish(report, report.rows, output, fmt)


def cmd_equivalence(config: dict, args) -> int:
    corpus = _resolve_corpus(config)
    params = _resolve_params(config)
    seed = _resolve_seed(config, args)
    search = _resolve_search(config, seed)
    grids = _base_grids(config, args.grid_scale)
    refined = None
    if bool(config.get("refine", True)):
        refined = _refined_grids(config, args.grid_scale, params.theorem)
    output, fmt = _resolve_output(config, args)
    report = equivalence_report(corpus, params, grids, refined, search)
    return _finish(report, report.rows, output, fmt)


def cmd_search(config: dict, args) -> int:
    corpus = _resolve_corpus(config)
    params = _resolve_params(config)
    seed = _resolve_seed(config, args)
    search = _resolve_search(config, seed)
    if search is None:
        raise ConfigError("the search command needs a 'search' config block")
    grids = _base_grids(config, args.grid_scale)
    output, fmt = _resolve_output(config, args)
    report = search_report(corpus, params, search, grids)
    return _finish(report, report.rows, output, fmt)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discnorm",
        description="Norms of analytic functions on the disc and their "
        "weighted dual characterizations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("norms", "tabulate norm values over a corpus"),
        ("equivalence", "two-sided equivalence band report"),
        ("search", "infimum search over the weight family"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", help="JSON config file")
        cmd.add_argument("--output", help="report file path (overrides config)")
        cmd.add_argument(
            "--format", choices=("csv", "json"), help="report format (overrides config)"
        )
        cmd.add_argument("--seed", type=int, help="search seed (overrides config)")
        cmd.add_argument(
            "--grid-scale",
            type=int,
            default=1,
            help="multiply all grid counts by this factor",
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.grid_scale < 1:
        print("config error: --grid-scale must be >= 1", file=sys.stderr)
        return 2
    handler = {
        "norms": cmd_norms,
        "equivalence": cmd_equivalence,
        "search": cmd_search,
    }[args.command]
    try:
        config = _load_config(args.config)
        return handler(config, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``fcssc {cluster,select,evaluate,stats}``.

Every command writes one JSON envelope (``schema_version``, ``config``,
``timestamp``, ``payload``). Option values resolve as: command line, then a
``--config`` file (a previous envelope or a plain dict), then ``FCSSC_*``
environment variables, then built-in defaults.

Exit codes: 0 ok, 2 usage/validation, 3 data error, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .clustering import cluster_count, cluster_features
from .dataset import DatasetError, load_dataset
from .evaluation import (DegenerateStatisticError, critical_difference, cross_validate,
                         friedman, make_fold_plan, rank_methods)
from .selection import SelectorConfig, fcssc

SCHEMA_VERSION = 1
ENV_PREFIX = "FCSSC_"

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _label(value: str):
    return int(value) if value.lstrip("-").isdigit() else value


def _add_data_opts(p):
    p.add_argument("--input", required=True, help="CSV file")
    p.add_argument("--label-col", type=_label, default=-1,
                   help="label column name, or zero-based index (default: last)")
    p.add_argument("--no-header", action="store_true", help="file has no header row")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--config", help="JSON config (e.g. a previous report) supplying defaults")


def _add_selector_opts(p):
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--pi", type=float, default=1.0)
    p.add_argument("--clustering", choices=["auto", "on", "off"], default="auto")
    p.add_argument("--k", type=int, default=None, help="number of feature clusters")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fcssc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fcssc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cluster", help="group features with fuzzy C-means")
    _add_data_opts(p)
    p.add_argument("--k", type=int, default=None, help="number of clusters (default: ceil(sqrt(M) ln M))")

    p = sub.add_parser("select", help="run the two-stage selector")
    _add_data_opts(p)
    _add_selector_opts(p)

    p = sub.add_parser("evaluate", help="cross-validate all features vs. the selected subset")
    _add_data_opts(p)
    _add_selector_opts(p)
    p.add_argument("--knn-k", type=int, default=5)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--select-once", action="store_true",
                   help="select on the full data once instead of inside each fold")
    p.add_argument("--no-stratify", action="store_true")

    p = sub.add_parser("stats", help="Friedman test and critical difference over result files")
    p.add_argument("results", nargs="+",
                   help='JSON files {"method": name, "scores": {dataset: accuracy}}')
    p.add_argument("--q-alpha", type=float, default=None)
    p.add_argument("--output")
    p.add_argument("--config")
    return parser


def _subparser(parser, command):
    for action in parser._subparsers._group_actions:
        if command in action.choices:
            return action.choices[command]
    raise UsageError(f"unknown command {command!r}")


def _env_defaults(sub) -> dict:
    out = {}
    for action in sub._actions:
        if not action.option_strings or action.dest in ("help", "config"):
            continue
        raw = os.environ.get(ENV_PREFIX + action.dest.upper())
        if raw is None:
            continue
        if action.nargs == 0:
            out[action.dest] = raw.lower() in ("1", "true", "yes", "on")
        else:
            out[action.dest] = action.type(raw) if action.type else raw
    return out


def _prescan_config(argv) -> str | None:
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--config="):
            return a.split("=", 1)[1]
    return None


def parse_args(argv) -> argparse.Namespace:
    parser = build_parser()
    command = next((a for a in argv if a in COMMANDS), None)
    if command is None:
        return parser.parse_args(argv)
    sub = _subparser(parser, command)
    defaults = _env_defaults(sub)
    cfg_path = _prescan_config(argv)
    if cfg_path:
        try:
            cfg = json.loads(Path(cfg_path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {cfg_path}: {exc}") from exc
        cfg = cfg.get("config", cfg)
        dests = {a.dest for a in sub._actions}
        defaults.update({k: v for k, v in cfg.items() if k in dests and k != "config"})
    sub.set_defaults(**defaults)
    if "input" in defaults:
        for a in sub._actions:
            if a.dest == "input":
                a.required = False
    return parser.parse_args(argv)


def _config_echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("config", "output")}


def _load(args):
    path = Path(args.input)
    if not path.is_file():
        raise UsageError(f"input file not found: {path}")
    return load_dataset(path, args.label_col, not args.no_header)


def _selector_config(args) -> SelectorConfig:
    return SelectorConfig(beta=args.beta, delta=args.delta, clustering=args.clustering,
                          k=args.k, pi=args.pi, seed=args.seed)


def cmd_cluster(args) -> dict:
    fds = _load(args)
    k = args.k if args.k is not None else cluster_count(fds.n_features)
    if not 1 <= k <= fds.n_features:
        raise ValueError(f"k must lie in [1, {fds.n_features}]")
    groups, state = cluster_features(fds.samples, k, seed=args.seed)
    return {
        "k": k,
        "n_features": fds.n_features,
        "groups": [list(g) for g in groups.groups],
        "group_names": [[fds.feature_names[a] for a in g] for g in groups.groups],
        "objective": state.objective,
        "iterations": state.iterations,
    }


def cmd_select(args) -> dict:
    fds = _load(args)
    cfg = _selector_config(args)
    trace = fcssc(fds, cfg)
    return trace.to_dict(fds.feature_names)


def cmd_evaluate(args) -> dict:
    fds = _load(args)
    if args.folds > fds.n_samples:
        raise ValueError(f"--folds {args.folds} exceeds the {fds.n_samples} samples")
    if args.knn_k < 1:
        raise ValueError("--knn-k must be >= 1")
    cfg = _selector_config(args)
    plan = make_fold_plan(fds.labels, args.folds, args.seed, not args.no_stratify)
    baseline = cross_validate(fds, None, plan, args.knn_k)
    selected = cross_validate(fds, lambda train: fcssc(train, cfg), plan, args.knn_k,
                              select_once=args.select_once)
    return {
        "folds": args.folds,
        "stratified": not args.no_stratify,
        "select_once": args.select_once,
        "baseline": baseline.summary(),
        "fcssc": selected.summary(),
    }


def _read_results(paths) -> tuple[list[str], list[str], np.ndarray]:
    methods, tables = [], []
    for p in paths:
        path = Path(p)
        if not path.is_file():
            raise UsageError(f"result file not found: {path}")
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
            methods.append(str(doc["method"]))
            tables.append({str(k): float(v) for k, v in doc["scores"].items()})
        except (ValueError, KeyError, TypeError, AttributeError) as exc:
            raise DatasetError(f"{path}: malformed result file ({exc})") from exc
    datasets = sorted(tables[0])
    for p, t in zip(paths, tables):
        if sorted(t) != datasets:
            raise DatasetError(f"{p}: dataset names differ from {paths[0]}")
    scores = np.array([[t[d] for t in tables] for d in datasets])
    return methods, datasets, scores


def cmd_stats(args) -> dict:
    methods, datasets, scores = _read_results(args.results)
    if len(methods) < 2 or len(datasets) < 2:
        raise ValueError("need at least 2 methods and 2 datasets")
    table = rank_methods(scores)
    try:
        res = friedman(table)
        chi2, tau_f = res.tau_chi2, res.tau_f
    except DegenerateStatisticError as err:  # unanimous ranking: tau_F undefined
        chi2, tau_f = err.tau_chi2, None
    out = {
        "methods": methods,
        "datasets": datasets,
        "ranks": table.ranks.tolist(),
        "average_ranks": dict(zip(methods, table.average_ranks.tolist())),
        "tau_chi2": chi2,
        "tau_f": tau_f,
    }
    if args.q_alpha is not None:
        out["q_alpha"] = args.q_alpha
        out["cd"] = critical_difference(args.q_alpha, table.m, table.n)
    return out


COMMANDS = {"cluster": cmd_cluster, "select": cmd_select,
            "evaluate": cmd_evaluate, "stats": cmd_stats}


def envelope(command: str, config: dict, payload: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "fcssc",
        "version": __version__,
        "command": command,
        "config": config,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "payload": payload,
    }


def _emit(doc: dict, output: str | None):
    text = json.dumps(doc, indent=2)
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _fail(code: int, kind: str, message: str) -> int:
    print(json.dumps({"error": {"exit_code": code, "type": kind, "message": message}}))
    return code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parse_args(argv)
        payload = COMMANDS[args.command](args)
        _emit(envelope(args.command, _config_echo(args), payload), args.output)
        return EXIT_OK
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        return _fail(EXIT_USAGE, "usage", str(exc))
    except DegenerateStatisticError as exc:
        return _fail(EXIT_DATA, "degenerate_statistic", str(exc))
    except DatasetError as exc:
        return _fail(EXIT_DATA, exc.code, str(exc))
    except ValueError as exc:
        return _fail(EXIT_USAGE, "validation", str(exc))
    except Exception as exc:  # noqa: BLE001
        return _fail(EXIT_INTERNAL, "internal", f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())

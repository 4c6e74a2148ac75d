"""Command-line front door for the whole pipeline.

Subcommands mirror the pipeline stages: extract features from a corpus,
train a tree, predict a single text, evaluate, and serve the HTTP API.

``predict`` exits with code 2 when the text looks like location sharing
(and 0 when clean), so shell scripts can gate on it.
"""
from __future__ import annotations

import argparse
import socket
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .dataset import (CorpusError, export_table, featurize_corpus,
                      load_corpus_file)
from .evaluation import cross_validate, evaluate_split
from .features import GazetteerError, GazetteerSet, load_gazetteers
from .service import classify_text, create_app
from .tree import (DecisionTree, InducerParams, TreeFormatError, induce,
                   load_tree, paper_reference_tree, save_tree, serialize)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_SHARING = 2


@dataclass(frozen=True)
class RunConfig:
    """Defaults shared by all subcommands."""

    gazetteer_dir: Optional[Path] = None  # None = bundled data files
    model_path: Optional[Path] = None
    seed: int = 1
    folds: int = 10
    split_pct: int = 66
    min_leaf: int = 2
    port: int = 8077


DEFAULTS = RunConfig()


def _add_gazetteer_flag(parser):
    parser.add_argument(
        "--gazetteers", type=Path, default=None, metavar="DIR",
        help="directory with cities.txt, special_words.txt, verbs.txt, "
             "venues.txt (default: bundled lists)")


def _add_model_flags(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--model", type=Path, help="path to a saved tree model")
    group.add_argument("--paper-tree", action="store_true",
                       help="use the built-in reference tree instead of a model file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="konum-guard",
        description="Detect implicit location sharing in short Turkish text.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="featurize a corpus to CSV on stdout")
    p.add_argument("--corpus", type=Path, required=True)
    _add_gazetteer_flag(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("train", help="induce a tree and save it")
    p.add_argument("--corpus", type=Path, required=True)
    _add_gazetteer_flag(p)
    p.add_argument("--out", type=Path, default=Path("model.txt"),
                   help="where to write the model (default: model.txt)")
    p.add_argument("--min-leaf", type=int, default=DEFAULTS.min_leaf)
    p.add_argument("--prune", action="store_true")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="classify one text")
    p.add_argument("text")
    _add_model_flags(p)
    _add_gazetteer_flag(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("eval", help="evaluate an inducer configuration")
    p.add_argument("--corpus", type=Path, required=True)
    _add_gazetteer_flag(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--folds", type=int, default=None,
                       help=f"k for cross-validation (default {DEFAULTS.folds})")
    group.add_argument("--split", type=float, default=None,
                       help="training percentage for a single split")
    p.add_argument("--seed", type=int, default=DEFAULTS.seed)
    p.add_argument("--min-leaf", type=int, default=DEFAULTS.min_leaf)
    p.add_argument("--prune", action="store_true")
    p.add_argument("--out", type=Path, default=Path("eval-report.json"),
                   help="where to write the JSON report (default: eval-report.json)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", help="run the classification service")
    _add_model_flags(p)
    _add_gazetteer_flag(p)
    p.add_argument("--port", type=int, default=DEFAULTS.port)
    p.set_defaults(func=cmd_serve)

    return parser


def _gazetteers(args) -> GazetteerSet:
    return load_gazetteers(args.gazetteers)


def _load_model(args) -> tuple[DecisionTree, str]:
    if args.paper_tree:
        return paper_reference_tree(), "paper-tree"
    return load_tree(args.model), "trained"


def cmd_extract(args) -> int:
    gazetteers = _gazetteers(args)
    examples = load_corpus_file(args.corpus)
    sys.stdout.write(export_table(featurize_corpus(examples, gazetteers)))
    return EXIT_OK


def cmd_train(args) -> int:
    gazetteers = _gazetteers(args)
    examples = load_corpus_file(args.corpus)
    if not examples:
        print("error: corpus is empty, nothing to train on", file=sys.stderr)
        return EXIT_ERROR
    params = InducerParams(min_leaf=args.min_leaf, pruning=args.prune)
    tree = induce(featurize_corpus(examples, gazetteers), params)
    save_tree(tree, args.out)
    print(serialize(tree))
    print(f"\nmodel written to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_predict(args) -> int:
    model, _ = _load_model(args)
    gazetteers = _gazetteers(args)
    verdict = classify_text(model, gazetteers, args.text)
    flags = " ".join(f"{name}={int(value)}"
                     for name, value in verdict.features.by_name().items())
    path = " -> ".join(f"feature{idx} = {branch}" for idx, branch in verdict.path)
    print(f"label: {verdict.label}")
    print(f"features: {flags}")
    print(f"path: {path if path else '(root)'}")
    if verdict.matched_terms:
        matched = " ".join(f"{name}={term}" for name, term in verdict.matched_terms)
        print(f"matched: {matched}")
    return EXIT_SHARING if verdict.label == 1 else EXIT_OK


def cmd_eval(args) -> int:
    if args.folds is not None and args.folds < 2:
        raise UsageError("--folds must be at least 2")
    if args.split is not None and not 0 < args.split < 100:
        raise UsageError("--split must be strictly between 0 and 100")
    gazetteers = _gazetteers(args)
    instances = featurize_corpus(load_corpus_file(args.corpus), gazetteers)
    params = InducerParams(min_leaf=args.min_leaf, pruning=args.prune)
    if args.split is not None:
        report = evaluate_split(params, instances, args.split, args.seed)
    else:
        folds = args.folds if args.folds is not None else DEFAULTS.folds
        report = cross_validate(params, instances, folds, args.seed)
    sys.stdout.write(report.format_table())
    args.out.write_text(report.to_json(), encoding="utf-8")
    print(f"report written to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    model, kind = _load_model(args)
    gazetteers = _gazetteers(args)
    app = create_app(model, gazetteers, model_kind=kind)
    with socket.socket() as probe:
        try:
            probe.bind(("127.0.0.1", args.port))
        except OSError as exc:
            print(f"error: cannot bind port {args.port}: {exc}", file=sys.stderr)
            return EXIT_ERROR
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return EXIT_OK


class UsageError(Exception):
    pass


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits 2 with usage
    except (CorpusError, GazetteerError, TreeFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

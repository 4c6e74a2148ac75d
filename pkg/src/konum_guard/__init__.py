"""Implicit location sharing detection for short Turkish text.

Pipeline: tokenize and fold text, extract six binary morphology and
gazetteer features, classify with a small decision tree, warn the user.
"""
from .dataset import Instance, LabeledExample, load_corpus, synthesize_corpus
from .evaluation import EvalReport, cross_validate, evaluate_split
from .features import (FeatureVector, Gazetteer, GazetteerError, GazetteerSet,
                       extract, extract_with_matches, load_gazetteers)
from .service import (WARNING_ASCII, WARNING_TURKISH, Verdict, classify_text,
                      create_app)
from .text import Token, fold_turkish, tokenize
from .tree import (DecisionTree, InducerParams, Leaf, Split, TreeFormatError,
                   induce, load_tree, paper_reference_tree, parse_tree, predict,
                   save_tree, serialize)

__version__ = "0.1.0"

__all__ = [
    "DecisionTree",
    "EvalReport",
    "FeatureVector",
    "Gazetteer",
    "GazetteerError",
    "GazetteerSet",
    "InducerParams",
    "Instance",
    "LabeledExample",
    "Leaf",
    "Split",
    "Token",
    "TreeFormatError",
    "Verdict",
    "WARNING_ASCII",
    "WARNING_TURKISH",
    "classify_text",
    "create_app",
    "cross_validate",
    "evaluate_split",
    "extract",
    "extract_with_matches",
    "fold_turkish",
    "induce",
    "load_corpus",
    "load_gazetteers",
    "load_tree",
    "paper_reference_tree",
    "parse_tree",
    "predict",
    "save_tree",
    "serialize",
    "synthesize_corpus",
    "tokenize",
]

"""Decision-tree model over the six binary features.

Covers the reference tree shipped with the package, C4.5-style induction
(gain-ratio splits, optional pessimistic pruning), prediction, and the
Weka-style indented text format used for model files, e.g.::

    feature4 = 0
    | feature6 = 0
    | | feature3 = 0: 0 (175.0/3.0)

Leaf annotations are "(reached/misclassified)" over the training set.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from pathlib import Path
from statistics import NormalDist
from typing import TYPE_CHECKING, Optional, Sequence, Union

if TYPE_CHECKING:
    from .dataset import Instance
    from .features import FeatureVector

MODEL_HEADER = "# konum-guard tree v1"

NUM_FEATURES = 6


class TreeFormatError(ValueError):
    """Raised when tree text cannot be parsed."""


@dataclass(frozen=True)
class Leaf:
    label: int
    reached: int
    misclassified: int

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError(f"leaf label must be 0 or 1, got {self.label}")
        if not 0 <= self.misclassified <= self.reached:
            raise ValueError(
                f"leaf counts invalid: {self.misclassified} misclassified "
                f"of {self.reached} reached")


@dataclass(frozen=True)
class Split:
    feature_index: int
    child_false: "TreeNode"
    child_true: "TreeNode"

    def __post_init__(self):
        if not 1 <= self.feature_index <= NUM_FEATURES:
            raise ValueError(f"feature index out of range: {self.feature_index}")


TreeNode = Union[Leaf, Split]


@dataclass(frozen=True)
class InducerParams:
    min_leaf: int = 2
    pruning: bool = False
    confidence: float = 0.25

    def __post_init__(self):
        if self.min_leaf < 1:
            raise ValueError(f"min_leaf must be >= 1, got {self.min_leaf}")
        if not 0 < self.confidence < 1:
            raise ValueError(f"confidence must be in (0, 1), got {self.confidence}")


@dataclass(frozen=True)
class DecisionTree:
    root: TreeNode
    inducer: str = ""
    params: Optional[InducerParams] = None
    trained_on: Optional[int] = None


def paper_reference_tree() -> DecisionTree:
    """The six-leaf tree the study deployed, counts included."""
    root = Split(
        4,
        child_false=Split(
            6,
            child_false=Split(
                3,
                child_false=Leaf(0, 175, 3),
                child_true=Split(2, child_false=Leaf(0, 55, 17),
                                 child_true=Leaf(1, 43, 15)),
            ),
            child_true=Leaf(1, 49, 5),
        ),
        child_true=Split(5, child_false=Leaf(0, 7, 1),
                         child_true=Leaf(1, 171, 14)),
    )
    return DecisionTree(root=root, inducer="reference", trained_on=500)


def predict(tree: DecisionTree, fv: "FeatureVector") -> tuple[int, list[tuple[int, int]]]:
    """Walk the tree; returns the leaf label and the (feature, branch) path."""
    bits = fv.as_bits()
    node = tree.root
    path = []
    while isinstance(node, Split):
        value = bits[node.feature_index - 1]
        path.append((node.feature_index, value))
        node = node.child_true if value else node.child_false
    return node.label, path


def count_leaves(tree: DecisionTree) -> int:
    def walk(node):
        if isinstance(node, Leaf):
            return 1
        return walk(node.child_false) + walk(node.child_true)
    return walk(tree.root)


def entropy(class_counts: tuple[int, int]) -> float:
    """Binary Shannon entropy in bits; 0*log(0) counts as 0."""
    n0, n1 = class_counts
    total = n0 + n1
    if total == 0:
        raise ValueError("entropy undefined for an empty node")
    h = 0.0
    for count in (n0, n1):
        if count:
            p = count / total
            h -= p * math.log2(p)
    return h


def _label_counts(instances: Sequence["Instance"]) -> tuple[int, int]:
    ones = sum(inst.label for inst in instances)
    return (len(instances) - ones, ones)


def _split_by_feature(instances, feature_index):
    off, on = [], []
    for inst in instances:
        (on if inst.features.as_bits()[feature_index - 1] else off).append(inst)
    return off, on


def gain_ratio(instances: Sequence["Instance"], feature_index: int) -> float:
    """Information gain of the feature divided by its split information.

    Defined as 0 when the feature is constant on the instance set.
    """
    if not instances:
        raise ValueError("gain ratio undefined for an empty instance set")
    off, on = _split_by_feature(instances, feature_index)
    if not off or not on:
        return 0.0
    n = len(instances)
    gain = entropy(_label_counts(instances)) - (
        len(off) * entropy(_label_counts(off))
        + len(on) * entropy(_label_counts(on))
    ) / n
    split_info = entropy((len(off), len(on)))
    return max(gain, 0.0) / split_info


def induce(instances: Sequence["Instance"],
           params: InducerParams = InducerParams()) -> DecisionTree:
    """Grow a tree by recursive gain-ratio splitting.

    At each node the unused feature with the highest gain ratio wins, ties
    going to the lowest index. A feature is only considered when both
    children would hold at least ``min_leaf`` instances. Recursion ends at
    pure nodes or when no feature remains usable; zero-gain splits are
    still taken so a consistent training set is always fit exactly. Leaf
    labels are the majority class, ties resolved to 0.
    """
    if not instances:
        raise ValueError("cannot induce a tree from an empty instance set")
    root = _grow(list(instances), params, used=frozenset())
    if params.pruning:
        root = _prune(root, params.confidence)
    return DecisionTree(root=root, inducer="c4.5", params=params,
                        trained_on=len(instances))


def _majority_leaf(instances) -> Leaf:
    n0, n1 = _label_counts(instances)
    label = 1 if n1 > n0 else 0
    return Leaf(label, n0 + n1, min(n0, n1))


def _grow(instances, params, used):
    n0, n1 = _label_counts(instances)
    if n0 == 0 or n1 == 0:
        return Leaf(1 if n0 == 0 else 0, len(instances), 0)

    best_feature, best_ratio, best_halves = None, -1.0, None
    for feature in range(1, NUM_FEATURES + 1):
        if feature in used:
            continue
        off, on = _split_by_feature(instances, feature)
        if min(len(off), len(on)) < params.min_leaf:
            continue
        ratio = gain_ratio(instances, feature)
        if ratio > best_ratio:
            best_feature, best_ratio, best_halves = feature, ratio, (off, on)

    if best_feature is None:
        return _majority_leaf(instances)

    off, on = best_halves
    return Split(
        best_feature,
        child_false=_grow(off, params, used | {best_feature}),
        child_true=_grow(on, params, used | {best_feature}),
    )


def _pessimistic_errors(reached: int, errors: int, confidence: float) -> float:
    """Upper confidence bound on the error count at a leaf (C4.5 style,
    normal approximation with continuity correction)."""
    if reached == 0:
        return 0.0
    if errors == 0:
        return reached * (1.0 - confidence ** (1.0 / reached))
    if errors + 0.5 >= reached:
        return max(reached - errors, 0.0)
    z = NormalDist().inv_cdf(1.0 - confidence)
    f = (errors + 0.5) / reached
    r = (f + z * z / (2 * reached)
         + z * math.sqrt(f / reached - f * f / reached
                         + z * z / (4 * reached * reached))) / (1 + z * z / reached)
    return r * reached - errors


def _node_counts(node) -> tuple[int, int]:
    if isinstance(node, Leaf):
        good = node.reached - node.misclassified
        return (good, node.misclassified) if node.label == 0 else (node.misclassified, good)
    f0, f1 = _node_counts(node.child_false)
    t0, t1 = _node_counts(node.child_true)
    return (f0 + t0, f1 + t1)


def _subtree_error_estimate(node, confidence) -> float:
    if isinstance(node, Leaf):
        return node.misclassified + _pessimistic_errors(
            node.reached, node.misclassified, confidence)
    return (_subtree_error_estimate(node.child_false, confidence)
            + _subtree_error_estimate(node.child_true, confidence))


def _prune(node, confidence):
    """Bottom-up subtree replacement when a majority leaf's pessimistic
    error does not exceed the subtree's."""
    if isinstance(node, Leaf):
        return node
    pruned = replace(node,
                     child_false=_prune(node.child_false, confidence),
                     child_true=_prune(node.child_true, confidence))
    n0, n1 = _node_counts(pruned)
    label = 1 if n1 > n0 else 0
    mis = min(n0, n1)
    as_leaf = Leaf(label, n0 + n1, mis)
    leaf_estimate = mis + _pessimistic_errors(n0 + n1, mis, confidence)
    if leaf_estimate <= _subtree_error_estimate(pruned, confidence) + 0.1:
        return as_leaf
    return pruned


def _leaf_suffix(leaf: Leaf) -> str:
    return f": {leaf.label} ({leaf.reached}.0/{leaf.misclassified}.0)"


def serialize(tree: DecisionTree) -> str:
    """Render the tree in the indented text format shown above."""
    if isinstance(tree.root, Leaf):
        return _leaf_suffix(tree.root)
    lines: list[str] = []

    def walk(node: Split, depth: int):
        prefix = "| " * depth
        for value, child in ((0, node.child_false), (1, node.child_true)):
            line = f"{prefix}feature{node.feature_index} = {value}"
            if isinstance(child, Leaf):
                lines.append(line + _leaf_suffix(child))
            else:
                lines.append(line)
                walk(child, depth + 1)

    walk(tree.root, 0)
    return "\n".join(lines)


_LEAF_ONLY_RE = re.compile(r": ([01]) \((\d+)\.0/(\d+)\.0\)$")
_NODE_RE = re.compile(
    r"feature(\d) = ([01])(?:: ([01]) \((\d+)\.0/(\d+)\.0\))?$")


def parse_tree(text: str) -> DecisionTree:
    """Parse the text format back into a tree.

    Comment lines ('#') and blank lines are skipped. Raises
    TreeFormatError on malformed lines, broken indentation, missing or
    out-of-order branches, or a feature repeated along a path.
    """
    entries = []  # (lineno, depth, body)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        depth = 0
        while line.startswith("| "):
            depth += 1
            line = line[2:]
        entries.append((lineno, depth, line))

    if not entries:
        raise TreeFormatError("no tree lines found")

    if len(entries) == 1 and entries[0][2].startswith(":"):
        lineno, depth, body = entries[0]
        m = _LEAF_ONLY_RE.fullmatch(body)
        if m is None or depth != 0:
            raise TreeFormatError(f"line {lineno}: malformed leaf line")
        root: TreeNode = _make_leaf(m.group(1), m.group(2), m.group(3), lineno)
    else:
        pos = 0

        def parse_branch(depth: int, used: frozenset) -> tuple:
            """Parse one 'featureK = v' line and its subtree; returns
            (feature, value, node)."""
            nonlocal pos
            if pos >= len(entries):
                raise TreeFormatError("unexpected end of tree text")
            lineno, line_depth, body = entries[pos]
            if line_depth != depth:
                raise TreeFormatError(
                    f"line {lineno}: expected indent depth {depth}, got {line_depth}")
            m = _NODE_RE.fullmatch(body)
            if m is None:
                raise TreeFormatError(f"line {lineno}: malformed node line: {body!r}")
            feature = int(m.group(1))
            if not 1 <= feature <= NUM_FEATURES:
                raise TreeFormatError(f"line {lineno}: feature index out of range")
            if feature in used:
                raise TreeFormatError(
                    f"line {lineno}: feature{feature} repeated on its path")
            value = int(m.group(2))
            pos += 1
            if m.group(3) is not None:
                node: TreeNode = _make_leaf(m.group(3), m.group(4), m.group(5), lineno)
            else:
                node = parse_split(depth + 1, used | {feature})
            return feature, value, node

        def parse_split(depth: int, used: frozenset) -> Split:
            feature, value, child_false = parse_branch(depth, used)
            if value != 0:
                raise TreeFormatError(
                    f"feature{feature}: '= 0' branch must come first")
            feature2, value2, child_true = parse_branch(depth, used)
            if feature2 != feature or value2 != 1:
                raise TreeFormatError(
                    f"feature{feature}: expected matching '= 1' branch, "
                    f"got feature{feature2} = {value2}")
            return Split(feature, child_false, child_true)

        root = parse_split(0, frozenset())
        if pos != len(entries):
            lineno = entries[pos][0]
            raise TreeFormatError(f"line {lineno}: trailing content after tree")

    return DecisionTree(root=root, inducer="parsed")


def _make_leaf(label: str, reached: str, mis: str, lineno: int) -> Leaf:
    try:
        return Leaf(int(label), int(reached), int(mis))
    except ValueError as exc:
        raise TreeFormatError(f"line {lineno}: {exc}") from exc


def save_tree(tree: DecisionTree, path: Path) -> None:
    Path(path).write_text(MODEL_HEADER + "\n" + serialize(tree) + "\n",
                          encoding="utf-8")


def load_tree(path: Path) -> DecisionTree:
    return parse_tree(Path(path).read_text(encoding="utf-8"))

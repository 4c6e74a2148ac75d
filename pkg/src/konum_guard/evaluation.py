"""Evaluation protocols: stratified cross-validation, percentage split,
and side-by-side comparison of inducer configurations.

All shuffling is driven by an explicit seed so any report can be
reproduced bit for bit.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .dataset import Instance
from .tree import DecisionTree, InducerParams, induce, predict

DEFAULT_SEED = 1


@dataclass(frozen=True)
class EvalReport:
    """Accuracy summary for one evaluation run.

    ``confusion`` rows are the actual class, columns the predicted class:
    [[tn, fp], [fn, tp]].
    """

    protocol: str
    seed: int
    correctly_classified_pct: float
    confusion: tuple[tuple[int, int], tuple[int, int]]
    per_fold: Optional[tuple[float, ...]] = None

    @property
    def test_size(self) -> int:
        return sum(sum(row) for row in self.confusion)

    def to_json(self) -> str:
        doc = {
            "protocol": self.protocol,
            "seed": self.seed,
            "accuracy_pct": self.correctly_classified_pct,
            "confusion": [list(row) for row in self.confusion],
            "per_fold": list(self.per_fold) if self.per_fold is not None else None,
        }
        return json.dumps(doc, indent=2) + "\n"

    def format_table(self) -> str:
        lines = [
            f"Protocol:                       {self.protocol} (seed {self.seed})",
            f"Correctly Classified Instances: {self.correctly_classified_pct:.4f} %",
            f"Test instances:                 {self.test_size}",
            "Confusion matrix (rows actual, cols predicted):",
            f"    0: {self.confusion[0][0]:>5} {self.confusion[0][1]:>5}",
            f"    1: {self.confusion[1][0]:>5} {self.confusion[1][1]:>5}",
        ]
        if self.per_fold is not None:
            folds = "  ".join(f"{acc:.2f}" for acc in self.per_fold)
            lines.append(f"Per-fold accuracy (%):          {folds}")
        return "\n".join(lines) + "\n"


def stratified_kfold(instances: Sequence[Instance], k: int,
                     seed: int = DEFAULT_SEED) -> list[list[int]]:
    """Partition instance indices into k folds preserving class balance.

    Per-class counts across folds differ by at most one. Returns index
    lists; deterministic in the seed.
    """
    n = len(instances)
    if k < 2 or k > n:
        raise ValueError(f"k must be between 2 and {n}, got {k}")
    rng = random.Random(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    for label in (0, 1):
        indices = [i for i, inst in enumerate(instances) if inst.label == label]
        rng.shuffle(indices)
        for j, idx in enumerate(indices):
            folds[j % k].append(idx)
    return folds


def _accumulate(confusion, tree, test):
    for inst in test:
        predicted = predict(tree, inst.features)[0]
        confusion[inst.label][predicted] += 1


def _pct(confusion) -> float:
    total = sum(sum(row) for row in confusion)
    return 100.0 * (confusion[0][0] + confusion[1][1]) / total


def cross_validate(params: InducerParams, instances: Sequence[Instance],
                   k: int, seed: int = DEFAULT_SEED) -> EvalReport:
    """k-fold stratified cross-validation of the inducer."""
    folds = stratified_kfold(instances, k, seed)
    confusion = [[0, 0], [0, 0]]
    per_fold = []
    for fold in folds:
        held_out = set(fold)
        train = [inst for i, inst in enumerate(instances) if i not in held_out]
        test = [instances[i] for i in fold]
        tree = induce(train, params)
        fold_confusion = [[0, 0], [0, 0]]
        _accumulate(fold_confusion, tree, test)
        per_fold.append(_pct(fold_confusion))
        for actual in (0, 1):
            for predicted in (0, 1):
                confusion[actual][predicted] += fold_confusion[actual][predicted]
    return EvalReport(
        protocol=f"cv-{k}",
        seed=seed,
        correctly_classified_pct=_pct(confusion),
        confusion=tuple(tuple(row) for row in confusion),
        per_fold=tuple(per_fold),
    )


def percentage_split(instances: Sequence[Instance], train_pct: float,
                     seed: int = DEFAULT_SEED) -> tuple[list[Instance], list[Instance]]:
    """Shuffle deterministically, then cut at floor(n * pct / 100)."""
    if not 0 < train_pct < 100:
        raise ValueError(f"train_pct must be strictly between 0 and 100, got {train_pct}")
    shuffled = list(instances)
    random.Random(seed).shuffle(shuffled)
    cut = int(len(shuffled) * train_pct / 100)
    train, test = shuffled[:cut], shuffled[cut:]
    if not train or not test:
        raise ValueError(f"split at {train_pct}% leaves an empty train or test set")
    return train, test


def evaluate_split(params: InducerParams, instances: Sequence[Instance],
                   train_pct: float, seed: int = DEFAULT_SEED) -> EvalReport:
    """Train on the percentage split, test on the remainder."""
    train, test = percentage_split(instances, train_pct, seed)
    tree = induce(train, params)
    confusion = [[0, 0], [0, 0]]
    _accumulate(confusion, tree, test)
    return EvalReport(
        protocol=f"split-{train_pct:g}",
        seed=seed,
        correctly_classified_pct=_pct(confusion),
        confusion=tuple(tuple(row) for row in confusion),
    )


@dataclass(frozen=True)
class CompareConfig:
    """One row of a comparison: a named inducer setup plus its protocol,
    ("cv", k) or ("split", pct)."""

    name: str
    params: InducerParams
    protocol: tuple[str, float]
    seed: int = DEFAULT_SEED


def compare(configs: Sequence[CompareConfig],
            instances: Sequence[Instance]) -> list[tuple[str, str, float]]:
    """Evaluate each config; rows (name, protocol, accuracy_pct) sorted
    by accuracy descending, ties keeping input order."""
    if not configs:
        raise ValueError("no configurations to compare")
    rows = []
    for config in configs:
        kind, value = config.protocol
        if kind == "cv":
            report = cross_validate(config.params, instances, int(value), config.seed)
        elif kind == "split":
            report = evaluate_split(config.params, instances, value, config.seed)
        else:
            raise ValueError(f"unknown protocol kind: {kind!r}")
        rows.append((config.name, report.protocol, report.correctly_classified_pct))
    rows.sort(key=lambda row: -row[2])
    return rows

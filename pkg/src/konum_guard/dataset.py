"""Labeled-corpus ingestion, featurization and tabular export.

Corpus files are UTF-8 JSON-object-per-line with fields "text" and
"label" (1 = shares location). The feature table is a plain CSV of 0/1
columns feature1..feature6 plus class.

Because the original 500-tweet corpus was never published, the package
bundles a synthetic stand-in: feature vectors drawn over all 64
combinations, surface texts built from trigger phrases that fire exactly
the intended features, and labels from the reference tree with a fixed
share of seeded label noise.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional

from .features import FeatureVector, GazetteerSet, extract
from .tree import paper_reference_tree, predict

CSV_HEADER = "feature1,feature2,feature3,feature4,feature5,feature6,class"

BUNDLED_CORPUS_FILE = "corpus.jsonl"
BUNDLED_CORPUS_SEED = 1
BUNDLED_CORPUS_SIZE = 500
BUNDLED_NOISE_RATE = 0.1


class CorpusError(ValueError):
    """Raised for malformed corpus or feature-table content."""


@dataclass(frozen=True)
class LabeledExample:
    text: str
    label: int


@dataclass(frozen=True)
class Instance:
    features: FeatureVector
    label: int


def load_corpus(source: Iterable[str]) -> list[LabeledExample]:
    """Parse JSON-object-per-line records; blank lines are skipped.

    Errors carry the 1-based line number.
    """
    examples = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {lineno}: invalid JSON: {exc}") from exc
        if not isinstance(record, dict):
            raise CorpusError(f"line {lineno}: expected a JSON object")
        text = record.get("text")
        label = record.get("label")
        if not isinstance(text, str) or not text.strip():
            raise CorpusError(f"line {lineno}: 'text' must be a non-empty string")
        if isinstance(label, bool) or label not in (0, 1):
            raise CorpusError(f"line {lineno}: 'label' must be 0 or 1")
        examples.append(LabeledExample(text, label))
    return examples


def load_corpus_file(path) -> list[LabeledExample]:
    with open(path, encoding="utf-8") as fh:
        return load_corpus(fh)


def dump_corpus(examples: Iterable[LabeledExample]) -> str:
    lines = [json.dumps({"text": ex.text, "label": ex.label}, ensure_ascii=False)
             for ex in examples]
    return "".join(line + "\n" for line in lines)


def featurize_corpus(examples: Iterable[LabeledExample],
                     gazetteers: GazetteerSet) -> list[Instance]:
    """Extract features for every example, preserving order and labels."""
    return [Instance(extract(ex.text, gazetteers), ex.label) for ex in examples]


def export_table(instances: Iterable[Instance]) -> str:
    """CSV text with the fixed feature1..feature6,class header, LF endings."""
    lines = [CSV_HEADER]
    for inst in instances:
        lines.append(",".join(str(b) for b in (*inst.features.as_bits(), inst.label)))
    return "".join(line + "\n" for line in lines)


def import_table(text: str) -> list[Instance]:
    """Inverse of export_table."""
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise CorpusError(f"feature table must start with header {CSV_HEADER!r}")
    instances = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != 7 or any(cell not in ("0", "1") for cell in cells):
            raise CorpusError(f"line {lineno}: expected seven 0/1 values")
        bits = [int(cell) for cell in cells]
        instances.append(Instance(FeatureVector.from_bits(bits[:6]), bits[6]))
    return instances


# --- synthetic corpus -------------------------------------------------
#
# Trigger phrases are chosen so each fires exactly one feature against
# the bundled gazetteers ("yoldayım" ends in -dayım but "yol" is in no
# gazetteer, and so on). The generator composes one phrase per intended
# feature, so extract() returns precisely the requested vector; a
# neutral phrase fills the all-false rows.

_TRIGGER_PHRASES = {
    1: ["saatlerdir yoldayım", "buradayım", "hala sıradayım"],
    2: ["sonunda bitti", "orada bekliyorum", "aslında haklısın"],
    3: ["ev çok dağınık", "hastane kalabalıktı", "okula geç kaldım",
        "kütüphaneye uğrayacağım"],
    4: ["ankarayı özledim", "izmiri özledim", "istanbulu çok özledim"],
    5: ["armadayı gezdim", "atakuleye çıktım", "marco pascha harikaydı",
        "zorlu center kalabalıktı"],
    6: ["annemlere geldik", "az önce geldim", "artık dönüyorum"],
}

_NEUTRAL_PHRASES = [
    "bugün hava çok güzel",
    "maç heyecanlıydı",
    "film güzeldi",
    "kitap okuyorum",
    "canım sıkılıyor",
    "yarın görüşürüz",
]


def _capitalize_turkish(s: str) -> str:
    # i uppercases to İ, ı to I; plain str.upper would corrupt "izmir".
    first = {"i": "İ", "ı": "I"}.get(s[0], s[0].upper())
    return first + s[1:]


def text_for_vector(fv: FeatureVector, rng: random.Random) -> str:
    """Compose a surface text whose extracted features equal ``fv``."""
    parts = [rng.choice(_TRIGGER_PHRASES[i])
             for i, bit in enumerate(fv.as_bits(), start=1) if bit]
    if not parts:
        parts = [rng.choice(_NEUTRAL_PHRASES)]
    elif rng.random() < 0.5:
        parts.append(rng.choice(_NEUTRAL_PHRASES))
    return _capitalize_turkish(", ".join(parts) + ".")


def all_feature_vectors() -> list[FeatureVector]:
    return [FeatureVector.from_bits((code >> k) & 1 for k in range(6))
            for code in range(64)]


def synthesize_corpus(n: int = BUNDLED_CORPUS_SIZE,
                      noise_rate: float = BUNDLED_NOISE_RATE,
                      seed: int = BUNDLED_CORPUS_SEED) -> list[LabeledExample]:
    """Build a balanced labeled corpus of n examples.

    Half the examples get final label 1 and half label 0. Within each
    half, a ``noise_rate`` share carries the label the reference tree
    would NOT assign, so the best achievable accuracy is
    1 - noise_rate by construction. Every one of the 64 feature vectors
    occurs at least once. Deterministic in ``seed``.
    """
    if n < 128 or n % 2:
        raise ValueError("n must be even and at least 128 to cover all vectors")
    if not 0 <= noise_rate < 0.5:
        raise ValueError("noise_rate must be in [0, 0.5)")

    rng = random.Random(seed)
    ref = paper_reference_tree()
    by_tree_label: dict[int, list[FeatureVector]] = {0: [], 1: []}
    for fv in all_feature_vectors():
        by_tree_label[predict(ref, fv)[0]].append(fv)

    half = n // 2
    noisy = round(noise_rate * half)
    examples = []
    for final_label in (1, 0):
        clean_pool = by_tree_label[final_label]
        noise_pool = by_tree_label[1 - final_label]
        vectors = list(clean_pool)  # cover every combination once
        vectors += rng.choices(clean_pool, k=half - noisy - len(clean_pool))
        vectors += rng.choices(noise_pool, k=noisy)
        examples += [LabeledExample(text_for_vector(fv, rng), final_label)
                     for fv in vectors]
    rng.shuffle(examples)
    return examples


def bundled_corpus() -> list[LabeledExample]:
    """The synthetic corpus shipped with the package."""
    text = resources.files("konum_guard.data").joinpath(
        BUNDLED_CORPUS_FILE).read_text(encoding="utf-8")
    return load_corpus(text.splitlines())

"""Gazetteer storage and the six binary location-sharing predictors.

Feature layout (all computed on folded tokens):

  1. token ends with the locative-person suffix "deyim" / "dayım"
  2. token ends with the locative suffix "de" / "da" (token length >= 4)
  3. token matches a special location word (okul, ev, iş, ...)
  4. token matches one of the 81 Turkish province names
  5. consecutive tokens match a venue name (may be multi-word)
  6. token equals a fully inflected motion verb (geldim, gidiyorum, ...)

Turkish glues case suffixes straight onto stems ("Ankarada"), so gazetteer
matching tolerates a short trailing suffix instead of requiring equality.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .text import Token, fold_turkish, tokenize

F1_SUFFIXES = ("deyim", "dayım")
F2_SUFFIXES = ("de", "da")
F2_MIN_TOKEN_LEN = 4

# Longest suffix chain accepted after a gazetteer entry ("ankara" + "dayken").
MAX_SUFFIX_LEN = 7

DEFAULT_GAZETTEER_FILES = {
    "special_words": "special_words.txt",
    "cities": "cities.txt",
    "venues": "venues.txt",
    "verbs": "verbs.txt",
}

_WS_RE = re.compile(r"\s+")
_APOSTROPHE_RE = re.compile(r"['’]")


@dataclass(frozen=True)
class Gazetteer:
    """A named set of folded entries. Entries may span several words only
    for the venue list.

    Lookup helpers are precomputed once because the venue list can hold
    thousands of entries and extraction runs per keystroke in the UI.
    """

    name: str
    entries: frozenset[str]
    # single-word entries and multi-word entries keyed by first word
    _singles: frozenset[str] = field(init=False, compare=False, repr=False)
    _multi_by_first: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        singles = set()
        multi: dict[str, list[tuple[str, ...]]] = {}
        for entry in self.entries:
            words = tuple(entry.split(" "))
            if len(words) == 1:
                singles.add(entry)
            else:
                multi.setdefault(words[0], []).append(words)
        for group in multi.values():
            group.sort(key=lambda ws: (-len(ws), ws))
        object.__setattr__(self, "_singles", frozenset(singles))
        object.__setattr__(self, "_multi_by_first", multi)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, entry: str) -> bool:
        return entry in self.entries


@dataclass(frozen=True)
class FeatureVector:
    f1: bool
    f2: bool
    f3: bool
    f4: bool
    f5: bool
    f6: bool

    def as_bits(self) -> tuple[int, int, int, int, int, int]:
        return (int(self.f1), int(self.f2), int(self.f3),
                int(self.f4), int(self.f5), int(self.f6))

    def by_name(self) -> dict[str, bool]:
        return {f"feature{i}": bool(b) for i, b in enumerate(self.as_bits(), start=1)}

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "FeatureVector":
        vals = tuple(bool(b) for b in bits)
        if len(vals) != 6:
            raise ValueError(f"expected 6 feature bits, got {len(vals)}")
        return cls(*vals)


@dataclass(frozen=True)
class GazetteerSet:
    """The four lists needed by the extractors."""

    special_words: Gazetteer
    cities: Gazetteer
    venues: Gazetteer
    verbs: Gazetteer

    def sizes(self) -> dict[str, int]:
        return {
            "special_words": len(self.special_words),
            "cities": len(self.cities),
            "venues": len(self.venues),
            "verbs": len(self.verbs),
        }


class GazetteerError(ValueError):
    """Raised for malformed gazetteer files."""


def load_gazetteer(source: Iterable[str], name: str) -> Gazetteer:
    """Build a gazetteer from lines of text.

    '#' lines are comments, blank lines are skipped, everything else is
    trimmed, folded, stripped of apostrophes and deduplicated. A line that
    folds to nothing (e.g. bare punctuation) is an error.
    """
    entries = set()
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        entry = _WS_RE.sub(" ", _APOSTROPHE_RE.sub("", fold_turkish(line))).strip()
        if not entry:
            raise GazetteerError(f"{name}: line {lineno} is empty after folding")
        entries.add(entry)
    return Gazetteer(name, frozenset(entries))


def load_gazetteer_file(path: Path, name: Optional[str] = None) -> Gazetteer:
    with open(path, encoding="utf-8") as fh:
        return load_gazetteer(fh, name or path.stem)


def load_gazetteers(directory: Optional[Path] = None) -> GazetteerSet:
    """Load the four standard files from a directory, or the bundled
    defaults when no directory is given."""
    loaded = {}
    for name, filename in DEFAULT_GAZETTEER_FILES.items():
        if directory is None:
            ref = resources.files("konum_guard.data").joinpath(filename)
            loaded[name] = load_gazetteer(ref.read_text(encoding="utf-8").splitlines(), name)
        else:
            path = Path(directory) / filename
            if not path.is_file():
                raise FileNotFoundError(f"gazetteer file not found: {path}")
            loaded[name] = load_gazetteer_file(path, name)
    return GazetteerSet(**loaded)


def token_matches_entry(token: Token, entry: str) -> bool:
    """Match a token against a single-word entry, tolerating agglutination.

    Accepts the apostrophe stem ("Ankara'da"), an exact folded match, or
    the entry plus a short all-letter suffix chain ("Ankarada").
    """
    if token.stem == entry or token.folded == entry:
        return True
    if token.folded.startswith(entry):
        rest = token.folded[len(entry):]
        return 1 <= len(rest) <= MAX_SUFFIX_LEN and rest.isalpha()
    return False


def _match_against_singles(token: Token, singles: frozenset[str]) -> Optional[str]:
    """Set-based equivalent of trying token_matches_entry on every
    single-word entry; returns the longest matching entry."""
    folded = token.folded
    if folded in singles:
        return folded
    for cut in range(len(folded) - 1, max(0, len(folded) - MAX_SUFFIX_LEN) - 1, -1):
        prefix, rest = folded[:cut], folded[cut:]
        if prefix in singles and rest.isalpha():
            return prefix
    if token.stem in singles:
        return token.stem
    return None


# Each _find_* helper returns the term to report to a user (token or
# entry) for the first hit in token order, or None. The boolean features
# wrap them so the CLI and the HTTP service share one matching code path.

def _find_feature1(tokens: list[Token]) -> Optional[str]:
    for token in tokens:
        for suffix in F1_SUFFIXES:
            if token.folded.endswith(suffix) and len(token.folded) > len(suffix):
                return token.folded
    return None


def _find_feature2(tokens: list[Token]) -> Optional[str]:
    for token in tokens:
        if len(token.folded) >= F2_MIN_TOKEN_LEN and token.folded.endswith(F2_SUFFIXES):
            return token.folded
    return None


def _find_single_word(tokens: list[Token], gazetteer: Gazetteer) -> Optional[str]:
    for token in tokens:
        entry = _match_against_singles(token, gazetteer._singles)
        if entry is not None:
            return entry
    return None


def _find_feature5(tokens: list[Token], venues: Gazetteer) -> Optional[str]:
    """Venue match: the first k-1 words of an entry must equal consecutive
    folded tokens exactly; the last word may carry a suffix chain."""
    for i, token in enumerate(tokens):
        for words in venues._multi_by_first.get(token.folded, ()):
            if i + len(words) > len(tokens):
                continue
            if all(tokens[i + j].folded == words[j] for j in range(1, len(words) - 1)) \
                    and token_matches_entry(tokens[i + len(words) - 1], words[-1]):
                return " ".join(words)
        entry = _match_against_singles(token, venues._singles)
        if entry is not None:
            return entry
    return None


def feature1(tokens: list[Token]) -> bool:
    return _find_feature1(tokens) is not None


def feature2(tokens: list[Token]) -> bool:
    return _find_feature2(tokens) is not None


def feature3(tokens: list[Token], special_words: Gazetteer) -> bool:
    return _find_single_word(tokens, special_words) is not None


def feature4(tokens: list[Token], cities: Gazetteer) -> bool:
    return _find_single_word(tokens, cities) is not None


def feature5(tokens: list[Token], venues: Gazetteer) -> bool:
    return _find_feature5(tokens, venues) is not None


def feature6(tokens: list[Token], verbs: Gazetteer) -> bool:
    # Verb entries are fully inflected forms, so no suffix tolerance here.
    return any(token.folded in verbs.entries for token in tokens)


def extract(text: str, gazetteers: GazetteerSet) -> FeatureVector:
    """Apply all six extractors to the text."""
    return extract_with_matches(text, gazetteers)[0]


def extract_with_matches(
    text: str, gazetteers: GazetteerSet
) -> tuple[FeatureVector, list[tuple[str, str]]]:
    """Extract the feature vector plus, for every true feature, the first
    token or entry that triggered it (used for UI highlighting)."""
    tokens = tokenize(text)
    found = {
        "feature1": _find_feature1(tokens),
        "feature2": _find_feature2(tokens),
        "feature3": _find_single_word(tokens, gazetteers.special_words),
        "feature4": _find_single_word(tokens, gazetteers.cities),
        "feature5": _find_feature5(tokens, gazetteers.venues),
        "feature6": next((t.folded for t in tokens if t.folded in gazetteers.verbs.entries), None),
    }
    vector = FeatureVector(*(term is not None for term in found.values()))
    matches = [(name, term) for name, term in found.items() if term is not None]
    return vector, matches

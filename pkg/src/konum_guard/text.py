"""Turkish-aware case folding and tokenization.

Everything downstream (gazetteer matching, suffix tests) works on folded
token forms, so the rules here are deliberately small: handle the Turkish
I/İ pair, split on whitespace and punctuation, and treat an apostrophe
inside a word as a stem boundary instead of a separator.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

# U+0027 and U+2019 both show up in real tweets.
APOSTROPHES = ("'", "’")

# A token is a run of letters/digits, optionally chained with apostrophes
# ("Armada'ya"). Leading/trailing apostrophes stay outside the token.
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’][^\W_]+)*")

_APOSTROPHE_RE = re.compile(r"['’]")


@dataclass(frozen=True)
class Token:
    """One word of the source text with its folded and stemmed forms.

    ``folded`` is the Turkish-lowercased surface with apostrophes removed;
    ``stem`` is the part of ``folded`` before the first apostrophe of the
    surface (the whole ``folded`` form when there is none).
    """

    surface: str
    folded: str
    stem: str
    start: int
    end: int


def fold_turkish(s: str) -> str:
    """Lowercase with the Turkish I rules: İ -> i and I -> ı.

    The replacements run before ``str.lower()`` because Python would
    otherwise expand İ to "i" + combining dot. Everything else uses the
    standard lowercase mapping. Idempotent.
    """
    return s.replace("İ", "i").replace("I", "ı").lower()


def tokenize(s: str) -> list[Token]:
    """Split text into tokens on whitespace and punctuation.

    Apostrophes inside a word do not split it; they mark the stem boundary
    ("Armada'ya" -> folded "armadaya", stem "armada"). Offsets index into
    the original string, so surfaces plus skipped separators reconstruct
    the input.
    """
    tokens = []
    for m in _TOKEN_RE.finditer(s):
        surface = m.group()
        folded = _APOSTROPHE_RE.sub("", fold_turkish(surface))
        parts = _APOSTROPHE_RE.split(fold_turkish(surface), maxsplit=1)
        stem = parts[0]
        tokens.append(Token(surface, folded, stem, m.start(), m.end()))
    return tokens


def ends_with(token: Token, suffix: str) -> bool:
    """True iff the token's folded form ends with the (already folded) suffix."""
    return token.folded.endswith(suffix)

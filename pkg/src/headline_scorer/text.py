"""Whitespace tokenizer and the bundled English stopword list.

Both feature extraction and embedding lookup run on the tokens produced
here, so the rules are deliberately small and fixed: NFC-normalize, split
on whitespace, then trim each fragment down to its core of letters,
digits, and apostrophes.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files

# U+2019 doubles as the typographic apostrophe in tweet text.
_APOSTROPHES = frozenset({"'", "’"})

STOPWORDS_FILENAME = "stopwords_en.txt"


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    lower: str


def _is_core_char(ch: str) -> bool:
    return ch.isalpha() or ch.isdigit() or ch in _APOSTROPHES


def tokenize(text: str) -> list[Token]:
    """Split text into tokens.

    Fragments come from splitting on whitespace; each fragment is stripped
    of leading and trailing characters that are not letters, digits, or
    apostrophes (removing '#', '@', quote marks, terminal '?', '!', '.',
    ','). Internal punctuation such as apostrophes and hyphens survives.
    Fragments that strip down to nothing are dropped.
    """
    normalized = unicodedata.normalize("NFC", text)
    tokens = []
    for fragment in normalized.split():
        start, end = 0, len(fragment)
        while start < end and not _is_core_char(fragment[start]):
            start += 1
        while end > start and not _is_core_char(fragment[end - 1]):
            end -= 1
        if start < end:
            surface = fragment[start:end]
            tokens.append(Token(surface=surface, lower=surface.lower()))
    return tokens


@dataclass(frozen=True)
class StopwordList:
    """Immutable set of lowercase stopwords."""

    words: frozenset[str]

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_text(cls, text: str, origin: str = "<string>") -> "StopwordList":
        return cls(words=read_word_list(text, origin))

    @classmethod
    def from_file(cls, path) -> "StopwordList":
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read(), origin=str(path))


def read_word_list(text: str, origin: str = "<string>") -> frozenset[str]:
    """Parse a word-per-line file: blank lines and '#' comments are skipped.

    Entries must be lowercase and contain no whitespace; the list must be
    non-empty.
    """
    words = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        if any(ch.isspace() for ch in entry):
            raise ValueError(f"{origin}:{lineno}: entry contains whitespace: {entry!r}")
        if entry != entry.lower():
            raise ValueError(f"{origin}:{lineno}: entry is not lowercase: {entry!r}")
        words.add(entry)
    if not words:
        raise ValueError(f"{origin}: word list is empty")
    return frozenset(words)


def packaged_text(name: str) -> str:
    return (files("headline_scorer") / "data" / name).read_text(encoding="utf-8")


def packaged_bytes(name: str) -> bytes:
    return (files("headline_scorer") / "data" / name).read_bytes()


@lru_cache(maxsize=1)
def default_stopwords() -> StopwordList:
    """The stopword list bundled with the package."""
    return StopwordList.from_text(packaged_text(STOPWORDS_FILENAME), origin=STOPWORDS_FILENAME)


def count_stopwords(tokens: list[Token], stops: StopwordList) -> int:
    return sum(1 for token in tokens if token.lower in stops)

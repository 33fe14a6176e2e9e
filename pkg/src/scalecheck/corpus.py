"""Text ingestion: tokenization, rare-word replacement, n-gram counting."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

WORD = "word"
CHARACTER = "character"

_NUMBER_RE = re.compile(r"[0-9][0-9.,/:-]*%?")


class TokenSequence:
    """Immutable ordered sequence of symbol ids with an interned vocabulary.

    Ids are assigned in first-occurrence order, so rank tie-breaking and
    rare-set selection are deterministic across runs and platforms.
    """

    __slots__ = ("ids", "vocab", "level")

    def __init__(self, symbols: Iterable[str], level: str):
        if level not in (WORD, CHARACTER):
            raise ValueError(f"unknown level: {level!r}")
        index: dict[str, int] = {}
        ids = []
        for s in symbols:
            i = index.get(s)
            if i is None:
                i = len(index)
                index[s] = i
            ids.append(i)
        self.ids = np.asarray(ids, dtype=np.int64)
        self.ids.flags.writeable = False
        self.vocab = tuple(index)
        self.level = level

    @classmethod
    def from_ids(cls, ids: Sequence[int], vocab: Sequence[str], level: str) -> "TokenSequence":
        """Build directly from ids and an id -> surface table (no re-interning)."""
        seq = cls.__new__(cls)
        arr = np.asarray(ids, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= len(vocab)):
            raise ValueError("token id outside vocabulary")
        arr = arr.copy()
        arr.flags.writeable = False
        seq.ids = arr
        seq.vocab = tuple(vocab)
        seq.level = level
        return seq

    def __len__(self) -> int:
        return int(self.ids.size)

    @property
    def vocab_size(self) -> int:
        return len(self.vocab)

    def symbols(self) -> list[str]:
        """Surface strings in order."""
        v = self.vocab
        return [v[i] for i in self.ids]

    def render(self) -> str:
        """Single-space-joined words, or plain concatenation for characters."""
        sep = " " if self.level == WORD else ""
        return sep.join(self.symbols())

    def type_counts(self) -> np.ndarray:
        """Occurrences per id, indexed by id."""
        return np.bincount(self.ids, minlength=self.vocab_size)


@dataclass(frozen=True)
class FrequencyTable:
    """Counts of contiguous n-tuples of symbol ids."""

    order: int
    counts: dict[tuple[int, ...], int]
    total: int

    @classmethod
    def from_sequence(cls, seq: TokenSequence, order: int) -> "FrequencyTable":
        return frequency_table(seq, order)


def tokenize_words(text: str, numbers_to_n: bool = False) -> TokenSequence:
    """Split on whitespace runs; optionally map PTB-style numeric tokens to "N"."""
    toks = text.split()
    if numbers_to_n:
        toks = ["N" if _NUMBER_RE.fullmatch(t) else t for t in toks]
    return TokenSequence(toks, WORD)


def tokenize_chars(text: str) -> TokenSequence:
    """One token per decoded character; whitespace characters are kept."""
    return TokenSequence(text, CHARACTER)


def apply_unk(seq: TokenSequence, min_freq: int, unk_symbol: str = "<unk>") -> TokenSequence:
    """Replace every token whose type frequency is below min_freq with unk_symbol."""
    if seq.level != WORD:
        raise ValueError("apply_unk requires a word-level sequence")
    if min_freq < 1:
        raise ValueError("min_freq must be >= 1")
    counts = seq.type_counts()
    vocab = seq.vocab
    surface = [w if counts[i] >= min_freq else unk_symbol for i, w in enumerate(vocab)]
    return TokenSequence((surface[i] for i in seq.ids), WORD)


def frequency_table(seq: TokenSequence, order: int) -> FrequencyTable:
    """Count every contiguous n-tuple of ids; total = max(len - order + 1, 0)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    n = len(seq)
    if n < order:
        return FrequencyTable(order, {}, 0)
    ids = seq.ids.tolist()
    grams = Counter(zip(*(ids[i : n - order + 1 + i] for i in range(order))))
    return FrequencyTable(order, dict(grams), n - order + 1)

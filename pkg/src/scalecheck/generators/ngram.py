"""Back-off n-gram language model with absolute discounting.

The stream is treated as one unsegmented sequence: no sentence-boundary
symbols are inserted, and the first tokens of a text are scored with
shortened contexts.
"""
from __future__ import annotations

import math

import numpy as np

from ..corpus import WORD, TokenSequence
from ..errors import InsufficientData, InvalidParam, OovToken
from .rng import SeededRng

FORMAT_NAME = "scalecheck-ngram"
FORMAT_VERSION = 1


class NgramModel:
    """Counts for every gram length 1..order over a single token stream.

    Conditional probabilities use absolute discounting with back-off:

        P(w | ctx) = max(c(ctx,w) - D, 0) / c(ctx) + lam(ctx) * P(w | ctx[1:])
        lam(ctx)   = D * distinct_continuations(ctx) / c(ctx)

    where c(ctx) is the continuation mass of ctx. The unigram level backs
    off to the uniform distribution over the vocabulary, so every in-vocab
    word has positive probability under every context.

    Internal layout, per gram length m: an m-gram is coded as
    parent_code * V + last_word_id, with parent_code the index of its
    (m-1)-gram prefix in the sorted key array of level m-1 (0 for m = 1,
    so level-1 keys are the word ids themselves). Blocks sharing a parent
    are contiguous in the sorted key arrays.
    """

    def __init__(self, order: int, discount: float, vocab: tuple[str, ...],
                 keys: dict[int, np.ndarray], counts: dict[int, np.ndarray]):
        self.order = order
        self.discount = discount
        self.vocab = tuple(vocab)
        self._index = {w: i for i, w in enumerate(self.vocab)}
        self._keys = keys
        self._counts = counts
        self._finalize()

    def _finalize(self):
        v = len(self.vocab)
        self.n_tokens = int(self._counts[1].sum())
        self._ctx_total: dict[int, np.ndarray] = {}
        self._ctx_distinct: dict[int, np.ndarray] = {}
        for m in range(2, self.order + 1):
            parents = self._keys[m] // v
            n_parent = self._keys[m - 1].size
            total = np.zeros(n_parent, dtype=np.int64)
            np.add.at(total, parents, self._counts[m])
            self._ctx_total[m] = total
            self._ctx_distinct[m] = np.bincount(parents, minlength=n_parent)
        self._uni_cum = np.cumsum(self._counts[1] - self.discount)

    # -- lookup ---------------------------------------------------------

    def id_of(self, word: str) -> int:
        i = self._index.get(word)
        if i is None:
            raise OovToken(f"token {word!r} not in model vocabulary")
        return i

    def _resolve(self, ctx: tuple[int, ...]):
        """Code of a context gram in its level's key array, or None if unseen."""
        code = ctx[0]
        v = len(self.vocab)
        for m in range(2, len(ctx) + 1):
            arr = self._keys[m]
            key = code * v + ctx[m - 1]
            i = int(arr.searchsorted(key))
            if i == arr.size or arr[i] != key:
                return None
            code = i
        return code

    def _block(self, m: int, code: int):
        """Continuation slice of level m for parent code."""
        v = len(self.vocab)
        arr = self._keys[m]
        lo = int(arr.searchsorted(code * v))
        hi = int(arr.searchsorted((code + 1) * v))
        return lo, hi

    # -- probability ----------------------------------------------------

    def prob(self, word: str, context: tuple[str, ...] = ()) -> float:
        ctx = tuple(self.id_of(w) for w in context)
        return self.prob_id(self.id_of(word), ctx)

    def prob_id(self, w: int, ctx: tuple[int, ...]) -> float:
        if len(ctx) > self.order - 1:
            ctx = ctx[len(ctx) - self.order + 1 :]
        d = self.discount
        v = len(self.vocab)
        while ctx:
            m = len(ctx) + 1
            code = self._resolve(ctx)
            if code is None or self._ctx_total[m][code] == 0:
                ctx = ctx[1:]
                continue
            total = int(self._ctx_total[m][code])
            arr = self._keys[m]
            key = code * v + w
            i = int(arr.searchsorted(key))
            c = int(self._counts[m][i]) if i < arr.size and arr[i] == key else 0
            lam = d * int(self._ctx_distinct[m][code]) / total
            return max(c - d, 0.0) / total + lam * self.prob_id(w, ctx[1:])
        c = int(self._counts[1][w])
        lam = d * v / self.n_tokens
        return max(c - d, 0.0) / self.n_tokens + lam / v

    # -- sampling -------------------------------------------------------

    def sample_id(self, ctx: tuple[int, ...], rng: SeededRng) -> int:
        """One draw from the back-off distribution given a context of ids."""
        if len(ctx) > self.order - 1:
            ctx = ctx[len(ctx) - self.order + 1 :]
        d = self.discount
        v = len(self.vocab)
        while ctx:
            m = len(ctx) + 1
            code = self._resolve(ctx)
            if code is None or self._ctx_total[m][code] == 0:
                ctx = ctx[1:]
                continue
            total = int(self._ctx_total[m][code])
            lam = d * int(self._ctx_distinct[m][code]) / total
            if rng.uniform() < lam:
                ctx = ctx[1:]
                continue
            lo, hi = self._block(m, code)
            cum = np.cumsum(self._counts[m][lo:hi] - d)
            i = rng.choice_index(cum)
            return int(self._keys[m][lo + i] % v)
        if rng.uniform() < d * v / self.n_tokens:
            return rng.randrange(v)
        return rng.choice_index(self._uni_cum)

    # -- serialization --------------------------------------------------

    def save(self, path: str):
        """Versioned plain-text dump: header, vocabulary, then one gram per line."""
        for w in self.vocab:
            if not w or any(ch.isspace() for ch in w):
                raise ValueError(f"symbol {w!r} cannot be serialized to the text format")
        v = len(self.vocab)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"{FORMAT_NAME}\t{FORMAT_VERSION}\n")
            fh.write(f"order\t{self.order}\n")
            fh.write(f"discount\t{self.discount!r}\n")
            fh.write(f"vocab\t{v}\n")
            for w in self.vocab:
                fh.write(w + "\n")
            n_lines = sum(self._keys[m].size for m in range(1, self.order + 1))
            fh.write(f"grams\t{n_lines}\n")
            prev: list[str] = []
            for m in range(1, self.order + 1):
                words = (self._keys[m] % v).tolist()
                parents = (self._keys[m] // v).tolist()
                counts = self._counts[m].tolist()
                lines = []
                for p, wd, c in zip(parents, words, counts):
                    prefix = prev[p] + "\t" if prev else ""
                    lines.append(f"{prefix}{self.vocab[wd]}")
                    fh.write(f"{lines[-1]}\t{c}\n")
                prev = lines

    @classmethod
    def load(cls, path: str) -> "NgramModel":
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n").split("\t")
            if header[0] != FORMAT_NAME:
                raise ValueError(f"not a {FORMAT_NAME} file: {path}")
            if int(header[1]) != FORMAT_VERSION:
                raise ValueError(f"unsupported format version {header[1]}")
            order = int(_field(fh, "order"))
            discount = float(_field(fh, "discount"))
            v = int(_field(fh, "vocab"))
            vocab = tuple(fh.readline().rstrip("\n") for _ in range(v))
            n_lines = int(_field(fh, "grams"))
            per_order: dict[int, list[tuple[tuple[int, ...], int]]] = {
                m: [] for m in range(1, order + 1)
            }
            index = {w: i for i, w in enumerate(vocab)}
            for _ in range(n_lines):
                parts = fh.readline().rstrip("\n").split("\t")
                gram = tuple(index[w] for w in parts[:-1])
                count = int(parts[-1])
                if not 1 <= len(gram) <= order or count < 1:
                    raise ValueError(f"malformed gram line: {parts!r}")
                per_order[len(gram)].append((gram, count))
        keys: dict[int, np.ndarray] = {}
        counts: dict[int, np.ndarray] = {}
        keys[1] = np.arange(v, dtype=np.int64)
        c1 = np.zeros(v, dtype=np.int64)
        for gram, c in per_order[1]:
            c1[gram[0]] = c
        if np.any(c1 < 1):
            raise ValueError("every vocabulary word needs a unigram count")
        counts[1] = c1
        code_of: dict[tuple[int, ...], int] = {(i,): i for i in range(v)}
        for m in range(2, order + 1):
            entries = per_order[m]
            packed = np.empty(len(entries), dtype=np.int64)
            cnt = np.empty(len(entries), dtype=np.int64)
            for i, (gram, c) in enumerate(entries):
                parent = code_of.get(gram[:-1])
                if parent is None:
                    raise ValueError(f"gram {gram} lacks its prefix at order {m - 1}")
                packed[i] = parent * v + gram[-1]
                cnt[i] = c
            srt = np.argsort(packed)
            keys[m] = packed[srt]
            counts[m] = cnt[srt]
            if np.any(np.diff(keys[m]) == 0):
                raise ValueError(f"duplicate gram at order {m}")
            code_of = {entries[j][0]: rank for rank, j in enumerate(srt.tolist())}
        return cls(order, discount, vocab, keys, counts)


def _field(fh, name: str) -> str:
    line = fh.readline().rstrip("\n").split("\t")
    if len(line) != 2 or line[0] != name:
        raise ValueError(f"expected '{name}' header line, got {line!r}")
    return line[1]


def ngram_train(seq: TokenSequence, order: int, discount: float = 0.75) -> NgramModel:
    """Count all gram lengths 1..order over the stream (no boundary symbols)."""
    if order < 1:
        raise InvalidParam(f"order must be >= 1, got {order}")
    if not (0.0 < discount < 1.0):
        raise InvalidParam(f"discount must be in (0, 1), got {discount}")
    n = len(seq)
    if n < order:
        raise InsufficientData(f"{n} tokens cannot support order {order}")
    ids = seq.ids
    v = seq.vocab_size
    keys: dict[int, np.ndarray] = {1: np.arange(v, dtype=np.int64)}
    counts: dict[int, np.ndarray] = {1: np.bincount(ids, minlength=v)}
    codes = ids
    for m in range(2, order + 1):
        if keys[m - 1].size * v >= 1 << 62:
            raise InsufficientData("vocabulary too large for packed gram codes")
        packed = codes[: n - m + 1] * v + ids[m - 1 :]
        keys[m], codes, counts[m] = np.unique(
            packed, return_inverse=True, return_counts=True
        )
    return NgramModel(order, discount, seq.vocab, keys, counts)


def ngram_generate(model: NgramModel, length: int, rng: SeededRng) -> TokenSequence:
    """Sample a fresh stream; the first token is drawn from the unigram back-off."""
    if length < 1:
        raise InvalidParam("length must be >= 1")
    span = model.order - 1
    out: list[int] = []
    for _ in range(length):
        ctx = tuple(out[-span:]) if span else ()
        out.append(model.sample_id(ctx, rng))
    return TokenSequence.from_ids(out, model.vocab, WORD)


def ngram_perplexity(model: NgramModel, seq: TokenSequence) -> float:
    """exp of the mean negative log-probability per token over the whole stream."""
    if len(seq) == 0:
        raise InsufficientData("cannot score an empty sequence")
    ids = [model.id_of(w) for w in seq.symbols()]
    span = model.order - 1
    logsum = 0.0
    for i, w in enumerate(ids):
        ctx = tuple(ids[max(0, i - span) : i]) if span else ()
        logsum += math.log(model.prob_id(w, ctx))
    return math.exp(-logsum / len(ids))

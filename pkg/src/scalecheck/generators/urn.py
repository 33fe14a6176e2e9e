"""Vocabulary-growth urn processes: constant innovation rate, and the
two-parameter discounted variant."""
from __future__ import annotations

from dataclasses import dataclass

from ..corpus import WORD, TokenSequence
from ..errors import InvalidParam
from .rng import SeededRng


@dataclass(frozen=True)
class SimonParams:
    """New-type introduction probability."""

    a: float

    def __post_init__(self):
        if not (0.0 < self.a < 1.0):
            raise InvalidParam(f"a must be in (0, 1), got {self.a}")


@dataclass(frozen=True)
class PyParams:
    """Discount a and strength b of the two-parameter urn."""

    a: float
    b: float

    def __post_init__(self):
        if not (0.0 <= self.a < 1.0):
            raise InvalidParam(f"discount a must be in [0, 1), got {self.a}")
        if self.b < 0.0:
            raise InvalidParam(f"strength b must be >= 0, got {self.b}")


def _fresh_vocab(k: int) -> list[str]:
    return [f"w{i}" for i in range(k)]


def simon_generate(p: SimonParams, length: int, rng: SeededRng) -> TokenSequence:
    """Grow a sequence that introduces a fresh type with probability a and
    otherwise copies a uniformly chosen past token.

    Copying a uniform past position reproduces each existing type with
    probability proportional to its current count.
    """
    if length < 1:
        raise InvalidParam("length must be >= 1")
    a = p.a
    out = [0]
    k = 1
    uniform = rng.uniform
    append = out.append
    for t in range(1, length):
        if uniform() < a:
            append(k)
            k += 1
        else:
            append(out[int(uniform() * t)])
    return TokenSequence.from_ids(out, _fresh_vocab(k), WORD)


def py_generate(p: PyParams, length: int, rng: SeededRng) -> TokenSequence:
    """Grow a sequence under the discounted urn: a fresh type with probability
    (a*K + b)/(t + b), otherwise an existing type k with probability
    (n_k - a)/(t + b).

    Existing types are drawn by rejection: propose a uniform past token
    (mass n_k/t), accept with probability (n_k - a)/n_k; the acceptance
    ratio makes the conditional distribution exactly (n_k - a)/(t - a*K).
    With a = b = 0 the process degenerates to repeating the first token.
    """
    if length < 1:
        raise InvalidParam("length must be >= 1")
    a, b = p.a, p.b
    out = [0]
    counts = [1]
    k = 1
    total = 1
    uniform = rng.uniform
    append = out.append
    for t in range(1, length):
        if __debug__:
            assert total == t
        if uniform() * (t + b) < a * k + b:
            append(k)
            counts.append(1)
            k += 1
        else:
            while True:
                cand = out[int(uniform() * t)]
                n_cand = counts[cand]
                if uniform() * n_cand < n_cand - a:
                    break
            append(cand)
            counts[cand] += 1
        total += 1
    return TokenSequence.from_ids(out, _fresh_vocab(k), WORD)

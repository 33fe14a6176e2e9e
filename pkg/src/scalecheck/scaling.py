"""The five scaling analyses: rank-frequency, vocabulary growth, segment-variance
growth for characters, mean-deviation scaling for words, and long-range
correlation of rare-token return intervals."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .corpus import CHARACTER, WORD, TokenSequence, frequency_table
from .errors import (
    AllSigmaZero,
    DegenerateFit,
    EmptyInput,
    InsufficientLength,
    InsufficientSegments,
    NotApplicable,
    SeriesTooShort,
    TooFewIntervals,
    ZeroVariance,
)
from .powerlaw import LogLogPoints, PowerLawFit, fit_power_law

YES = "Yes"
NO = "No"
WEAK = "Weak"
CORRELATED = "Correlated"

DEFAULT_TAYLOR_SEGMENT = 5620
DEFAULT_RARE_Q = 16


@dataclass(frozen=True)
class ZipfResult:
    unigram_points: LogLogPoints
    bigram_points: LogLogPoints
    qualitative: str
    alpha_fit: Optional[PowerLawFit]

    @property
    def alpha(self) -> Optional[float]:
        """Magnitude of the fitted rank-frequency decay exponent."""
        return None if self.alpha_fit is None else -self.alpha_fit.exponent


@dataclass(frozen=True)
class HeapsResult:
    points: LogLogPoints
    fit: PowerLawFit


@dataclass(frozen=True)
class EbelingResult:
    points: LogLogPoints
    fit: PowerLawFit
    applicable: bool = True
    excluded_zero_variance: int = 0


@dataclass(frozen=True)
class TaylorResult:
    segment_size: int
    points: LogLogPoints
    fit: PowerLawFit
    excluded_zero_sigma: int
    type_ids: tuple[int, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class LrcResult:
    q: int
    interval_series: np.ndarray
    acf: tuple[tuple[int, float], ...]
    classification: str
    fit: Optional[PowerLawFit]

    @property
    def xi(self) -> Optional[float]:
        """Magnitude of the fitted correlation decay exponent."""
        return None if self.fit is None else -self.fit.exponent


def zipf_analysis(
    seq: TokenSequence,
    max_rank: int = 1000,
    yes_epsilon: float = 0.5,
    log_base: float = 10.0,
) -> ZipfResult:
    """Rank-frequency points for unigrams and bigrams, plus a coarse power-law check.

    The qualitative flag is a heuristic: a least-squares fit over the top
    min(max_rank, vocab) ranks must have an RMS residual <= yes_epsilon.
    The fitted exponent is exposed but rank-frequency curves of real text are
    rarely straight enough for it to be authoritative; the raw points are the
    primary output.
    """
    if len(seq) == 0:
        raise EmptyInput("cannot rank an empty sequence")
    uni = np.sort(seq.type_counts())[::-1]
    assert int(uni.sum()) == len(seq)
    unigram_points = LogLogPoints(np.arange(1, uni.size + 1, dtype=np.float64), uni)

    big = np.sort(np.fromiter(frequency_table(seq, 2).counts.values(), dtype=np.int64))[::-1]
    bigram_points = LogLogPoints(np.arange(1, big.size + 1, dtype=np.float64), big)

    top = min(max_rank, uni.size)
    alpha_fit = None
    qualitative = NO
    try:
        alpha_fit = fit_power_law(
            LogLogPoints(unigram_points.z[:top], unigram_points.y[:top]), log_base
        )
        if alpha_fit.epsilon <= yes_epsilon:
            qualitative = YES
    except DegenerateFit:
        alpha_fit = None
    return ZipfResult(unigram_points, bigram_points, qualitative, alpha_fit)


def heaps_analysis(
    seq: TokenSequence, n_samples: int = 50, log_base: float = 10.0
) -> HeapsResult:
    """Vocabulary size at ~n_samples log-spaced prefix lengths, with its growth fit.

    For sequences of 100+ tokens the grid starts at n = 10: the first few
    prefixes are pinned to v(n) ~ n regardless of the text and would bias
    the growth exponent.
    """
    n = len(seq)
    if n == 0:
        raise EmptyInput("cannot measure vocabulary growth of an empty sequence")
    first_idx = np.unique(seq.ids, return_index=True)[1]
    is_new = np.zeros(n, dtype=np.int64)
    is_new[first_idx] = 1
    growth = np.cumsum(is_new)

    lo = 1.0 if n >= 100 else 0.0
    grid = np.unique(
        np.rint(np.logspace(lo, np.log10(n), n_samples)).astype(np.int64).clip(1, n)
    )
    grid = np.union1d(grid, [n])
    v = growth[grid - 1]

    assert np.all(np.diff(growth) >= 0)
    assert np.all(v <= grid)
    assert int(growth[-1]) == seq.vocab_size

    points = LogLogPoints(grid.astype(np.float64), v.astype(np.float64))
    return HeapsResult(points, fit_power_law(points, log_base))


def _segment_counts(ids: np.ndarray, n_types: int, l: int) -> np.ndarray:
    """Per-segment occurrence counts, shape (n_segments, n_types); tail dropped."""
    n_seg = ids.size // l
    trunc = ids[: n_seg * l]
    seg_idx = np.arange(trunc.size, dtype=np.int64) // l
    flat = np.bincount(seg_idx * n_types + trunc, minlength=n_seg * n_types)
    return flat.reshape(n_seg, n_types)


def ebeling_analysis(
    seq: TokenSequence,
    grid_points: int = 20,
    min_segment: int = 10,
    max_segment_divisor: int = 50,
    min_segments: int = 10,
    log_base: float = 10.0,
) -> EbelingResult:
    """Growth of the summed across-segment count variance with segment size.

    Only defined for character sequences: applied to words the exponent
    degenerates to the uncorrelated value 1.0 and carries no signal.
    """
    if seq.level != CHARACTER:
        raise NotApplicable("segment-variance growth is defined for character sequences")
    if seq.vocab_size < 2:
        raise NotApplicable("alphabet has a single symbol; variance sums to zero")
    n = len(seq)
    if n < 100:
        raise InsufficientLength(f"need at least 100 characters, got {n}")

    hi = n // max_segment_divisor
    if hi < min_segment:
        raise InsufficientLength("sequence too short for the segment grid")
    grid = np.unique(
        np.rint(np.logspace(np.log10(min_segment), np.log10(hi), grid_points)).astype(np.int64)
    )
    grid = grid[(grid >= 2) & (n // grid >= min_segments)]
    if grid.size < 2:
        raise InsufficientLength("fewer than 2 usable segment sizes")

    sizes, totals = [], []
    for l in grid.tolist():
        counts = _segment_counts(seq.ids, seq.vocab_size, l)
        m = float(np.var(counts, axis=0).sum())
        sizes.append(float(l))
        totals.append(m)
    sizes = np.array(sizes)
    totals = np.array(totals)
    keep = totals > 0
    excluded = int((~keep).sum())
    points = LogLogPoints(sizes[keep], totals[keep])
    return EbelingResult(points, fit_power_law(points, log_base), True, excluded)


def taylor_analysis(
    seq: TokenSequence, l: int = DEFAULT_TAYLOR_SEGMENT, log_base: float = 10.0
) -> TaylorResult:
    """Per-type mean vs. standard deviation of counts over length-l segments."""
    if l < 2:
        raise ValueError("segment size must be >= 2")
    n = len(seq)
    n_seg = n // l
    if n_seg < 2:
        raise InsufficientSegments(f"{n} tokens give {n_seg} segments of size {l}")

    v = seq.vocab_size
    sums = np.zeros(v, dtype=np.float64)
    sumsq = np.zeros(v, dtype=np.float64)
    for s in range(n_seg):
        c = np.bincount(seq.ids[s * l : (s + 1) * l], minlength=v)
        sums += c
        sumsq += c.astype(np.float64) ** 2
    mu = sums / n_seg
    var = np.maximum(sumsq / n_seg - mu**2, 0.0)
    sigma = np.sqrt(var)

    keep = sigma > 0
    excluded = int(v - keep.sum())
    if not keep.any():
        raise AllSigmaZero("every type has constant per-segment count")
    points = LogLogPoints(mu[keep], sigma[keep])
    type_ids = tuple(np.nonzero(keep)[0].tolist())
    return TaylorResult(l, points, fit_power_law(points, log_base), excluded, type_ids)


def autocorrelation(series: Sequence[float], max_lag: int) -> list[tuple[int, float]]:
    """Autocorrelation c(s) for s = 1..max_lag against the global mean and variance."""
    x = np.asarray(series, dtype=np.float64)
    n = x.size
    if max_lag < 1:
        raise ValueError("max_lag must be >= 1")
    if n <= max_lag:
        raise SeriesTooShort(f"series of length {n} cannot support lag {max_lag}")
    var = float(np.var(x))
    if var == 0.0:
        raise ZeroVariance("constant series has no correlation structure")
    d = x - x.mean()
    out = []
    for s in range(1, max_lag + 1):
        c = float(np.dot(d[: n - s], d[s:]) / (n - s) / var)
        out.append((s, min(1.0, max(-1.0, c))))
    return out


def rare_type_set(seq: TokenSequence, q: int) -> np.ndarray:
    """Ids of the lowest-frequency types jointly covering >= 1/q of all tokens.

    Types are taken in ascending frequency, ties by ascending first occurrence;
    the type that crosses the threshold is included.
    """
    counts = seq.type_counts()
    order = np.lexsort((np.arange(counts.size), counts))
    cum = np.cumsum(counts[order])
    threshold = len(seq) / q
    cut = int(np.searchsorted(cum, threshold)) + 1
    return order[:cut]


def lrc_analysis(
    seq: TokenSequence,
    q: int = DEFAULT_RARE_Q,
    min_intervals: int = 200,
    log_base: float = 10.0,
) -> LrcResult:
    """Long-range correlation of the return intervals between rare tokens.

    Classification: more than one negative c(s) within s <= 10 means "No",
    within s <= 100 means "Weak", otherwise "Correlated" (with a decay fit
    over the positive c(s) up to s = 100).
    """
    if q < 2:
        raise ValueError("q must be >= 2")
    if len(seq) == 0:
        raise EmptyInput("cannot analyze an empty sequence")
    rare = rare_type_set(seq, q)
    mask = np.zeros(seq.vocab_size, dtype=bool)
    mask[rare] = True
    positions = np.nonzero(mask[seq.ids])[0]
    intervals = np.diff(positions)
    if intervals.size < min_intervals:
        raise TooFewIntervals(f"{intervals.size} return intervals, need {min_intervals}")

    max_lag = min(100, intervals.size // 4)
    acf = autocorrelation(intervals, max_lag)
    classification = classify_interval_acf(acf)

    fit = None
    if classification == CORRELATED:
        pos = [(s, c) for s, c in acf if s <= 100 and c > 0]
        if len(pos) >= 2:
            try:
                fit = fit_power_law(LogLogPoints.from_pairs(pos), log_base)
            except DegenerateFit:
                fit = None
    intervals = intervals.copy()
    intervals.flags.writeable = False
    return LrcResult(q, intervals, tuple(acf), classification, fit)


def classify_interval_acf(acf: Sequence[tuple[int, float]]) -> str:
    """Sign-based long-range-correlation verdict from (lag, c) pairs."""
    neg10 = sum(1 for s, c in acf if s <= 10 and c < 0)
    neg100 = sum(1 for s, c in acf if s <= 100 and c < 0)
    if neg10 > 1:
        return NO
    if neg100 > 1:
        return WEAK
    return CORRELATED

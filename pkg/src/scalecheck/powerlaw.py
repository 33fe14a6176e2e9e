"""Least-squares estimation of power-law exponents in log-log space."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateFit, NonpositiveValue


@dataclass(frozen=True)
class LogLogPoints:
    """Strictly positive (z, y) pairs destined for a log-log fit."""

    z: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.z, dtype=np.float64)
        y = np.asarray(self.y, dtype=np.float64)
        if z.shape != y.shape or z.ndim != 1:
            raise ValueError("z and y must be 1-d arrays of equal length")
        if z.size and (np.min(z) <= 0 or np.min(y) <= 0):
            raise NonpositiveValue("log-log points must be strictly positive")
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(y))):
            raise NonpositiveValue("log-log points must be finite")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[float]]) -> "LogLogPoints":
        pairs = list(pairs)
        z = np.array([p[0] for p in pairs], dtype=np.float64)
        y = np.array([p[1] for p in pairs], dtype=np.float64)
        return cls(z, y)

    def __len__(self) -> int:
        return int(self.z.size)

    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.z.tolist(), self.y.tolist()))


@dataclass(frozen=True)
class PowerLawFit:
    """Fitted y ~ C * z**exponent; epsilon is the RMS log-space residual per point."""

    exponent: float
    intercept: float
    epsilon: float
    n_points: int
    log_base: float = 10.0

    def predict(self, z: np.ndarray) -> np.ndarray:
        return self.log_base ** (self.intercept + self.exponent * _log(z, self.log_base))


def _log(x, base: float):
    return np.log(x) / np.log(base)


def fit_power_law(
    pts: LogLogPoints,
    log_base: float = 10.0,
    with_intercept: bool = True,
) -> PowerLawFit:
    """Ordinary least squares of log y against log z.

    The proportionality constant is fitted by default; with_intercept=False
    forces it to 1 (intercept 0), which makes the exponent unit-dependent.
    """
    n = len(pts)
    if n < 2:
        raise DegenerateFit(f"need at least 2 points, got {n}")
    x = _log(pts.z, log_base)
    y = _log(pts.y, log_base)
    if with_intercept:
        xm = x.mean()
        ym = y.mean()
        sxx = float(np.sum((x - xm) ** 2))
        if sxx == 0.0:
            raise DegenerateFit("all z values equal; exponent is unidentifiable")
        slope = float(np.sum((x - xm) * (y - ym))) / sxx
        intercept = ym - slope * xm
    else:
        sxx = float(np.sum(x * x))
        if sxx == 0.0:
            raise DegenerateFit("all z values equal 1; exponent is unidentifiable")
        slope = float(np.sum(x * y)) / sxx
        intercept = 0.0
    resid = y - (slope * x + intercept)
    epsilon = float(np.sqrt(np.mean(resid**2)))
    return PowerLawFit(float(slope), float(intercept), epsilon, n, log_base)

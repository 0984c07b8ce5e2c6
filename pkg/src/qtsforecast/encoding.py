"""Min-max scaling, angle encoding and expectation decoding."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


class EncodingError(ValueError):
    pass


@dataclass(frozen=True)
class NormalizationParams:
    x_min: float
    x_max: float

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise EncodingError("normalization bounds must be finite")
        if not self.x_max > self.x_min:
            raise EncodingError(f"degenerate range: x_max={self.x_max} <= x_min={self.x_min}")

    @property
    def span(self) -> float:
        return self.x_max - self.x_min


def fit_norm_params(train: Sequence[float]) -> NormalizationParams:
    values = [float(v) for v in train]
    if len(values) < 2:
        raise EncodingError("need at least two training values")
    lo, hi = min(values), max(values)
    if lo == hi:
        raise EncodingError(f"degenerate range: training values are all {lo}")
    return NormalizationParams(lo, hi)


def normalize(x: float, p: NormalizationParams, clip: bool = False) -> float:
    z = (x - p.x_min) / p.span
    if clip:
        return min(1.0, max(0.0, z))
    if not 0.0 <= z <= 1.0:
        raise EncodingError(f"value {x} maps to {z}, outside [0, 1]")
    return z


def rescale(x: float, p: NormalizationParams) -> float:
    """Unchecked affine map onto the training unit scale."""
    return (x - p.x_min) / p.span


def denormalize(z: float, p: NormalizationParams) -> float:
    return z * p.span + p.x_min


def angle_encode(x: float) -> float:
    """RY angle whose |1> amplitude is ``x``: theta = 2 asin(x), so P(1) = x**2."""
    if not 0.0 <= x <= 1.0:
        raise EncodingError(f"encoded value must lie in [0, 1], got {x}")
    return 2.0 * math.asin(x)


def decode_prediction(expectation: float, n: int, p: NormalizationParams) -> float:
    """Map a bitstring expectation in [0, 2^n - 1] back to data units."""
    top = 2**n - 1
    if not 0.0 <= expectation <= top:
        # Float summation can overshoot the ends by a few ulps.
        if -1e-9 * top <= expectation <= top * (1 + 1e-12):
            expectation = min(max(expectation, 0.0), float(top))
        else:
            raise EncodingError(f"expectation {expectation} outside [0, {top}]")
    if expectation == top:
        return p.x_max
    return expectation * p.span / top + p.x_min

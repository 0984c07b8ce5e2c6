"""Synthetic AR(1) series, CSV I/O and train/test splitting.

Random numbers come from numpy's PCG64 bit generator seeded through a
``SeedSequence``; uniforms are built from the raw 64-bit output as
``(u >> 11) * 2**-53`` and turned into normals with the Box-Muller transform.
Both steps are spelled out here so generated fixtures do not depend on
numpy's internal normal sampler.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class DataError(ValueError):
    pass


class CSVParseError(DataError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class TimeSeries:
    values: tuple[float, ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise DataError("time series is empty")
        if not all(math.isfinite(v) for v in vals):
            raise DataError("time series contains non-finite values")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def to_numpy(self) -> np.ndarray:
        return np.asarray(self.values)


def seeded_generator(seed: int, *stream: int) -> np.random.Generator:
    """Independent PCG64 stream for ``(seed, *stream)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=stream)))


def uniform01(bitgen: np.random.PCG64, size: int) -> np.ndarray:
    raw = bitgen.random_raw(size)
    return (raw >> np.uint64(11)).astype(np.float64) * 2.0**-53


def box_muller(bitgen: np.random.PCG64, size: int) -> np.ndarray:
    pairs = (size + 1) // 2
    u1 = 1.0 - uniform01(bitgen, pairs)  # (0, 1], keeps log finite
    u2 = uniform01(bitgen, pairs)
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.empty(2 * pairs)
    z[0::2] = r * np.cos(2.0 * np.pi * u2)
    z[1::2] = r * np.sin(2.0 * np.pi * u2)
    return z[:size]


def gen_ar1(phi: float, sigma: float, length: int, seed: int) -> TimeSeries:
    """z_0 = 0, z_t = phi * z_{t-1} + sigma * eps_t, eps_t standard normal."""
    if length < 1:
        raise DataError("length must be >= 1")
    if sigma < 0:
        raise DataError("sigma must be >= 0")
    bitgen = np.random.PCG64(np.random.SeedSequence(seed))
    eps = sigma * box_muller(bitgen, length - 1)
    z = np.zeros(length)
    for t in range(1, length):
        z[t] = phi * z[t - 1] + eps[t - 1]
    return TimeSeries(tuple(z), label=f"ar1(phi={phi}, sigma={sigma}, seed={seed})")


def read_csv(path) -> TimeSeries:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CSVParseError("empty file", 1)
    if lines[0].strip().replace(" ", "") != "t,value":
        raise CSVParseError(f"expected header 't,value', got {lines[0]!r}", 1)
    values = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != 2:
            raise CSVParseError(f"expected 2 cells, got {len(cells)}", lineno)
        try:
            v = float(cells[1])
        except ValueError:
            raise CSVParseError(f"non-numeric value {cells[1].strip()!r}", lineno) from None
        if not math.isfinite(v):
            raise CSVParseError(f"non-finite value {cells[1].strip()!r}", lineno)
        values.append(v)
    if not values:
        raise CSVParseError("no data rows", 2)
    return TimeSeries(tuple(values), label=path.name)


def write_text_atomic(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(series: TimeSeries, path) -> None:
    rows = ["t,value"] + [f"{t},{v!r}" for t, v in enumerate(series.values)]
    write_text_atomic(path, "\n".join(rows) + "\n")


def split(series, train_len: int) -> tuple[TimeSeries, TimeSeries]:
    values = tuple(series.values if isinstance(series, TimeSeries) else series)
    if not 0 < train_len < len(values):
        raise DataError(f"train_len must be in (0, {len(values)}), got {train_len}")
    return TimeSeries(values[:train_len]), TimeSeries(values[train_len:])

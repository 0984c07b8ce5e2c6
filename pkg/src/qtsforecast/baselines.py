"""Classical AR(p) and ARIMA(p,1,0) baselines, fitted by least squares."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


class FitError(ValueError):
    pass


ROLLING = "rolling"
RECURSIVE = "recursive"


@dataclass(frozen=True)
class ARModel:
    p: int
    coeffs: tuple[float, ...]  # newest lag first
    intercept: float

    def predict_next(self, history: Sequence[float]) -> float:
        lags = np.asarray(history[-self.p :], dtype=np.float64)[::-1]
        return float(self.intercept + np.dot(self.coeffs, lags))


@dataclass(frozen=True)
class ARIMAModel:
    inner: ARModel
    d: int
    anchor: tuple[float, ...]  # last raw values of the fitted series


def lag_design(series: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Rows ``[1, x_{t-1}, ..., x_{t-p}]`` and targets ``x_t`` for t = p..N-1."""
    n = series.size
    cols = [np.ones(n - p)] + [series[p - j : n - j] for j in range(1, p + 1)]
    return np.column_stack(cols), series[p:]


def fit_ar(series: Sequence[float], p: int) -> ARModel:
    x = np.asarray(series, dtype=np.float64)
    if p < 1:
        raise FitError("AR order must be >= 1")
    if x.size < p + 2:
        raise FitError(f"AR({p}) needs at least {p + 2} values, got {x.size}")
    X, y = lag_design(x, p)
    gram = X.T @ X
    if np.linalg.matrix_rank(gram) < p + 1:
        raise FitError(f"rank-deficient lag design for AR({p})")
    try:
        chol = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError:
        raise FitError(f"lag design for AR({p}) is not positive definite") from None
    beta = np.linalg.solve(chol.T, np.linalg.solve(chol, X.T @ y))
    if not np.all(np.isfinite(beta)):
        raise FitError("non-finite AR coefficients")
    return ARModel(p, tuple(float(b) for b in beta[1:]), float(beta[0]))


def _check_mode(mode: str, actuals) -> None:
    if mode not in (ROLLING, RECURSIVE):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == ROLLING and actuals is None:
        raise ValueError("rolling forecasts need actuals")


def ar_forecast(
    model: ARModel,
    history: Sequence[float],
    steps: int,
    mode: str = ROLLING,
    actuals: Sequence[float] | None = None,
) -> list[float]:
    _check_mode(mode, actuals)
    hist = [float(v) for v in history]
    if len(hist) < model.p:
        raise ValueError(f"need {model.p} history values, got {len(hist)}")
    if mode == ROLLING and len(actuals) < steps - 1:
        raise ValueError("not enough actuals for a rolling forecast")
    preds = []
    for j in range(steps):
        pred = model.predict_next(hist)
        preds.append(pred)
        hist.append(float(actuals[j]) if mode == ROLLING and j < len(actuals) else pred)
    return preds


def fit_arima_p10(series: Sequence[float], p: int) -> ARIMAModel:
    """ARIMA(p, 1, 0): AR(p) with intercept on first differences."""
    x = np.asarray(series, dtype=np.float64)
    if x.size < p + 3:
        raise FitError(f"ARIMA({p},1,0) needs at least {p + 3} values, got {x.size}")
    dx = np.diff(x)
    if np.ptp(dx) == 0:
        # Constant differences (pure drift) leave the lag design singular.
        inner = ARModel(p, (0.0,) * p, float(dx[0]))
    else:
        inner = fit_ar(dx, p)
    return ARIMAModel(inner, 1, tuple(x[-(p + 1) :]))


def arima_forecast(
    model: ARIMAModel,
    history: Sequence[float],
    steps: int,
    mode: str = ROLLING,
    actuals: Sequence[float] | None = None,
) -> list[float]:
    _check_mode(mode, actuals)
    raw = [float(v) for v in history]
    if len(raw) < model.inner.p + 1:
        raise ValueError(f"need {model.inner.p + 1} history values, got {len(raw)}")
    preds = []
    for j in range(steps):
        diffs = np.diff(raw[-(model.inner.p + 1) :])
        pred = raw[-1] + model.inner.predict_next(diffs)
        preds.append(pred)
        raw.append(float(actuals[j]) if mode == ROLLING and j < len(actuals) else pred)
    return preds


def naive_forecast(history: Sequence[float], steps: int, mode: str = ROLLING, actuals=None) -> list[float]:
    """Last observed value carried forward."""
    _check_mode(mode, actuals)
    last = float(history[-1])
    preds = []
    for j in range(steps):
        preds.append(last)
        if mode == ROLLING and j < len(actuals):
            last = float(actuals[j])
    return preds


def integrate(diffs: Sequence[float], anchor: float) -> np.ndarray:
    """Inverse of ``np.diff`` given the first raw value."""
    return np.concatenate([[anchor], anchor + np.cumsum(diffs)])


def mse(predictions: Sequence[float], actuals: Sequence[float]) -> float:
    a = np.asarray(predictions, dtype=np.float64)
    b = np.asarray(actuals, dtype=np.float64)
    if a.size == 0 or a.shape != b.shape:
        raise ValueError(f"mse needs equal non-empty lengths, got {a.size} and {b.size}")
    return float(np.mean((a - b) ** 2))

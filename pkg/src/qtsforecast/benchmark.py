"""Run several forecasters on one split and collect their scores."""

from __future__ import annotations

import logging
from typing import Iterable

from . import baselines as bl
from .circuit import Variant
from .encoding import fit_norm_params
from .forecast import (
    ExecConfig,
    ForecastError,
    ForecastResult,
    actuals_after,
    check_series,
    forecast_many,
    normalized_mse,
    window_size_for,
)

log = logging.getLogger(__name__)

MODEL_TOKENS = ("ar1", "ar2", "ar3", "arima210", "qts-rot", "qts-fwd", "qts-full")
EXTRA_TOKENS = ("naive",)


def parse_models(spec: str | Iterable[str]) -> list[str]:
    """Split a comma list of model tokens, dropping duplicates with a warning."""
    tokens = [t.strip().lower() for t in (spec.split(",") if isinstance(spec, str) else spec)]
    tokens = [t for t in tokens if t]
    if not tokens:
        raise ValueError("no models given")
    out: list[str] = []
    for t in tokens:
        if t not in MODEL_TOKENS + EXTRA_TOKENS:
            raise ValueError(f"unknown model {t!r}; choose from {', '.join(MODEL_TOKENS + EXTRA_TOKENS)}")
        if t in out:
            log.warning("model %r listed more than once; running it once", t)
            continue
        out.append(t)
    return out


def run_model(token: str, series, train_len: int, steps: int, mode: str, exec: ExecConfig) -> ForecastResult:
    if token.startswith("qts-"):
        return forecast_many(series, train_len, steps, Variant(token[4:]), mode, exec)

    check_series(series, train_len, steps, mode)
    train = [float(series[i]) for i in range(train_len)]
    params = fit_norm_params(train)
    actuals = actuals_after(series, train_len, steps)
    if token == "naive":
        preds, config = bl.naive_forecast(train, steps, mode, actuals), {}
    elif token == "arima210":
        model = bl.fit_arima_p10(train, 2)
        preds = bl.arima_forecast(model, train, steps, mode, actuals)
        config = {"order": [2, 1, 0], "coeffs": list(model.inner.coeffs), "intercept": model.inner.intercept}
    else:
        model = bl.fit_ar(train, int(token[2:]))
        preds = bl.ar_forecast(model, train, steps, mode, actuals)
        config = {"order": model.p, "coeffs": list(model.coeffs), "intercept": model.intercept}
    return ForecastResult(
        model=token,
        predictions=preds,
        actuals=actuals,
        mse=normalized_mse(preds, actuals, params),
        mode=mode,
        n=None,
        train_len=train_len,
        steps=steps,
        params=params,
        config=config,
    )


def run_benchmark(series, train_len: int, steps: int, models: list[str], mode: str, exec: ExecConfig,
                  source: str | None = None) -> dict:
    """Evaluate every model on the same split; returns the report mapping."""
    if train_len < 2:
        raise ForecastError("train_len must be >= 2")
    results = [run_model(m, series, train_len, steps, mode, exec) for m in models]
    first = results[0]
    meta = {
        "source": source,
        "seed": exec.seed,
        "train_len": train_len,
        "steps": steps,
        "n": window_size_for(train_len),
        "mode": mode,
        "exec": exec.as_dict(),
        "norm": {"x_min": first.params.x_min, "x_max": first.params.x_max},
        "actuals": first.actuals,
    }
    entries = [
        {"name": r.model, "mse": r.mse, "predictions": r.predictions, "config": r.config}
        for r in results
    ]
    return {"meta": meta, "models": entries}

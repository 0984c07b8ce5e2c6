"""QTS forecasting: window -> circuit -> outcome distribution -> prediction.

The newest value of a window drives qubit 0 (the most significant bit of the
outcome index), the next newest qubit 1, and so on. Distributions are exact
by default; with ``shots > 0`` they are replaced by sampled frequencies.
Two-qubit depolarizing noise is simulated with Pauli-injection trajectories,
readout noise with independent per-qubit bit flips.

Every forecast step draws randomness from its own stream derived from
``(seed, step)``, so rolling steps are independent of evaluation order.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import statevec as sv
from .baselines import RECURSIVE, ROLLING, mse
from .circuit import Circuit, GateKind, Variant, apply_op, build_qts_circuit
from .dataio import seeded_generator
from .encoding import (
    NormalizationParams,
    angle_encode,
    decode_prediction,
    fit_norm_params,
    normalize,
    rescale,
)

log = logging.getLogger(__name__)

DEFAULT_TRAJECTORIES = 256


class ForecastError(ValueError):
    pass


@dataclass(frozen=True)
class NoiseModel:
    two_qubit_depol: float = 0.0
    readout_flip: float | tuple[float, ...] = 0.0
    trajectories: int = DEFAULT_TRAJECTORIES

    def __post_init__(self):
        flips = self.readout_flip
        if not isinstance(flips, (int, float)):
            object.__setattr__(self, "readout_flip", tuple(float(f) for f in flips))
        probs = [self.two_qubit_depol, *np.atleast_1d(self.readout_flip)]
        if not all(0.0 <= p <= 1.0 for p in probs):
            raise ForecastError("noise probabilities must lie in [0, 1]")
        if self.two_qubit_depol > 0 and self.trajectories < 1:
            raise ForecastError("depolarizing noise needs at least one trajectory")

    @property
    def has_readout(self) -> bool:
        return bool(np.any(np.asarray(self.readout_flip) > 0))

    def flips_for(self, n: int) -> np.ndarray:
        flips = np.asarray(self.readout_flip, dtype=np.float64)
        if flips.ndim and flips.size != n:
            raise ForecastError(f"{flips.size} readout probabilities for {n} qubits")
        return np.broadcast_to(flips, (n,)).copy()


@dataclass(frozen=True)
class ExecConfig:
    shots: int = 0
    seed: int = 0
    noise: NoiseModel | None = None

    def __post_init__(self):
        if self.shots < 0:
            raise ForecastError("shots must be >= 0")
        if self.seed < 0:
            raise ForecastError("seed must be non-negative")

    def as_dict(self) -> dict:
        noise = None
        if self.noise is not None:
            noise = asdict(self.noise)
            if isinstance(noise["readout_flip"], tuple):
                noise["readout_flip"] = list(noise["readout_flip"])
        return {"shots": self.shots, "seed": self.seed, "noise": noise}


@dataclass
class ForecastResult:
    model: str
    predictions: list[float]
    actuals: list[float]
    mse: float | None
    mode: str
    n: int | None
    train_len: int
    steps: int
    params: NormalizationParams
    variant: Variant | None = None
    config: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "model": self.model,
            "variant": self.variant.value if self.variant is not None else None,
            "mode": self.mode,
            "n": self.n,
            "train_len": self.train_len,
            "steps": self.steps,
            "config": self.config,
            "norm": {"x_min": self.params.x_min, "x_max": self.params.x_max},
            "mse": self.mse,
            "predictions": list(self.predictions),
            "actuals": list(self.actuals),
        }


def window_size_for(train_len: int) -> int:
    """floor(log2(train_len)), computed exactly on integers."""
    if train_len < 2:
        raise ForecastError("train_len must be >= 2")
    return int(train_len).bit_length() - 1


def window_angles(window: Sequence[float], p: NormalizationParams) -> list[float]:
    """RY angles ordered by qubit: newest value first."""
    return [angle_encode(normalize(float(v), p, clip=True)) for v in reversed(window)]


def _inject_pauli(state: sv.StateVector, qubits: tuple[int, int], rng: np.random.Generator) -> None:
    pa, pb = divmod(int(rng.integers(1, 16)), 4)
    if pa:
        sv.apply_1q_unitary(state, qubits[0], sv.PAULIS[pa])
    if pb:
        sv.apply_1q_unitary(state, qubits[1], sv.PAULIS[pb])


def noisy_trajectory(circuit: Circuit, depol: float, rng: np.random.Generator) -> sv.StateVector:
    state = sv.new_zero_state(circuit.n)
    for op in circuit.ops:
        apply_op(state, op)
        if op.kind is GateKind.CX and rng.random() < depol:
            _inject_pauli(state, op.qubits, rng)
    return state


def circuit_distribution(circuit: Circuit, exec: ExecConfig, rng: np.random.Generator) -> sv.ProbDist:
    """Outcome distribution of ``circuit`` under ``exec`` (exact, noisy or sampled)."""
    noise = exec.noise
    if noise is None or noise.two_qubit_depol == 0:
        state = sv.new_zero_state(circuit.n)
        for op in circuit.ops:
            apply_op(state, op)
        dist = sv.probabilities(state)
    else:
        acc = np.zeros(2**circuit.n)
        for _ in range(noise.trajectories):
            acc += sv.probabilities(noisy_trajectory(circuit, noise.two_qubit_depol, rng)).probs
        dist = sv.ProbDist(circuit.n, acc / noise.trajectories)

    flips = noise.flips_for(circuit.n) if noise is not None and noise.has_readout else None
    if exec.shots == 0:
        if flips is not None:
            dist = sv.apply_readout_confusion(dist, flips)
        return dist
    return sv.sample(dist, exec.shots, rng, flips).to_dist()


def predictive_distribution(
    window: Sequence[float],
    variant: Variant,
    p: NormalizationParams,
    exec: ExecConfig = ExecConfig(),
    step: int = 0,
) -> sv.ProbDist:
    if not window:
        raise ForecastError("empty window")
    circuit = build_qts_circuit(window_angles(window, p), variant)
    return circuit_distribution(circuit, exec, seeded_generator(exec.seed, step))


def forecast_one(
    window: Sequence[float],
    variant: Variant,
    p: NormalizationParams,
    exec: ExecConfig = ExecConfig(),
    step: int = 0,
    n: int | None = None,
) -> float:
    """Predict the value following ``window`` (ordered oldest to newest)."""
    if n is not None and len(window) != n:
        raise ForecastError(f"window has {len(window)} values, expected {n}")
    dist = predictive_distribution(window, variant, p, exec, step)
    return decode_prediction(sv.expectation_bitvalue(dist), dist.n, p)


def mitigate_readout(counts: sv.Counts | sv.ProbDist, flip_probs) -> sv.ProbDist:
    """Undo independent readout flips by inverting each qubit's confusion matrix."""
    dist = counts.to_dist() if isinstance(counts, sv.Counts) else counts
    flips = np.broadcast_to(np.asarray(flip_probs, dtype=np.float64), (dist.n,))
    if np.any(flips >= 0.5) or np.any(flips < 0):
        raise ForecastError("readout flip probabilities must lie in [0, 0.5) to invert")
    # inverse of [[1-f, f], [f, 1-f]]
    mats = [np.array([[1 - f, -f], [-f, 1 - f]]) / (1 - 2 * f) for f in flips]
    probs = np.clip(sv.apply_per_qubit(dist.probs, dist.n, mats), 0.0, None)
    return sv.ProbDist(dist.n, probs / probs.sum())


def normalized_mse(predictions, actuals, p: NormalizationParams) -> float | None:
    m = min(len(predictions), len(actuals))
    if m == 0:
        return None
    return mse([rescale(x, p) for x in predictions[:m]], [rescale(x, p) for x in actuals[:m]])


def check_series(series, train_len: int, steps: int, mode: str) -> None:
    if mode not in (ROLLING, RECURSIVE):
        raise ForecastError(f"unknown mode {mode!r}")
    if steps < 0:
        raise ForecastError("steps must be >= 0")
    if train_len < 2:
        raise ForecastError("train_len must be >= 2")
    need = train_len + steps if mode == ROLLING else train_len
    if len(series) < need:
        raise ForecastError(f"{mode} forecast of {steps} steps needs {need} values, series has {len(series)}")


def actuals_after(series, train_len: int, steps: int) -> list[float]:
    return [float(series[i]) for i in range(train_len, min(train_len + steps, len(series)))]


def forecast_many(
    series,
    train_len: int,
    steps: int,
    variant: Variant,
    mode: str = ROLLING,
    exec: ExecConfig = ExecConfig(),
) -> ForecastResult:
    """Forecast ``steps`` values after the first ``train_len`` of ``series``.

    ``series`` only needs ``len``, slicing and integer indexing. Apart from the
    ``series[:train_len]`` slice used to fit the scaling, a rolling forecast
    touches exactly the ``n + steps`` indices it needs.
    """
    variant = Variant(variant)
    check_series(series, train_len, steps, mode)
    params = fit_norm_params(series[:train_len])
    n = window_size_for(train_len)
    if n > sv.MAX_QUBITS:
        raise ForecastError(f"window of {n} qubits exceeds the {sv.MAX_QUBITS}-qubit limit")

    preds: list[float] = []
    if mode == ROLLING:
        for j in range(steps):
            end = train_len + j
            window = [float(series[i]) for i in range(end - n, end)]
            preds.append(forecast_one(window, variant, params, exec, step=j))
    else:
        history = [float(series[i]) for i in range(train_len - n, train_len)]
        for j in range(steps):
            pred = forecast_one(history[-n:], variant, params, exec, step=j)
            preds.append(pred)
            history.append(pred)

    actuals = actuals_after(series, train_len, steps)
    result = ForecastResult(
        model=f"qts-{variant.value}",
        predictions=preds,
        actuals=actuals,
        mse=normalized_mse(preds, actuals, params),
        mode=mode,
        n=n,
        train_len=train_len,
        steps=steps,
        params=params,
        variant=variant,
        config=exec.as_dict(),
    )
    log.debug("%s %s: %d steps, mse=%s", result.model, mode, steps, result.mse)
    return result


def entanglement_tv(n: int, value: float = 0.5) -> float:
    """Total variation between full and rotation-only distributions for a constant window."""
    p = NormalizationParams(0.0, 1.0)
    window = [value] * n
    full = predictive_distribution(window, Variant.FULL, p)
    rot = predictive_distribution(window, Variant.ROT, p)
    return sv.total_variation(full, rot)


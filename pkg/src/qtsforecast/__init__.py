"""Quantum time-series (QTS) forecasting on a statevector simulator, with AR/ARIMA baselines."""

from .circuit import Circuit, GateKind, GateOp, Variant, build_qts_circuit, entanglement_edges, gate_counts, run
from .encoding import NormalizationParams, angle_encode, decode_prediction, fit_norm_params, normalize
from .forecast import ExecConfig, ForecastResult, NoiseModel, forecast_many, forecast_one, window_size_for
from .transpile import transpile, verify_equivalence

__version__ = "0.1.0"

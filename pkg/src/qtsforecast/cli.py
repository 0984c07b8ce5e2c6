"""Command-line entry point: ``qts {generate,forecast,benchmark,transpile,plot}``.

Exit codes: 0 success, 1 usage error, 2 data or parse error, 3 numeric or fit error.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import circuit as qc
from .baselines import RECURSIVE, ROLLING, FitError
from .benchmark import parse_models, run_benchmark, MODEL_TOKENS
from .dataio import DataError, gen_ar1, read_csv, write_csv, write_text_atomic
from .encoding import EncodingError
from .forecast import ExecConfig, ForecastError, NoiseModel, forecast_many
from .report import ReportError, dumps_json, load_forecast_json, mse_table, render_svg
from .statevec import MAX_QUBITS, SimulationError
from .transpile import EQUIVALENCE_TOL, transpile, verify_equivalence

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3

log = logging.getLogger("qtsforecast")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get("QTS_SEED")
    if raw is None:
        return 0
    try:
        seed = int(raw)
    except ValueError:
        raise UsageError(f"QTS_SEED must be an integer, got {raw!r}") from None
    if seed < 0:
        raise UsageError("QTS_SEED must be non-negative")
    return seed


def _seed(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    if seed < 0:
        raise UsageError("--seed must be non-negative")
    return seed


def _exec_config(args) -> ExecConfig:
    if args.shots < 0:
        raise UsageError("--shots must be >= 0")
    noisy = args.depol is not None or args.readout is not None
    if noisy and args.shots == 0 and args.trajectories is None:
        raise UsageError("noise flags with --shots 0 need --trajectories")
    if args.trajectories is not None and args.trajectories < 1:
        raise UsageError("--trajectories must be >= 1")
    noise = None
    if noisy:
        for name in ("depol", "readout"):
            v = getattr(args, name)
            if v is not None and not 0.0 <= v <= 1.0:
                raise UsageError(f"--{name} must lie in [0, 1]")
        noise = NoiseModel(
            two_qubit_depol=args.depol or 0.0,
            readout_flip=args.readout or 0.0,
            trajectories=args.trajectories or NoiseModel.trajectories,
        )
    return ExecConfig(shots=args.shots, seed=_seed(args), noise=noise)


def cmd_generate(args) -> int:
    if args.length < 1:
        raise UsageError("--length must be >= 1")
    if args.sigma < 0 or not math.isfinite(args.sigma) or not math.isfinite(args.phi):
        raise UsageError("--sigma must be finite and >= 0, --phi finite")
    series = gen_ar1(args.phi, args.sigma, args.length, _seed(args))
    write_csv(series, args.out)
    log.info("wrote %d values to %s", len(series), args.out)
    return EXIT_OK


def cmd_forecast(args) -> int:
    exec = _exec_config(args)
    series = read_csv(args.input)
    result = forecast_many(series, args.train_len, args.steps, qc.Variant.parse(args.variant), args.mode, exec)
    doc = result.as_dict()
    doc["source"] = str(args.input)
    write_text_atomic(args.out, dumps_json(doc))
    log.info("%s: %d predictions, mse=%s", result.model, len(result.predictions), result.mse)
    return EXIT_OK


def cmd_benchmark(args) -> int:
    exec = _exec_config(args)
    try:
        models = parse_models(args.models)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    series = read_csv(args.input)
    report = run_benchmark(series, args.train_len, args.steps, models, args.mode, exec, source=str(args.input))
    write_text_atomic(args.report, dumps_json(report))
    if args.table:
        write_text_atomic(args.table, mse_table(report))
    print(mse_table(report), end="")
    return EXIT_OK


def cmd_transpile(args) -> int:
    if args.circuit is not None:
        try:
            original = qc.loads(Path(args.circuit).read_text(encoding="utf-8"))
        except OSError as exc:
            raise DataError(f"cannot read {args.circuit}: {exc}") from None
        if any(op.kind not in (qc.GateKind.RY, qc.GateKind.CX) for op in original.ops):
            raise DataError("input circuit may only contain RY and CX")
    else:
        if args.qubits is None or args.variant is None:
            raise UsageError("give --qubits and --variant, or --circuit")
        if not 1 <= args.qubits <= MAX_QUBITS:
            raise UsageError(f"--qubits must be in [1, {MAX_QUBITS}]")
        rng = np.random.default_rng(_seed(args))
        thetas = rng.uniform(0.0, math.pi, args.qubits)
        original = qc.build_qts_circuit(thetas, qc.Variant.parse(args.variant))
    lowered = transpile(original)
    before, after = qc.gate_counts(original), qc.gate_counts(lowered)
    dev = verify_equivalence(original, lowered, trials=args.trials, seed=_seed(args))
    verdict = "<=" if dev <= EQUIVALENCE_TOL else ">"
    print(
        f"before: {before['single_qubit']} 1q / {before['two_qubit']} 2q; "
        f"after: {after['single_qubit']} 1q / {after['two_qubit']} 2q; "
        f"max deviation {dev:.3e} {verdict} {EQUIVALENCE_TOL:g}"
    )
    if args.emit:
        write_text_atomic(args.emit, qc.dumps(lowered))
    return EXIT_OK if dev <= EQUIVALENCE_TOL else EXIT_NUMERIC


def cmd_plot(args) -> int:
    actuals: list[float] = []
    series: list[tuple[str, list[float]]] = []
    for path in args.forecast:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise DataError(f"cannot read {path}: {exc}") from None
        acts, preds = load_forecast_json(text, label=str(path))
        if len(acts) > len(actuals):
            actuals = acts
        series.extend(preds)
    write_text_atomic(args.out, render_svg(actuals, series))
    return EXIT_OK


def _add_exec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=(ROLLING, RECURSIVE), default=ROLLING)
    p.add_argument("--shots", type=int, default=0, help="0 = exact probabilities")
    p.add_argument("--seed", type=int, default=None, help="default: $QTS_SEED or 0")
    p.add_argument("--depol", type=float, default=None, help="depolarizing probability per CX")
    p.add_argument("--readout", type=float, default=None, help="readout flip probability per qubit")
    p.add_argument("--trajectories", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qts", description="Quantum time-series forecasting and benchmarking.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic AR(1) series as CSV")
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("forecast", help="run one QTS variant and write the result as JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--train-len", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--variant", choices=("rot", "fwd", "full"), required=True)
    _add_exec_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_forecast)

    p = sub.add_parser("benchmark", help="compare QTS variants with AR/ARIMA baselines")
    p.add_argument("--input", required=True)
    p.add_argument("--train-len", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--models", default=",".join(MODEL_TOKENS))
    _add_exec_flags(p)
    p.add_argument("--report", required=True)
    p.add_argument("--table", default=None)
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("transpile", help="lower a QTS circuit to {RZ, SX, X, CX} and report gate counts")
    p.add_argument("--qubits", type=int, default=None)
    p.add_argument("--variant", choices=("rot", "fwd", "full"), default=None)
    p.add_argument("--circuit", default=None, help="read the circuit from a text file instead")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--emit", default=None)
    p.set_defaults(func=cmd_transpile)

    p = sub.add_parser("plot", help="draw forecasts against actuals as SVG")
    p.add_argument("--forecast", action="append", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qts: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ReportError, ForecastError, qc.CircuitError) as exc:
        print(f"qts: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (FitError, EncodingError, SimulationError, ArithmeticError) as exc:
        print(f"qts: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"qts: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

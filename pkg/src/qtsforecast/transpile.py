"""Lowering to the IBM-style native basis {RZ, SX, X, CX}.

Each RY becomes a fixed four-gate sequence, applied left to right:

    SX, RZ(theta + pi), SX, RZ(pi)

which equals RY(theta) up to a global phase. RZs are never merged, so the
transpiled single-qubit count is always four times the RY count.
"""

from __future__ import annotations

import math

import numpy as np

from . import statevec as sv
from .circuit import Circuit, CircuitError, GateKind, GateOp, run

NATIVE_BASIS = frozenset({GateKind.RZ, GateKind.SX, GateKind.X, GateKind.CX})
EQUIVALENCE_TOL = 1e-10


def check_basis(basis) -> frozenset[GateKind]:
    basis = frozenset(GateKind(k) for k in basis)
    if GateKind.CX not in basis or not {GateKind.RZ, GateKind.SX} <= basis:
        raise CircuitError("basis must contain CX, RZ and SX")
    return basis


def decompose_ry(theta: float, qubit: int = 0) -> list[GateOp]:
    return [
        GateOp(GateKind.SX, (qubit,)),
        GateOp(GateKind.RZ, (qubit,), theta + math.pi),
        GateOp(GateKind.SX, (qubit,)),
        GateOp(GateKind.RZ, (qubit,), math.pi),
    ]


def transpile(circuit: Circuit, basis=NATIVE_BASIS) -> Circuit:
    basis = check_basis(basis)
    ops: list[GateOp] = []
    for op in circuit.ops:
        if op.kind is GateKind.RY:
            ops.extend(decompose_ry(op.angle, op.qubits[0]))
        elif op.kind in basis:
            ops.append(op)
        else:
            raise CircuitError(f"no lowering for {op.kind.value}")
    return Circuit(circuit.n, tuple(ops))


def random_product_state(n: int, rng: np.random.Generator) -> sv.StateVector:
    """Haar-random single-qubit state on every qubit."""
    amps = np.ones(1, dtype=np.complex128)
    for _ in range(n):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        amps = np.kron(amps, v / np.linalg.norm(v))
    return sv.StateVector(n, amps)


def verify_equivalence(a: Circuit, b: Circuit, trials: int = 100, seed: int = 0) -> float:
    """Worst-case ``1 - |<a psi|b psi>|`` over random product inputs ``psi``."""
    if a.n != b.n:
        raise CircuitError(f"qubit counts differ: {a.n} vs {b.n}")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        psi = random_product_state(a.n, rng)
        overlap = abs(np.vdot(run(a, psi).amps, run(b, psi).amps))
        worst = max(worst, 1.0 - overlap)
    return max(worst, 0.0)

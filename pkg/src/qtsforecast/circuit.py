"""Gate-list circuits and the QTS circuit family.

A QTS circuit angle-encodes one lag per qubit with RY, then entangles the
lags with parameter-free CNOTs: a forward chain ``q -> q+1`` and, for the
full variant, cross links ``q -> q+2`` on odd q. All forward CNOTs come
before all cross CNOTs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

from . import statevec as sv


class GateKind(str, enum.Enum):
    RY = "RY"
    RZ = "RZ"
    SX = "SX"
    X = "X"
    CX = "CX"


_ANGLED = {GateKind.RY, GateKind.RZ}


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class GateOp:
    kind: GateKind
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        kind = GateKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        arity = 2 if kind is GateKind.CX else 1
        if len(self.qubits) != arity:
            raise CircuitError(f"{kind.value} takes {arity} qubit(s), got {self.qubits}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise CircuitError("CX needs two distinct qubits")
        if kind in _ANGLED:
            if self.angle is None or not math.isfinite(self.angle):
                raise CircuitError(f"{kind.value} needs a finite angle")
        elif self.angle is not None:
            raise CircuitError(f"{kind.value} takes no angle")


@dataclass(frozen=True)
class Circuit:
    n: int
    ops: tuple[GateOp, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        if self.n < 1:
            raise CircuitError("circuit needs at least one qubit")
        for op in self.ops:
            if any(not 0 <= q < self.n for q in op.qubits):
                raise CircuitError(f"{op} addresses a qubit outside 0..{self.n - 1}")


class Variant(str, enum.Enum):
    ROT = "rot"
    FWD = "fwd"
    FULL = "full"

    @classmethod
    def parse(cls, token: str) -> "Variant":
        aliases = {"rotonly": cls.ROT, "forward": cls.FWD}
        t = token.strip().lower()
        return aliases[t] if t in aliases else cls(t)


def forward_edges(n: int) -> list[tuple[int, int]]:
    return [(q, q + 1) for q in range(n - 1)]


def cross_edges(n: int, stride: int = 2) -> list[tuple[int, int]]:
    # Odd 0-indexed controls are the even qubits of a 1-indexed layout.
    return [(q, q + stride) for q in range(1, n - stride, 2)]


def entanglement_edges(n: int, variant: Variant, cross_stride: int = 2) -> list[tuple[int, int]]:
    if n < 1:
        raise CircuitError("n must be >= 1")
    variant = Variant(variant)
    if variant is Variant.ROT:
        return []
    edges = forward_edges(n)
    if variant is Variant.FULL:
        edges += cross_edges(n, cross_stride)
    return edges


def build_qts_circuit(thetas: Sequence[float], variant: Variant, cross_stride: int = 2) -> Circuit:
    """RY(thetas[j]) on qubit j, then the variant's CNOT block.

    Qubit 0 carries the most recent observation.
    """
    thetas = [float(t) for t in thetas]
    if not thetas:
        raise CircuitError("need at least one angle")
    n = len(thetas)
    ops = [GateOp(GateKind.RY, (j,), t) for j, t in enumerate(thetas)]
    ops += [GateOp(GateKind.CX, e) for e in entanglement_edges(n, variant, cross_stride)]
    return Circuit(n, tuple(ops))


_FIXED = {GateKind.SX: sv.SX_MATRIX, GateKind.X: sv.X_MATRIX}


def apply_op(state: sv.StateVector, op: GateOp) -> sv.StateVector:
    if op.kind is GateKind.CX:
        return sv.apply_cx(state, *op.qubits)
    if op.kind is GateKind.RY:
        return sv.apply_ry(state, op.qubits[0], op.angle)
    if op.kind is GateKind.RZ:
        return sv.apply_1q_unitary(state, op.qubits[0], sv.rz_matrix(op.angle))
    return sv.apply_1q_unitary(state, op.qubits[0], _FIXED[op.kind])


def run(circuit: Circuit, initial: sv.StateVector | None = None) -> sv.StateVector:
    """Apply every op in order to |0...0> (or a copy of ``initial``)."""
    if initial is None:
        state = sv.new_zero_state(circuit.n)
    else:
        if initial.n != circuit.n:
            raise CircuitError(f"initial state has {initial.n} qubits, circuit has {circuit.n}")
        state = initial.copy()
    for op in circuit.ops:
        apply_op(state, op)
    return state


def gate_counts(circuit: Circuit) -> dict[str, int]:
    two = sum(1 for op in circuit.ops if op.kind is GateKind.CX)
    return {"single_qubit": len(circuit.ops) - two, "two_qubit": two}


def expected_counts(n: int, variant: Variant) -> dict[str, int]:
    """Closed-form gate counts for an untranspiled QTS circuit."""
    variant = Variant(variant)
    two = 0
    if variant is not Variant.ROT:
        two = n - 1
    if variant is Variant.FULL:
        two += len(cross_edges(n))
    return {"single_qubit": n, "two_qubit": two}


def dumps(circuit: Circuit) -> str:
    """Serialize to the line format ``RY q0 1.5707963267948966`` / ``CX q0 q1``."""
    lines = [f"# qubits {circuit.n}"]
    for op in circuit.ops:
        parts = [op.kind.value] + [f"q{q}" for q in op.qubits]
        if op.angle is not None:
            parts.append(repr(float(op.angle)))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def loads(text: str, n: int | None = None) -> Circuit:
    """Parse the line format. Qubit count comes from ``n``, the ``# qubits``
    header, or the largest index used, in that order."""
    ops = []
    header_n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "qubits":
                header_n = int(parts[1])
            continue
        parts = line.split()
        try:
            kind = GateKind(parts[0].upper())
            arity = 2 if kind is GateKind.CX else 1
            qubits = []
            for tok in parts[1 : 1 + arity]:
                if not tok.startswith("q"):
                    raise ValueError(f"bad qubit token {tok!r}")
                qubits.append(int(tok[1:]))
            rest = parts[1 + arity :]
            angle = float(rest[0]) if kind in _ANGLED and rest else None
            if len(rest) > (1 if kind in _ANGLED else 0):
                raise ValueError("trailing tokens")
            ops.append(GateOp(kind, tuple(qubits), angle))
        except (ValueError, IndexError) as exc:
            raise CircuitError(f"line {lineno}: cannot parse {raw!r}: {exc}") from None
    if n is None:
        n = header_n
    if n is None:
        n = 1 + max((q for op in ops for q in op.qubits), default=0)
    return Circuit(n, tuple(ops))

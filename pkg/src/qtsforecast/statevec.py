"""Dense statevector simulation.

Bit convention: qubit 0 is the most significant bit of the basis index k,
so ``k = sum(b_q << (n - 1 - q))``. Reshaping the amplitude array to
``(2,) * n`` in C order therefore puts qubit q on axis q.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 24
UNITARY_TOL = 1e-10


class SimulationError(ValueError):
    """Invalid simulator input (qubit index, size, matrix)."""


@dataclass
class StateVector:
    n: int
    amps: np.ndarray

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amps.copy())

    def norm(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)


@dataclass(frozen=True)
class ProbDist:
    n: int
    probs: np.ndarray

    def __post_init__(self):
        if self.probs.shape != (2**self.n,):
            raise SimulationError(f"expected {2**self.n} probabilities, got {self.probs.shape}")


@dataclass(frozen=True)
class Counts:
    n: int
    shots: int
    histogram: dict[int, int]

    def to_dist(self) -> ProbDist:
        probs = np.zeros(2**self.n)
        for k, c in self.histogram.items():
            probs[k] = c
        return ProbDist(self.n, probs / self.shots)


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_QUBITS:
        raise SimulationError(f"qubit count must be in [1, {MAX_QUBITS}], got {n!r}")


def _check_qubit(state: StateVector, qubit: int) -> None:
    if not 0 <= qubit < state.n:
        raise SimulationError(f"qubit {qubit} out of range for {state.n}-qubit state")


def new_zero_state(n: int) -> StateVector:
    _check_n(n)
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n, amps)


def ry_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def rz_matrix(theta: float) -> np.ndarray:
    return np.array(
        [[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=np.complex128
    )


SX_MATRIX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=np.complex128)
X_MATRIX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y_MATRIX = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z_MATRIX = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (np.eye(2, dtype=np.complex128), X_MATRIX, Y_MATRIX, Z_MATRIX)


def _split(state: StateVector, qubit: int) -> np.ndarray:
    # View as (high, bit, low); qubit is the middle axis.
    return state.amps.reshape(2**qubit, 2, 2 ** (state.n - qubit - 1))


def _apply_matrix(state: StateVector, qubit: int, u: np.ndarray) -> StateVector:
    view = _split(state, qubit)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
    view[:, 1, :] = u[1, 0] * a0 + u[1, 1] * a1
    return state


def apply_ry(state: StateVector, qubit: int, theta: float) -> StateVector:
    """Rotate ``qubit`` about Y by ``theta`` in place and return the state."""
    _check_qubit(state, qubit)
    if not np.isfinite(theta):
        raise SimulationError(f"non-finite angle {theta!r}")
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    view = _split(state, qubit)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = c * a0 - s * a1
    view[:, 1, :] = s * a0 + c * a1
    return state


def apply_1q_unitary(state: StateVector, qubit: int, u: np.ndarray) -> StateVector:
    _check_qubit(state, qubit)
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2) or not np.allclose(u.conj().T @ u, np.eye(2), rtol=0, atol=UNITARY_TOL):
        raise SimulationError("matrix is not a 2x2 unitary")
    return _apply_matrix(state, qubit, u)


def apply_cx(state: StateVector, control: int, target: int) -> StateVector:
    _check_qubit(state, control)
    _check_qubit(state, target)
    if control == target:
        raise SimulationError("control and target must differ")
    t = state.amps.reshape((2,) * state.n)
    idx: list = [slice(None)] * state.n
    idx[control] = 1
    # After fixing the control axis, the target axis shifts down by one if it came later.
    sub = t[tuple(idx)]
    axis = target - 1 if target > control else target
    sub[...] = np.flip(sub, axis=axis).copy()
    return state


def probabilities(state: StateVector) -> ProbDist:
    probs = state.amps.real**2 + state.amps.imag**2
    return ProbDist(state.n, probs)


def marginals(dist: ProbDist) -> np.ndarray:
    """Per-qubit probability of reading 1, shape ``(n,)``."""
    t = dist.probs.reshape((2,) * dist.n)
    out = np.empty(dist.n)
    for q in range(dist.n):
        axes = tuple(a for a in range(dist.n) if a != q)
        out[q] = t.sum(axis=axes)[1] if axes else t[1]
    return out


def product_of_marginals(dist: ProbDist) -> ProbDist:
    p1 = marginals(dist)
    probs = np.ones(1)
    for p in p1:
        probs = np.kron(probs, np.array([1.0 - p, p]))
    return ProbDist(dist.n, probs)


def total_variation(a: ProbDist, b: ProbDist) -> float:
    return 0.5 * float(np.abs(a.probs - b.probs).sum())


def expectation_bitvalue(dist: ProbDist) -> float:
    """Mean of the outcome index k under ``dist``."""
    return float(np.dot(dist.probs, np.arange(dist.probs.size, dtype=np.float64)))


def _flip_probs(n: int, readout_flips) -> np.ndarray:
    flips = np.broadcast_to(np.asarray(readout_flips, dtype=np.float64), (n,))
    if np.any(flips < 0) or np.any(flips > 1):
        raise SimulationError("readout flip probabilities must lie in [0, 1]")
    return flips


def apply_per_qubit(probs: np.ndarray, n: int, mats) -> np.ndarray:
    t = probs.reshape((2,) * n)
    for q, m in enumerate(mats):
        t = np.moveaxis(np.tensordot(m, t, axes=([1], [q])), 0, q)
    return np.ascontiguousarray(t).reshape(-1)


def apply_readout_confusion(dist: ProbDist, readout_flips) -> ProbDist:
    """Exact outcome distribution after independent per-qubit bit flips."""
    flips = _flip_probs(dist.n, readout_flips)
    mats = [np.array([[1 - f, f], [f, 1 - f]]) for f in flips]
    return ProbDist(dist.n, apply_per_qubit(dist.probs, dist.n, mats))


def sample(
    dist: ProbDist,
    shots: int,
    seed: int | np.random.Generator,
    readout_flips=None,
) -> Counts:
    """Draw ``shots`` outcomes, optionally corrupting each measured bit.

    ``seed`` may be an integer or an existing generator; the same seed always
    yields the same histogram.
    """
    if shots < 1:
        raise SimulationError("shots must be >= 1; use the probabilities directly for analytic results")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    p = np.clip(dist.probs, 0.0, None)
    p = p / p.sum()
    outcomes = rng.choice(p.size, size=shots, p=p)
    if readout_flips is not None:
        flips = _flip_probs(dist.n, readout_flips)
        for q, f in enumerate(flips):
            if f > 0:
                mask = rng.random(shots) < f
                outcomes[mask] ^= 1 << (dist.n - 1 - q)
    ks, cs = np.unique(outcomes, return_counts=True)
    return Counts(dist.n, shots, {int(k): int(c) for k, c in zip(ks, cs)})

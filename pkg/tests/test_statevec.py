import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtsforecast import statevec as sv
from qtsforecast.circuit import Circuit, GateKind, GateOp, run

import oracles

SQ = math.sqrt(0.5)


def state_of(amps):
    amps = np.asarray(amps, dtype=complex)
    return sv.StateVector(int(math.log2(amps.size)), amps)


class TestZeroState:
    @pytest.mark.parametrize("n, expected", [(1, [1, 0]), (2, [1, 0, 0, 0])])
    def test_small(self, n, expected):
        np.testing.assert_array_equal(sv.new_zero_state(n).amps, expected)

    def test_ten_qubits(self):
        s = sv.new_zero_state(10)
        assert s.amps.size == 1024
        assert s.norm() == 1.0

    @pytest.mark.parametrize("n", [0, 25, -1])
    def test_out_of_range(self, n):
        with pytest.raises(sv.SimulationError):
            sv.new_zero_state(n)


class TestRy:
    def test_identity(self):
        np.testing.assert_allclose(sv.apply_ry(sv.new_zero_state(1), 0, 0.0).amps, [1, 0], atol=1e-15)

    def test_pi_flips(self):
        np.testing.assert_allclose(sv.apply_ry(sv.new_zero_state(1), 0, math.pi).amps, [0, 1], atol=1e-15)

    def test_half_pi_superposition(self):
        np.testing.assert_allclose(sv.apply_ry(sv.new_zero_state(1), 0, math.pi / 2).amps, [SQ, SQ], atol=1e-15)

    def test_bad_qubit(self):
        with pytest.raises(sv.SimulationError):
            sv.apply_ry(sv.new_zero_state(2), 2, 0.1)

    def test_non_finite_angle(self):
        with pytest.raises(sv.SimulationError):
            sv.apply_ry(sv.new_zero_state(1), 0, float("nan"))

    def test_inverse(self):
        rng = np.random.default_rng(3)
        s = state_of(rng.normal(size=8) + 1j * rng.normal(size=8))
        s.amps /= math.sqrt(s.norm())
        before = s.amps.copy()
        sv.apply_ry(s, 1, 0.73)
        sv.apply_ry(s, 1, -0.73)
        np.testing.assert_allclose(s.amps, before, atol=1e-12)


class TestCx:
    def test_truth_table(self):
        s = state_of([0, 0, 1, 0])  # |10>
        np.testing.assert_array_equal(sv.apply_cx(s, 0, 1).amps, [0, 0, 0, 1])
        s = sv.new_zero_state(2)
        np.testing.assert_array_equal(sv.apply_cx(s, 0, 1).amps, [1, 0, 0, 0])

    def test_reverse_direction(self):
        s = state_of([0, 1, 0, 0])  # |01>, control on qubit 1
        np.testing.assert_array_equal(sv.apply_cx(s, 1, 0).amps, [0, 0, 0, 1])

    def test_involution(self):
        rng = np.random.default_rng(1)
        v = rng.normal(size=16) + 1j * rng.normal(size=16)
        s = state_of(v / np.linalg.norm(v))
        before = s.amps.copy()
        sv.apply_cx(sv.apply_cx(s, 3, 1), 3, 1)
        np.testing.assert_allclose(s.amps, before, atol=1e-12)

    def test_same_qubit(self):
        with pytest.raises(sv.SimulationError):
            sv.apply_cx(sv.new_zero_state(2), 1, 1)


class TestUnitary:
    def test_identity(self):
        s = sv.apply_ry(sv.new_zero_state(1), 0, 1.0)
        before = s.amps.copy()
        np.testing.assert_array_equal(sv.apply_1q_unitary(s, 0, np.eye(2)).amps, before)

    def test_x(self):
        np.testing.assert_array_equal(sv.apply_1q_unitary(sv.new_zero_state(1), 0, sv.X_MATRIX).amps, [0, 1])

    def test_matches_ry(self):
        a = sv.apply_ry(sv.new_zero_state(3), 1, 0.4)
        b = sv.apply_1q_unitary(sv.new_zero_state(3), 1, sv.ry_matrix(0.4))
        np.testing.assert_allclose(a.amps, b.amps, atol=1e-12)

    def test_rejects_non_unitary(self):
        with pytest.raises(sv.SimulationError):
            sv.apply_1q_unitary(sv.new_zero_state(1), 0, np.array([[1, 1], [0, 1]]))


class TestDistributions:
    def test_probabilities(self):
        d = sv.probabilities(state_of([math.sqrt(0.25), math.sqrt(0.75)]))
        np.testing.assert_allclose(d.probs, [0.25, 0.75])
        np.testing.assert_array_equal(sv.probabilities(state_of([0, 0, 0, 1])).probs, [0, 0, 0, 1])

    def test_bell(self):
        s = sv.apply_cx(sv.apply_ry(sv.new_zero_state(2), 0, math.pi / 2), 0, 1)
        np.testing.assert_allclose(sv.probabilities(s).probs, [0.5, 0, 0, 0.5], atol=1e-15)

    @pytest.mark.parametrize(
        "probs, expected",
        [
            ([0.5, 0, 0, 0.5], 1.5),
            ([0, 0, 0, 1.0], 3.0),
            ([0.2304, 0.4096, 0.2304, 0.1296], 1.2592),
        ],
    )
    def test_expectation(self, probs, expected):
        assert sv.expectation_bitvalue(sv.ProbDist(2, np.array(probs))) == pytest.approx(expected, abs=1e-12)

    def test_marginals_and_product(self):
        d = sv.ProbDist(2, np.array([0.5, 0, 0, 0.5]))
        np.testing.assert_allclose(sv.marginals(d), [0.5, 0.5])
        np.testing.assert_allclose(sv.product_of_marginals(d).probs, [0.25] * 4)
        assert sv.total_variation(d, sv.product_of_marginals(d)) == pytest.approx(0.5)


class TestSample:
    def test_deterministic_outcome(self):
        c = sv.sample(sv.ProbDist(1, np.array([0.0, 1.0])), 100, seed=0)
        assert c.histogram == {1: 100}
        assert c.shots == 100

    def test_fair_coin(self):
        c = sv.sample(sv.ProbDist(1, np.array([0.5, 0.5])), 10_000, seed=7)
        assert abs(c.histogram[1] / 10_000 - 0.5) <= 0.015

    def test_seed_reproducible(self):
        d = sv.ProbDist(2, np.array([0.1, 0.2, 0.3, 0.4]))
        assert sv.sample(d, 500, seed=5).histogram == sv.sample(d, 500, seed=5).histogram

    def test_zero_shots(self):
        with pytest.raises(sv.SimulationError):
            sv.sample(sv.ProbDist(1, np.array([1.0, 0.0])), 0, seed=0)

    def test_readout_flip_rate(self):
        # single bit-flip channel: P(observed 1) = 0.9 exactly, sampled within 3 sigma
        d = sv.ProbDist(1, np.array([0.0, 1.0]))
        exact = sv.apply_readout_confusion(d, 0.1)
        np.testing.assert_allclose(exact.probs, [0.1, 0.9], atol=1e-15)
        m = 100_000
        c = sv.sample(d, m, seed=11, readout_flips=[0.1])
        assert abs(c.histogram[1] / m - 0.9) <= 3 * math.sqrt(0.09 / m)

    def test_counts_sum(self):
        c = sv.sample(sv.ProbDist(2, np.full(4, 0.25)), 1234, seed=2, readout_flips=0.2)
        assert sum(c.histogram.values()) == 1234

    @pytest.mark.parametrize("seed", range(10))
    def test_frequencies_converge(self, seed):
        p = np.array([0.1, 0.05, 0.45, 0.4])
        m = 20_000
        c = sv.sample(sv.ProbDist(2, p), m, seed=seed)
        freq = c.to_dist().probs
        assert np.all(np.abs(freq - p) <= 3 * np.sqrt(p * (1 - p) / m))


gate_strategy = st.one_of(
    st.tuples(st.just("RY"), st.integers(0, 3), st.floats(-7, 7)),
    st.tuples(st.just("RZ"), st.integers(0, 3), st.floats(-7, 7)),
    st.tuples(st.just("SX"), st.integers(0, 3), st.none()),
    st.tuples(st.just("X"), st.integers(0, 3), st.none()),
    st.tuples(st.just("CX"), st.permutations(range(4)).map(lambda p: (p[0], p[1])), st.none()),
)


def _to_circuit(n, gates):
    ops = []
    for kind, q, angle in gates:
        qubits = q if isinstance(q, tuple) else (q,)
        if any(x >= n for x in qubits):
            continue
        ops.append(GateOp(GateKind(kind), qubits, angle))
    return Circuit(n, ops)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.lists(gate_strategy, max_size=25))
def test_norm_preserved_and_matches_dense_oracle(n, gates):
    c = _to_circuit(n, gates)
    state = run(c)
    assert abs(state.norm() - 1.0) <= 1e-12
    np.testing.assert_allclose(state.amps, oracles.circuit_state(c), rtol=0, atol=1e-12)

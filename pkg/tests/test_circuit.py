import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtsforecast import circuit as qc
from qtsforecast import statevec as sv
from qtsforecast.circuit import GateKind, GateOp, Variant

import oracles


class TestEdges:
    def test_ten_full(self):
        edges = qc.entanglement_edges(10, Variant.FULL)
        assert edges[:9] == [(q, q + 1) for q in range(9)]
        assert edges[9:] == [(1, 3), (3, 5), (5, 7), (7, 9)]

    def test_single_qubit(self):
        assert qc.entanglement_edges(1, Variant.FWD) == []
        assert qc.entanglement_edges(1, Variant.FULL) == []

    def test_four_full(self):
        assert qc.entanglement_edges(4, Variant.FULL) == [(0, 1), (1, 2), (2, 3), (1, 3)]

    def test_rot_empty(self):
        assert qc.entanglement_edges(7, Variant.ROT) == []

    def test_larger_stride(self):
        assert qc.cross_edges(8, stride=3) == [(1, 4), (3, 6)]


class TestBuild:
    def test_rot(self):
        c = qc.build_qts_circuit([0.1, 0.2, 0.3], Variant.ROT)
        assert [op.kind for op in c.ops] == [GateKind.RY] * 3
        assert [op.qubits for op in c.ops] == [(0,), (1,), (2,)]

    def test_ten_full(self):
        c = qc.build_qts_circuit([0.5] * 10, Variant.FULL)
        assert len(c.ops) == 23
        assert qc.gate_counts(c) == {"single_qubit": 10, "two_qubit": 13}

    def test_four_full(self):
        c = qc.build_qts_circuit([0.5] * 4, Variant.FULL)
        assert len(c.ops) == 8
        assert qc.gate_counts(c) == {"single_qubit": 4, "two_qubit": 4}

    def test_counts_by_variant(self):
        thetas = [0.3] * 10
        assert qc.gate_counts(qc.build_qts_circuit(thetas, Variant.ROT)) == {"single_qubit": 10, "two_qubit": 0}
        assert qc.gate_counts(qc.build_qts_circuit(thetas, Variant.FWD)) == {"single_qubit": 10, "two_qubit": 9}

    def test_empty(self):
        with pytest.raises(qc.CircuitError):
            qc.build_qts_circuit([], Variant.FULL)

    @pytest.mark.parametrize("n", range(1, 25))
    @pytest.mark.parametrize("variant", list(Variant))
    def test_count_formula(self, n, variant):
        c = qc.build_qts_circuit([0.1] * n, variant)
        cross = len([q for q in range(1, n, 2) if q + 2 <= n - 1])
        two = {Variant.ROT: 0, Variant.FWD: n - 1, Variant.FULL: n - 1 + cross}[variant]
        assert qc.gate_counts(c) == {"single_qubit": n, "two_qubit": two}
        assert qc.expected_counts(n, variant) == qc.gate_counts(c)

    @given(st.lists(st.floats(0, math.pi), min_size=1, max_size=12))
    def test_variant_prefixes(self, thetas):
        rot, fwd, full = (qc.build_qts_circuit(thetas, v).ops for v in Variant)
        assert fwd[: len(rot)] == rot
        assert full[: len(fwd)] == fwd


class TestGateOp:
    def test_validation(self):
        with pytest.raises(qc.CircuitError):
            GateOp(GateKind.CX, (1, 1))
        with pytest.raises(qc.CircuitError):
            GateOp(GateKind.RY, (0,))
        with pytest.raises(qc.CircuitError):
            GateOp(GateKind.SX, (0,), 0.1)
        with pytest.raises(qc.CircuitError):
            qc.Circuit(2, [GateOp(GateKind.X, (2,))])


class TestRun:
    def test_single_flip(self):
        s = qc.run(qc.Circuit(1, [GateOp(GateKind.RY, (0,), math.pi)]))
        np.testing.assert_allclose(s.amps, [0, 1], atol=1e-15)

    def test_cnot(self):
        ops = [GateOp(GateKind.RY, (0,), math.pi), GateOp(GateKind.RY, (1,), 0.0), GateOp(GateKind.CX, (0, 1))]
        np.testing.assert_allclose(qc.run(qc.Circuit(2, ops)).amps, [0, 0, 0, 1], atol=1e-15)

    def test_bell(self):
        ops = [GateOp(GateKind.RY, (0,), math.pi / 2), GateOp(GateKind.RY, (1,), 0.0), GateOp(GateKind.CX, (0, 1))]
        r = math.sqrt(0.5)
        np.testing.assert_allclose(qc.run(qc.Circuit(2, ops)).amps, [r, 0, 0, r], atol=1e-15)

    def test_initial_state_not_mutated(self):
        init = sv.new_zero_state(2)
        qc.run(qc.Circuit(2, [GateOp(GateKind.X, (0,))]), init)
        np.testing.assert_array_equal(init.amps, [1, 0, 0, 0])

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_qts_vs_dense(self, n):
        rng = np.random.default_rng(n)
        for _ in range(10):
            c = qc.build_qts_circuit(rng.uniform(0, math.pi, n), Variant.FULL)
            np.testing.assert_allclose(qc.run(c).amps, oracles.circuit_state(c), atol=1e-12)


class TestFactorization:
    def test_rot_only_factorizes(self):
        rng = np.random.default_rng(0)
        for _ in range(5):
            d = sv.probabilities(qc.run(qc.build_qts_circuit(rng.uniform(0, math.pi, 6), Variant.ROT)))
            assert np.max(np.abs(d.probs - sv.product_of_marginals(d).probs)) <= 1e-12

    @pytest.mark.parametrize("n", range(2, 11))
    def test_full_entangles(self, n):
        # pi/3 encodes the value 0.5
        d = sv.probabilities(qc.run(qc.build_qts_circuit([math.pi / 3] * n, Variant.FULL)))
        assert np.max(np.abs(d.probs - sv.product_of_marginals(d).probs)) > 0.01

    @pytest.mark.parametrize("n", [2, 5, 10])
    def test_half_pi_input_is_cnot_invariant(self, n):
        # |+>^n is a CNOT eigenstate, so no entanglement witness exists at pi/2.
        full = qc.run(qc.build_qts_circuit([math.pi / 2] * n, Variant.FULL))
        rot = qc.run(qc.build_qts_circuit([math.pi / 2] * n, Variant.ROT))
        np.testing.assert_allclose(full.amps, rot.amps, atol=1e-15)


class TestSerialization:
    def test_round_trip(self):
        c = qc.build_qts_circuit([0.1, 1.2345678901234567, 3.0, 0.0], Variant.FULL)
        assert qc.loads(qc.dumps(c)) == c

    def test_format(self):
        text = qc.dumps(qc.build_qts_circuit([math.pi / 2, 0.0], Variant.FWD))
        lines = text.splitlines()
        assert lines[0] == "# qubits 2"
        assert lines[1].startswith("RY q0 1.5707963")
        assert lines[-1] == "CX q0 q1"

    def test_parse_plain(self):
        c = qc.loads("RY q0 1.570796\nCX q0 q1\nSX q2\n")
        assert c.n == 3
        assert c.ops[1] == GateOp(GateKind.CX, (0, 1))

    @pytest.mark.parametrize("bad", ["RY q0\n", "CX q0\n", "FOO q0\n", "SX q0 1.0\n", "RY 0 1.0\n"])
    def test_parse_errors(self, bad):
        with pytest.raises(qc.CircuitError, match="line 1"):
            qc.loads(bad)

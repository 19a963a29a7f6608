import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qactools.circuit_ir import (MINUS, ONE, PLUS, ZERO, CircuitError, ReflectionCircuit,
                                 ReflectionGate, cnot_gate, haar_state, random_circuit)
from qactools.cleanup import (cleanup, computes_parity, oracle_circuit, pair_overlap, pair_state,
                              quantum_restriction_coeffs, verify_cleanup)
from qactools.statevec import accept_prob, all_inputs, fidelity, run


def parity_fixture():
    """x0 xor x1 on qubit 1 via a CNOT-type reflection."""
    return ReflectionCircuit(2, 0, (), ((cnot_gate(0, 1),),), 1, (ZERO, ONE))


def test_coeffs_for_plus_plus():
    a, b = quantum_restriction_coeffs(ReflectionGate((0, 1), (PLUS, PLUS)), 0, 1)
    assert (a, b) == pytest.approx((1 / math.sqrt(2), -1 / math.sqrt(2)))
    v = np.kron(PLUS.vector, PLUS.vector)
    assert abs(np.vdot(v, pair_state(a, b))) < 1e-15


def test_coeffs_for_01():
    g = ReflectionGate((0, 1), (ZERO, ONE))
    a, b = quantum_restriction_coeffs(g, 0, 1)
    assert (a, b) == pytest.approx((0, -1))
    assert pair_overlap(g, 0, 1, a, b) == 0


def test_coeffs_reject_foreign_qubits():
    with pytest.raises(CircuitError):
        quantum_restriction_coeffs(ReflectionGate((0, 1), (ZERO, ONE)), 0, 2)


@given(seed=st.integers(0, 10 ** 6))
def test_pair_is_orthogonal_to_random_axis(seed):
    rng = np.random.default_rng(seed)
    g = ReflectionGate((0, 1, 2), tuple(haar_state(rng) for _ in range(3)))
    a, b = quantum_restriction_coeffs(g, 0, 1)
    assert abs(a) ** 2 + abs(b) ** 2 == pytest.approx(1)
    assert pair_overlap(g, 0, 1, a, b) < 1e-12


def test_already_clean_circuit_unchanged():
    c = random_circuit(4, 3, 2, 3, cleaned_up=True, seed=2)
    r = cleanup(c)
    assert r.survivors == tuple(range(4))
    assert r.circuit == c and not r.classical_fixed and not r.quantum_pairs


def test_three_input_gate_converted():
    g = ReflectionGate((0, 1, 2, 3), (PLUS, MINUS, ONE, haar_state(np.random.default_rng(0))))
    c = ReflectionCircuit(3, 1, (ZERO,), ((g,),), 3, (ZERO, ONE))
    r = cleanup(c)
    assert r.quantum_pairs[0].pair == (0, 1)
    assert 2 in r.survivors
    assert r.circuit.n_gates == c.n_gates
    assert r.circuit.is_cleaned_up()
    v = verify_cleanup(c, r)
    assert v["ok"], v["violations"]


@given(seed=st.integers(0, 10 ** 6), n=st.integers(1, 5))
def test_structural_cleanup_properties(seed, n):
    c = random_circuit(n, 3, 2, 4, seed=seed, max_gates=6)
    r = cleanup(c, "STRUCTURAL")
    assert r.circuit.is_cleaned_up()
    assert len(r.survivors) >= -(-n // 3)
    ref = oracle_circuit(c, r)
    for x in all_inputs(r.circuit.n_inputs):
        assert fidelity(run(r.circuit, x), run(ref, x)) >= 1 - 1e-9
    assert verify_cleanup(c, r)["ok"]


def test_parity_fixture_with_flip():
    c = parity_fixture()
    assert computes_parity(c)
    r = cleanup(c, "PARITY")
    v = verify_cleanup(c, r)
    assert v["ok"] and v["parity_ok"]
    for x in all_inputs(r.circuit.n_inputs):
        assert accept_prob(r.circuit, x) == pytest.approx((sum(x) + r.parity_flip) % 2)


def test_majority_mode_survivor_gap_is_reported():
    # one 2-input gate and no untouched input: balancing costs a third coordinate
    g1 = ReflectionGate((0, 1, 5), (ONE, ONE, ONE))
    g2 = ReflectionGate((2, 3, 4), (PLUS, PLUS, PLUS))
    c = ReflectionCircuit(5, 1, (ZERO,), ((g1, g2),), 5, (ZERO, ONE))
    r = cleanup(c, "MAJORITY")
    v = verify_cleanup(c, r)
    assert len(r.survivors) == 1 < v["required_survivors"] == 2
    assert not v["ok"]
    assert sum(r.classical_fixed.values()) == 1
    # the structural mode meets the bound on the same circuit
    assert verify_cleanup(c, cleanup(c, "STRUCTURAL"))["ok"]


def test_unknown_mode():
    with pytest.raises(CircuitError):
        cleanup(parity_fixture(), "FOO")


def test_result_serializes():
    d = cleanup(parity_fixture(), "PARITY").to_dict()
    assert d["mode"] == "PARITY" and d["classical_fixed"] == {"0": 0}

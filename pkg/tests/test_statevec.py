import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qactools.circuit_ir import (MINUS, ONE, PLUS, ZERO, ReflectionCircuit, ReflectionGate,
                                 random_circuit)
from qactools.statevec import (Complement, Conjugated, DenseState, Identity, SepRank1,
                               SimulationError, Tensor, Zero, accept_prob, activation,
                               apply_projector, apply_reflection, basis_state, cat_state,
                               equal_up_to_phase, fidelity, gate_matrix, permute_qubits,
                               product_state, projector_matrix, random_density_matrix,
                               reduced_density, run, schmidt_rank, trace_distance, trace_norm)

import oracle


def worked_example():
    g = ReflectionGate((0, 1), (ONE, ONE))
    return ReflectionCircuit(1, 1, (ONE,), ((g,),), 1, (ZERO, ONE))


def test_plus_plus_reflection_on_00():
    out = apply_reflection(basis_state((0, 0)), ReflectionGate((0, 1), (PLUS, PLUS)))
    expected = np.array([1, 0, 0, 0]) - 0.5 * np.ones(4)
    assert np.allclose(out.amplitudes, expected, atol=1e-12)


def test_zero_layer_circuit():
    c = ReflectionCircuit(3, 1, (ZERO,))
    st_ = run(c, (1, 0, 1))
    assert np.allclose(st_.amplitudes, basis_state((1, 0, 1, 0)).amplitudes)


def test_worked_two_qubit_states():
    c = worked_example()
    assert np.allclose(run(c, (0,)).amplitudes, [0, 1, 0, 0])
    assert np.allclose(run(c, (1,)).amplitudes, [0, 0, 0, -1])
    # reading the ancilla gives 1 on both inputs; the input qubit reads x
    assert [accept_prob(c, (x,)) for x in (0, 1)] == pytest.approx([1, 1])
    in_proj = SepRank1((0,), (ONE,))
    assert [activation(c, in_proj, (x,)) for x in (0, 1)] == [0, 1]


def test_seprank1_on_plus_state():
    psi = product_state([PLUS, MINUS])
    out = apply_projector(psi, SepRank1((0,), (ZERO,)))
    assert np.allclose(out.amplitudes, product_state([ZERO, MINUS]).amplitudes / math.sqrt(2))


def test_complement_norm_three_quarters():
    out = apply_projector(basis_state((0, 0)), Complement(SepRank1((0, 1), (PLUS, PLUS))))
    # |00> - <++|00>|++> = |00> - (1/4) sum_ab |ab>
    assert np.allclose(out.amplitudes, np.array([1, 0, 0, 0]) - 0.25)
    assert out.norm2() == pytest.approx(0.75, abs=1e-12)


def test_identity_and_zero():
    psi = product_state([PLUS, ONE])
    assert np.allclose(apply_projector(psi, Identity()).amplitudes, psi.amplitudes)
    assert apply_projector(psi, Zero((0,))).norm2() == 0
    assert activation(worked_example(), Identity(), (0,)) == 1


def test_tensor_rejects_overlap():
    with pytest.raises(SimulationError):
        Tensor((SepRank1((0,), (ZERO,)), SepRank1((0,), (ONE,))))


def test_reduced_density_examples():
    rho = reduced_density(product_state([ZERO, PLUS]), [1])
    assert np.allclose(rho.entries, 0.5 * np.ones((2, 2)))
    psi = product_state([PLUS, ONE, MINUS])
    full = reduced_density(psi, [0, 1, 2])
    assert np.allclose(full.entries, np.outer(psi.amplitudes, psi.amplitudes.conj()))
    assert full.violations() == []


def test_trace_distance_zero_plus():
    a = np.outer([1, 0], [1, 0])
    b = 0.5 * np.ones((2, 2))
    assert trace_distance(a, b) == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert trace_distance(a, a) == 0
    with pytest.raises(SimulationError):
        trace_distance(a, np.eye(4) / 4)


def test_schmidt_ranks():
    assert schmidt_rank(product_state([PLUS, ONE]), [0]) == 1
    assert schmidt_rank(cat_state(2), [0]) == 2
    assert schmidt_rank(cat_state(3), [0]) == 2


def test_input_length_and_cap_errors():
    with pytest.raises(SimulationError):
        run(worked_example(), (0, 1))
    with pytest.raises(SimulationError):
        apply_reflection(basis_state((0,)), ReflectionGate((3,), (ZERO,)))


def test_permute_qubits():
    psi = product_state([ZERO, PLUS, ONE])
    back = permute_qubits(psi, [2, 0, 1])
    assert np.allclose(back.amplitudes, product_state([ONE, ZERO, PLUS]).amplitudes)


@given(seed=st.integers(0, 10 ** 6), n=st.integers(0, 3), a=st.integers(1, 3))
def test_run_matches_dense_oracle(seed, n, a):
    c = random_circuit(n, a, 3, 3, seed=seed, pool="haar")
    for x in oracle.inputs(n):
        assert np.allclose(run(c, x).amplitudes, oracle.simulate(c, x), atol=1e-10)
    assert np.allclose(gate_matrix([g for l in c.layers for g in l], c.n_qubits),
                       oracle.circuit_unitary(c), atol=1e-10)


@given(seed=st.integers(0, 10 ** 6))
def test_reflection_is_an_involution_and_preserves_norm(seed):
    rng = np.random.default_rng(seed)
    from qactools.circuit_ir import haar_state
    v = rng.normal(size=16) + 1j * rng.normal(size=16)
    psi = DenseState(4, v / np.linalg.norm(v))
    qs = sorted(rng.choice(4, size=int(rng.integers(1, 5)), replace=False).tolist())
    g = ReflectionGate(tuple(qs), tuple(haar_state(rng) for _ in qs))
    once = apply_reflection(psi, g)
    assert once.norm2() == pytest.approx(1, abs=1e-12)
    assert np.allclose(apply_reflection(once, g).amplitudes, psi.amplitudes, atol=1e-12)


@given(seed=st.integers(0, 10 ** 6))
def test_projector_trees_are_projectors(seed):
    rng = np.random.default_rng(seed)
    from qactools.circuit_ir import haar_state
    p1 = SepRank1((0, 2), (haar_state(rng), haar_state(rng)))
    p2 = Complement(SepRank1((1,), (haar_state(rng),)))
    g = ReflectionGate((0, 1), (haar_state(rng), haar_state(rng)))
    for proj in (p1, p2, Tensor((p1, p2)), Conjugated((g,), p2)):
        m = projector_matrix(proj, 3)
        assert np.allclose(m @ m, m, atol=1e-10)
        assert np.allclose(m, m.conj().T, atol=1e-10)


@given(seed=st.integers(0, 10 ** 6), m=st.integers(1, 3))
def test_trace_distance_properties(seed, m):
    rng = np.random.default_rng(seed)
    a = random_density_matrix(m, rng)
    b = random_density_matrix(m, rng, rank=1)
    d = trace_distance(a, b)
    assert 0 <= d <= 1 + 1e-12
    assert d == pytest.approx(0.5 * trace_norm(a - b), abs=1e-10)
    assert d == pytest.approx(trace_distance(b, a), abs=1e-12)


def test_fidelity_and_phase_equality():
    a = product_state([PLUS, ONE])
    b = DenseState(2, 1j * a.amplitudes)
    assert fidelity(a, b) == pytest.approx(1)
    assert equal_up_to_phase(a, b)
    assert not equal_up_to_phase(a, product_state([MINUS, ONE]))

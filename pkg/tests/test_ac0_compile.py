import numpy as np
import pytest
from hypothesis import given, strategies as st

from qactools.ac0_compile import (BlockStructure, CompileError, JuntaError, Layer1Blocks,
                                  _Ctx, activation_table, block_diagonalize, compile_depth3_output,
                                  compile_junta, compile_separable, compile_sep_combination,
                                  dnf_and, dnf_fold, dnf_table, exact_output, junta_dnf,
                                  layer2_small_dnf, output_oracle, reflected_output,
                                  sep_combination_dnf, verify_compilation)
from qactools.boolfn import And, Const, Lit, truth_table
from qactools.circuit_ir import (MINUS, ONE, PLUS, ZERO, ReflectionCircuit, ReflectionGate,
                                 cnot_gate, haar_state, random_circuit)
from qactools.statevec import (Complement, Identity, SepRank1, Tensor, all_inputs, gate_matrix,
                               projector_matrix)


def worked():
    return ReflectionCircuit(1, 1, (ONE,), ((ReflectionGate((0, 1), (ONE, ONE)),),), 1, (ZERO, ONE))


def depth1(n, a, seed, width=3):
    return random_circuit(n, a, 1, width, cleaned_up=True, seed=seed)


def test_dnf_algebra():
    assert dnf_fold([((0, False),), ((0, False),), None]) == [((0, False),)]
    assert dnf_fold([((1, True),), ()]) == [()]
    assert dnf_and([()], [((2, False),)]) == [((2, False),)]
    assert dnf_and([((0, False),)], [((0, True),)]) == []
    assert list(dnf_table([], 2)) == [0, 0, 0, 0]
    assert list(dnf_table([()], 1)) == [1, 1]


def test_worked_example_junta():
    c = worked()
    # input-qubit reading gives x0; the ancilla reads 1 on both inputs
    assert compile_junta(c, SepRank1((0,), (ONE,))) == Lit(0)
    assert compile_junta(c, SepRank1((1,), (ONE,))) == Const(1)
    cn = ReflectionCircuit(1, 1, (ZERO,), ((cnot_gate(0, 1),),), 1, (ZERO, ONE))
    assert compile_junta(cn, SepRank1((1,), (ONE,))) == Lit(0)


def test_junta_width_check():
    c = depth1(4, 2, 3, width=1)
    proj = SepRank1((0, 1, 2), (ONE, ONE, ONE))
    with pytest.raises(JuntaError):
        junta_dnf(c, proj, k=2)
    assert junta_dnf(c, proj, k=3).prefold <= 2 ** 3


@given(seed=st.integers(0, 10 ** 6))
def test_junta_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    c = depth1(4, 3, seed)
    qs = sorted(rng.choice(c.n_qubits, size=int(rng.integers(1, 4)), replace=False).tolist())
    proj = SepRank1(tuple(qs), tuple(haar_state(rng) for _ in qs))
    if rng.random() < 0.5:
        proj = Complement(proj)
    comp = junta_dnf(c, proj)
    assert comp.prefold <= comp.bound
    assert np.array_equal(dnf_table(comp.dnf, 4), activation_table(c, proj))


def test_separable_identity_and_literals():
    c = ReflectionCircuit(2, 1, (PLUS,), ((ReflectionGate((0, 2), (ONE, MINUS)),),))
    bs = BlockStructure.from_circuit(c)
    assert compile_separable(c, bs, {1: Identity(), 2: Identity()}) == Const(1)
    # block of input 0 = qubits {0, 2}; input 1 alone
    f = compile_separable(c, bs, {1: SepRank1((0,), (ONE,)), 2: SepRank1((1,), (ZERO,))})
    assert f == And((Lit(0), Lit(1, True)))
    tab = truth_table(f, 2).values
    proj = Tensor((SepRank1((0,), (ONE,)), SepRank1((1,), (ZERO,))))
    assert np.array_equal(tab, activation_table(c, proj))
    with pytest.raises(CompileError):
        compile_separable(c, bs, {2: SepRank1((0,), (ONE,))})


def test_separable_complemented_form():
    # activation of I - (x)_k Pi_k on a product state is the OR of the per-block complements
    c = depth1(3, 2, 7)
    bs = BlockStructure.from_circuit(c)
    per = {k + 1: SepRank1((k,), (PLUS,)) for k in range(3)}
    b = truth_table(compile_separable(c, bs, per, complemented=True), 3).values
    assert np.array_equal(b, activation_table(c, Complement(Tensor(tuple(per.values())))))


def test_sep_combination_k0_is_theta0():
    c = depth1(3, 2, 11)
    t0 = SepRank1((0, 3), (ONE, PLUS))
    a = compile_sep_combination(c, t0, [])
    assert np.array_equal(truth_table(a, 3).values, activation_table(c, t0))


@given(seed=st.integers(0, 10 ** 6), n=st.integers(1, 5))
def test_sep_combination_single_factor(seed, n):
    rng = np.random.default_rng(seed)
    c = depth1(n, 3, seed)
    qs = sorted(rng.choice(c.n_qubits, size=int(rng.integers(1, 4)), replace=False).tolist())
    th = SepRank1(tuple(qs), tuple(haar_state(rng) for _ in qs))
    comp = sep_combination_dnf(c, None, [th])
    assert comp.prefold <= n + 1
    assert np.array_equal(dnf_table(comp.dnf, n), activation_table(c, Complement(th)))


def layer2_fixture():
    g1 = [ReflectionGate((0, 3), (ONE, MINUS)), ReflectionGate((1, 4), (PLUS, PLUS))]
    g2 = [ReflectionGate((3, 4), (ONE, haar_state(np.random.default_rng(1))))]
    return ReflectionCircuit(3, 2, (ZERO, PLUS), (tuple(g1), tuple(g2)))


def test_layer2_k0_and_k1():
    c = layer2_fixture()
    assert layer2_small_dnf(c, SepRank1((2,), (ONE,))).dnf == [((2, False),)]
    proj = SepRank1((3,), (ONE,))
    comp = layer2_small_dnf(c, proj)
    assert comp.prefold <= comp.bound
    assert np.array_equal(dnf_table(comp.dnf, 3), activation_table(c, proj))


@given(seed=st.integers(0, 10 ** 6))
def test_layer2_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    c = random_circuit(4, 3, 2, 3, cleaned_up=True, seed=seed, max_gates=6)
    qs = sorted(rng.choice(c.n_qubits, size=int(rng.integers(1, 3)), replace=False).tolist())
    proj = SepRank1(tuple(qs), tuple(haar_state(rng) for _ in qs))
    comp = layer2_small_dnf(c, proj)
    assert comp.prefold <= comp.bound
    assert np.array_equal(dnf_table(comp.dnf, 4), activation_table(c, proj))


def test_y_branches_commute_with_layer2():
    for seed in range(5):
        c = random_circuit(3, 4, 2, 3, cleaned_up=True, seed=seed)
        if not c.layers[1]:
            continue
        proj = SepRank1((c.layers[1][0].qubits[0],), (PLUS,))
        branches, _, _ = block_diagonalize(c, proj, Layer1Blocks(c, _Ctx()))
        L2 = gate_matrix(c.layers[1], c.n_qubits)
        for br in branches:
            Q = projector_matrix(br.Q(), c.n_qubits)
            assert np.abs(Q @ L2 - L2 @ Q).max() <= 1e-10


def test_depth1_as_degenerate_depth3():
    c = ReflectionCircuit(1, 1, (ZERO,), ((cnot_gate(0, 1),),), 1, (ZERO, ONE))
    rep = compile_depth3_output(c)
    assert rep.bool_circuit == Lit(0)
    assert rep.ok and rep.mismatches == []


def test_compile_rejects_uncleaned_and_deep():
    g = ReflectionGate((0, 1), (ONE, ONE))
    with pytest.raises(CompileError):
        compile_depth3_output(ReflectionCircuit(2, 0, (), ((g,),), 0, (ZERO, ONE)))
    c = random_circuit(2, 2, 4, 2, cleaned_up=True, seed=0)
    with pytest.raises(CompileError):
        compile_depth3_output(c)
    with pytest.raises(CompileError):
        compile_depth3_output(random_circuit(2, 2, 3, 2, cleaned_up=True, seed=0, output=None))


def test_case_split_second_branch():
    # whenever the controls sit on the axis, the compiled bit is the reflected-mu1 activation
    checked = 0
    for seed in range(40):
        c = random_circuit(3, 3, 3, 3, cleaned_up=True, seed=seed, pool="classical")
        rep = compile_depth3_output(c, verify=False)
        tab = truth_table(rep.bool_circuit, 3).values
        for k, x in enumerate(all_inputs(3)):
            _, _, norms = output_oracle(c, x)
            if "A" in norms and norms["A"] <= 1e-9:
                assert tab[k] == int(norms["M"] > 1e-9)
                checked += 1
    assert checked > 0


def test_reflected_output():
    assert np.allclose(reflected_output(ONE, ONE).vector, -ONE.vector)
    assert np.allclose(reflected_output(ONE, ZERO).vector, ZERO.vector)


@given(seed=st.integers(0, 10 ** 6), pool=st.sampled_from(["mixed", "classical", "haar"]))
def test_depth3_compilation_matches_oracle(seed, pool):
    c = random_circuit(4, 4, 3, 3, cleaned_up=True, seed=seed, pool=pool, max_gates=8)
    rep = compile_depth3_output(c)
    assert rep.ok, rep.to_dict()
    assert rep.measured_depth <= 3
    assert rep.prefold_size <= rep.declared_bound


def test_verify_reports_mismatch():
    c = ReflectionCircuit(1, 1, (ZERO,), ((cnot_gate(0, 1),),), 1, (ZERO, ONE))
    assert verify_compilation(c, Lit(0))["mismatches"] == []
    assert verify_compilation(c, Lit(0, True))["mismatches"] == [(0,), (1,)]
    assert exact_output(c, (1,)) == 1
    plus_out = c.with_output(1, (PLUS, MINUS))
    assert exact_output(plus_out, (0,)) is None


def test_report_dict_round_trip():
    rep = compile_depth3_output(random_circuit(3, 3, 3, 2, cleaned_up=True, seed=4))
    d = rep.to_dict()
    assert d["ok"] == rep.ok and d["measured_size"] == rep.measured_size
    assert d["stages"][-1]["stage"] == "depth3_assembly"

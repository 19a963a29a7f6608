"""Clean-up pass: make every layer-1 gate hold at most one input qubit.

Two-input gates lose their lower input to a balanced classical fixing.  For a
gate with three or more inputs, its two lowest inputs are put into a state
alpha|01> + beta|10> orthogonal to the gate's axis on those qubits, which
switches the gate off; the pair is prepared by a CNOT from product ancillae
|mu>|1> with |mu> = alpha|0> + beta|1>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit_ir import (BASIS, ONE, CircuitError, ReflectionCircuit, ReflectionGate,
                         SingleQubitState, cnot_gate, remap_circuit)
from .statevec import SIM_CAP, accept_prob, all_inputs, equal_up_to_phase, run

MODES = ("PARITY", "MAJORITY", "STRUCTURAL")


@dataclass(frozen=True)
class QuantumPair:
    gate_id: int
    pair: tuple
    alpha: complex
    beta: complex


@dataclass(frozen=True)
class CleanupResult:
    circuit: ReflectionCircuit
    survivors: tuple
    classical_fixed: dict
    quantum_pairs: tuple
    parity_flip: int
    mode: str = "STRUCTURAL"
    qubit_order: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "survivors": list(self.survivors),
            "classical_fixed": {str(k): v for k, v in sorted(self.classical_fixed.items())},
            "quantum_pairs": [{"gate_id": p.gate_id, "pair": list(p.pair),
                               "alpha": [p.alpha.real, p.alpha.imag],
                               "beta": [p.beta.real, p.beta.imag]} for p in self.quantum_pairs],
            "parity_flip": self.parity_flip,
            "qubit_order": list(self.qubit_order),
        }


def quantum_restriction_coeffs(gate: ReflectionGate, i: int, j: int) -> tuple[complex, complex]:
    """(alpha, beta) with <v_ij| (alpha|01> + beta|10>) = 0."""
    if i == j or i not in gate.qubits or j not in gate.qubits:
        raise CircuitError(f"qubits {i}, {j} are not two distinct qubits of the gate")
    ti, tj = gate.theta(i), gate.theta(j)
    a = ti.amplitude1.conjugate() * tj.amplitude0.conjugate()  # <v|10>
    b = ti.amplitude0.conjugate() * tj.amplitude1.conjugate()  # <v|01>
    nrm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    if nrm < 1e-15:
        return 1 + 0j, 0j
    return complex(a / nrm), complex(-b / nrm)


def pair_state(alpha: complex, beta: complex) -> np.ndarray:
    """alpha|01> + beta|10> as a 4-vector."""
    return np.array([0, alpha, beta, 0], dtype=complex)


def pair_overlap(gate: ReflectionGate, i: int, j: int, alpha: complex, beta: complex) -> float:
    axis = np.kron(gate.theta(i).vector, gate.theta(j).vector)
    return float(abs(np.vdot(axis, pair_state(alpha, beta))))


def _ceil_third(n: int) -> int:
    return -(-n // 3)


def cleanup(circuit: ReflectionCircuit, mode: str = "STRUCTURAL") -> CleanupResult:
    mode = mode.upper()
    if mode not in MODES:
        raise CircuitError(f"unknown mode {mode!r}")
    n = circuit.n_inputs
    layer1 = circuit.layers[0] if circuit.layers else ()
    fixed: dict[int, int] = {}
    pairs: list[QuantumPair] = []
    two = [gi for gi, g in enumerate(layer1) if len(circuit.gate_inputs(g)) == 2]
    big = [gi for gi, g in enumerate(layer1) if len(circuit.gate_inputs(g)) >= 3]
    for k, gi in enumerate(two):
        fixed[min(circuit.gate_inputs(layer1[gi]))] = k % 2
    for gi in big:
        i, j = sorted(circuit.gate_inputs(layer1[gi]))[:2]
        alpha, beta = quantum_restriction_coeffs(layer1[gi], i, j)
        pairs.append(QuantumPair(gi, (i, j), alpha, beta))
    paired = {q for p in pairs for q in p.pair}
    if mode == "MAJORITY" and len(two) % 2 == 1:
        touched = {q for gi in two + big for q in circuit.gate_inputs(layer1[gi])}
        free = [i for i in range(n) if i not in fixed and i not in paired]
        pool = [i for i in free if i not in touched] or free
        if pool:
            fixed[pool[0]] = 1
    survivors = tuple(i for i in range(n) if i not in fixed and i not in paired)
    order = (list(survivors) + list(range(n, circuit.n_qubits)) + sorted(fixed)
             + [q for p in pairs for q in p.pair])
    new_of_old = {old: new for new, old in enumerate(order)}
    init = list(circuit.ancilla_init) + [BASIS[fixed[i]] for i in sorted(fixed)]
    for p in pairs:
        init += [SingleQubitState(p.alpha, p.beta), ONE]
    big_set = {p.gate_id: p for p in pairs}
    layers = []
    for li, layer in enumerate(circuit.layers):
        new_layer = []
        for gi, g in enumerate(layer):
            if li == 0 and gi in big_set:
                i, j = big_set[gi].pair
                new_layer.append(cnot_gate(new_of_old[i], new_of_old[j]))
            else:
                new_layer.append(g.relabel(new_of_old))
        layers.append(tuple(new_layer))
    oq = None if circuit.output_qubit is None else new_of_old[circuit.output_qubit]
    out = ReflectionCircuit(len(survivors), circuit.n_qubits - len(survivors), tuple(init),
                            tuple(layers), oq, circuit.output_basis)
    flip = (len(pairs) + sum(fixed.values())) % 2
    return CleanupResult(out, survivors, fixed, tuple(pairs), flip, mode, tuple(order))


def oracle_circuit(original: ReflectionCircuit, result: CleanupResult) -> ReflectionCircuit:
    """The original circuit, relabelled like the result, with fixed inputs as
    ancillae and a preparation layer of CNOTs for the quantum pairs."""
    new_of_old = {old: new for new, old in enumerate(result.qubit_order)}
    prep = tuple(cnot_gate(new_of_old[p.pair[0]], new_of_old[p.pair[1]])
                 for p in result.quantum_pairs)
    extra = (prep,) if prep else ()
    return remap_circuit(original, new_of_old, len(result.survivors),
                         result.circuit.ancilla_init, extra)


def verify_cleanup(original: ReflectionCircuit, result: CleanupResult,
                   check_oracle: bool = True) -> dict:
    violations = []
    res = result.circuit
    if not res.is_cleaned_up():
        violations.append("a layer-1 gate still has more than one input qubit")
    need = _ceil_third(original.n_inputs)
    if len(result.survivors) < need:
        violations.append(f"only {len(result.survivors)} survivors, need {need}")
    if res.depth > original.depth:
        violations.append("depth increased")
    layer1 = original.layers[0] if original.layers else ()
    max_overlap = 0.0
    for p in result.quantum_pairs:
        if abs(abs(p.alpha) ** 2 + abs(p.beta) ** 2 - 1) > 1e-10:
            violations.append(f"pair {p.pair}: alpha, beta not normalized")
        ov = pair_overlap(layer1[p.gate_id], p.pair[0], p.pair[1], p.alpha, p.beta)
        max_overlap = max(max_overlap, ov)
        if ov > 1e-10:
            violations.append(f"pair {p.pair}: orthogonality violated (overlap {ov:.3e})")
    oracle_ok = None
    parity_ok = None
    if check_oracle and res.n_qubits <= SIM_CAP:
        ref = oracle_circuit(original, result)
        oracle_ok = all(equal_up_to_phase(run(res, x), run(ref, x))
                        for x in all_inputs(res.n_inputs))
        if not oracle_ok:
            violations.append("transformed circuit differs from the restricted original")
        if result.mode == "PARITY" and original.output_qubit is not None:
            if computes_parity(original):
                parity_ok = all(
                    abs(accept_prob(res, x) - ((sum(x) + result.parity_flip) % 2)) < 1e-9
                    for x in all_inputs(res.n_inputs))
                if not parity_ok:
                    violations.append("output is not PARITY xor parity_flip on survivors")
    return {"ok": not violations, "violations": violations, "survivors": len(result.survivors),
            "required_survivors": need, "max_pair_overlap": max_overlap,
            "oracle_equal": oracle_ok, "parity_ok": parity_ok}


def computes_parity(circuit: ReflectionCircuit, tol: float = 1e-9) -> bool:
    return all(abs(accept_prob(circuit, x) - sum(x) % 2) < tol
               for x in all_inputs(circuit.n_inputs))

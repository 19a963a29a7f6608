"""Reflection-gate circuits in normal form.

A circuit has ``n_inputs`` input qubits (indices ``0..n-1``) followed by
``n_ancillae`` ancillae (indices ``n..n+a-1``), each ancilla prepared in a
single-qubit state.  Every gate is a reflection ``I - 2|v><v|`` about a
product state ``|v>`` on the gate's qubits.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-10
DEFAULT_SIM_CAP = 22


class CircuitError(ValueError):
    pass


class CircuitParseError(CircuitError):
    pass


@dataclass(frozen=True)
class SingleQubitState:
    amplitude0: complex
    amplitude1: complex

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.amplitude0, self.amplitude1], dtype=complex)

    @classmethod
    def from_vector(cls, v) -> "SingleQubitState":
        v = np.asarray(v, dtype=complex)
        return cls(complex(v[0]), complex(v[1]))

    def norm2(self) -> float:
        return abs(self.amplitude0) ** 2 + abs(self.amplitude1) ** 2

    def perp(self) -> "SingleQubitState":
        return SingleQubitState(-self.amplitude1.conjugate(), self.amplitude0.conjugate())

    def inner(self, other: "SingleQubitState") -> complex:
        """<self|other>."""
        return (self.amplitude0.conjugate() * other.amplitude0
                + self.amplitude1.conjugate() * other.amplitude1)

    def equals_up_to_phase(self, other: "SingleQubitState", tol: float = 1e-12) -> bool:
        return abs(abs(self.inner(other)) - 1.0) <= tol

    def is_basis(self, tol: float = 1e-12) -> int | None:
        """Return b if the state is |b> up to phase, else None."""
        if abs(self.amplitude1) <= tol:
            return 0
        if abs(self.amplitude0) <= tol:
            return 1
        return None


_R2 = 1 / math.sqrt(2)
ZERO = SingleQubitState(1, 0)
ONE = SingleQubitState(0, 1)
PLUS = SingleQubitState(_R2, _R2)
MINUS = SingleQubitState(_R2, -_R2)
PLUS_I = SingleQubitState(_R2, 1j * _R2)
MINUS_I = SingleQubitState(_R2, -1j * _R2)
BASIS = (ZERO, ONE)


def haar_state(rng: np.random.Generator) -> SingleQubitState:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    return SingleQubitState.from_vector(v)


@dataclass(frozen=True)
class ReflectionGate:
    """G(S) = I - 2|v><v|_S with |v> the tensor product of ``states``."""

    qubits: tuple[int, ...]
    states: tuple[SingleQubitState, ...]

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "states", tuple(self.states))

    @classmethod
    def from_map(cls, states: dict) -> "ReflectionGate":
        qs = sorted(states)
        return cls(tuple(qs), tuple(states[q] for q in qs))

    def theta(self, q: int) -> SingleQubitState:
        return self.states[self.qubits.index(q)]

    def state_map(self) -> dict:
        return dict(zip(self.qubits, self.states))

    def vector(self) -> np.ndarray:
        v = np.ones(1, dtype=complex)
        for s in self.states:
            v = np.kron(v, s.vector)
        return v

    def restricted(self, keep) -> "ReflectionGate":
        keep = set(keep)
        pairs = [(q, s) for q, s in zip(self.qubits, self.states) if q in keep]
        return ReflectionGate(tuple(q for q, _ in pairs), tuple(s for _, s in pairs))

    def relabel(self, mapping: dict) -> "ReflectionGate":
        return ReflectionGate(tuple(mapping[q] for q in self.qubits), self.states)


def cnot_gate(control: int, target: int) -> ReflectionGate:
    """CNOT as the reflection I - 2|1><1| (x) |-><-|."""
    return ReflectionGate((control, target), (ONE, MINUS))


@dataclass(frozen=True)
class ReflectionCircuit:
    n_inputs: int
    n_ancillae: int
    ancilla_init: tuple[SingleQubitState, ...] = ()
    layers: tuple[tuple[ReflectionGate, ...], ...] = ()
    output_qubit: int | None = None
    output_basis: tuple[SingleQubitState, SingleQubitState] | None = None

    def __post_init__(self):
        init = tuple(self.ancilla_init)
        if not init and self.n_ancillae:
            init = (ZERO,) * self.n_ancillae
        object.__setattr__(self, "ancilla_init", init)
        object.__setattr__(self, "layers", tuple(tuple(layer) for layer in self.layers))
        if self.output_basis is not None:
            object.__setattr__(self, "output_basis", tuple(self.output_basis))

    @property
    def n_qubits(self) -> int:
        return self.n_inputs + self.n_ancillae

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def n_gates(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def is_input(self, q: int) -> bool:
        return q < self.n_inputs

    def init_state(self, q: int) -> SingleQubitState:
        return self.ancilla_init[q - self.n_inputs]

    def gate_inputs(self, gate: ReflectionGate) -> list[int]:
        return [q for q in gate.qubits if q < self.n_inputs]

    def is_cleaned_up(self) -> bool:
        if not self.layers:
            return True
        return all(len(self.gate_inputs(g)) <= 1 for g in self.layers[0])

    def gate_on(self, layer: int, q: int) -> ReflectionGate | None:
        for g in self.layers[layer]:
            if q in g.qubits:
                return g
        return None

    def with_layers(self, layers) -> "ReflectionCircuit":
        return ReflectionCircuit(self.n_inputs, self.n_ancillae, self.ancilla_init,
                                 layers, self.output_qubit, self.output_basis)

    def with_output(self, qubit, basis=(ZERO, ONE)) -> "ReflectionCircuit":
        return ReflectionCircuit(self.n_inputs, self.n_ancillae, self.ancilla_init,
                                 self.layers, qubit, basis)

    def content_hash(self) -> str:
        return hashlib.sha256(serialize(self).encode()).hexdigest()


@dataclass(frozen=True)
class ClassicalRestriction:
    assignments: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "assignments",
                           {int(i): int(b) for i, b in dict(self.assignments).items()})


# ---------------------------------------------------------------- validation

def validate(circuit: ReflectionCircuit) -> list[str]:
    """Return a list of human-readable violations (empty means valid)."""
    out = []
    nq = circuit.n_qubits
    if circuit.n_inputs < 0 or circuit.n_ancillae < 0:
        out.append("negative qubit count")
    if len(circuit.ancilla_init) != circuit.n_ancillae:
        out.append(f"ancilla_init has {len(circuit.ancilla_init)} entries, "
                   f"expected {circuit.n_ancillae}")
    for a, s in enumerate(circuit.ancilla_init):
        if abs(s.norm2() - 1) > NORM_TOL:
            out.append(f"ancilla {circuit.n_inputs + a}: init state not normalized")
    for li, layer in enumerate(circuit.layers):
        seen = {}
        for gi, g in enumerate(layer):
            loc = f"layer {li} gate {gi}"
            if len(g.qubits) < 1:
                out.append(f"{loc}: empty gate")
            if len(g.qubits) != len(g.states):
                out.append(f"{loc}: {len(g.qubits)} qubits but {len(g.states)} states")
            if len(set(g.qubits)) != len(g.qubits):
                out.append(f"{loc}: repeated qubit")
            for q in g.qubits:
                if not 0 <= q < nq:
                    out.append(f"{loc}: qubit {q} out of range")
                if q in seen:
                    out.append(f"{loc}: layer disjointness violated on qubit {q} "
                               f"(also in gate {seen[q]})")
                seen[q] = gi
            for q, s in zip(g.qubits, g.states):
                if abs(s.norm2() - 1) > NORM_TOL:
                    out.append(f"{loc}: state on qubit {q} not normalized")
    if circuit.output_qubit is not None:
        if not 0 <= circuit.output_qubit < nq:
            out.append(f"output qubit {circuit.output_qubit} out of range")
        if circuit.output_basis is None:
            out.append("output qubit without output basis")
    if circuit.output_basis is not None:
        m0, m1 = circuit.output_basis
        for name, m in (("mu0", m0), ("mu1", m1)):
            if abs(m.norm2() - 1) > NORM_TOL:
                out.append(f"output basis {name} not normalized")
        if abs(m0.inner(m1)) > NORM_TOL:
            out.append("output basis not orthogonal")
    return out


def check_valid(circuit: ReflectionCircuit) -> None:
    problems = validate(circuit)
    if problems:
        raise CircuitError("; ".join(problems))


# ------------------------------------------------------------- serialization

def _c(z: complex) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _s(s: SingleQubitState) -> list:
    return [_c(s.amplitude0), _c(s.amplitude1)]


def to_dict(circuit: ReflectionCircuit) -> dict:
    return {
        "n_inputs": circuit.n_inputs,
        "n_ancillae": circuit.n_ancillae,
        "ancilla_init": [_s(s) for s in circuit.ancilla_init],
        "layers": [[{"qubits": list(g.qubits), "states": [_s(s) for s in g.states]}
                    for g in layer] for layer in circuit.layers],
        "output_qubit": circuit.output_qubit,
        "output_basis": None if circuit.output_basis is None
        else [_s(s) for s in circuit.output_basis],
    }


def serialize(circuit: ReflectionCircuit, indent: int | None = None) -> str:
    # json writes floats with repr, which round-trips exactly
    return json.dumps(to_dict(circuit), indent=indent, sort_keys=True)


def _need(d: dict, key: str, path: str):
    if not isinstance(d, dict):
        raise CircuitParseError(f"{path}: expected an object")
    if key not in d:
        raise CircuitParseError(f"missing field '{key}' at {path}")
    return d[key]


def _parse_complex(v, path: str) -> complex:
    if (isinstance(v, (list, tuple)) and len(v) == 2
            and all(isinstance(t, (int, float)) for t in v)):
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, (int, float)):
        return complex(v)
    raise CircuitParseError(f"{path}: expected [re, im] pair")


def _parse_state(v, path: str) -> SingleQubitState:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise CircuitParseError(f"{path}: expected a pair of amplitudes")
    return SingleQubitState(_parse_complex(v[0], path + "[0]"),
                            _parse_complex(v[1], path + "[1]"))


def from_dict(d: dict) -> ReflectionCircuit:
    n = _need(d, "n_inputs", "$")
    a = _need(d, "n_ancillae", "$")
    if not isinstance(n, int) or not isinstance(a, int):
        raise CircuitParseError("$: n_inputs and n_ancillae must be integers")
    raw_init = _need(d, "ancilla_init", "$")
    if isinstance(raw_init, dict):
        raw_init = [raw_init[k] for k in sorted(raw_init, key=int)]
    init = tuple(_parse_state(s, f"$.ancilla_init[{i}]") for i, s in enumerate(raw_init))
    layers = []
    for li, layer in enumerate(_need(d, "layers", "$")):
        gates = []
        for gi, g in enumerate(layer):
            p = f"$.layers[{li}][{gi}]"
            qs = _need(g, "qubits", p)
            sts = _need(g, "states", p)
            gates.append(ReflectionGate(
                tuple(qs), tuple(_parse_state(s, f"{p}.states[{k}]") for k, s in enumerate(sts))))
        layers.append(tuple(gates))
    oq = _need(d, "output_qubit", "$")
    ob = _need(d, "output_basis", "$")
    basis = None
    if ob is not None:
        if len(ob) != 2:
            raise CircuitParseError("$.output_basis: expected two states")
        basis = (_parse_state(ob[0], "$.output_basis[0]"),
                 _parse_state(ob[1], "$.output_basis[1]"))
    return ReflectionCircuit(n, a, init, tuple(layers), oq, basis)


def parse(text: str) -> ReflectionCircuit:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        keys = re.findall(r'"(\w+)"\s*:', text[:e.pos])
        where = f" while reading field '{keys[-1]}'" if keys else ""
        raise CircuitParseError(
            f"{e.msg} at line {e.lineno} column {e.colno}{where}") from None
    return from_dict(d)


def load(path) -> ReflectionCircuit:
    with open(path) as fh:
        return parse(fh.read())


def dump(circuit: ReflectionCircuit, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(circuit, indent=1))


# ---------------------------------------------------------- transformations

def remap_circuit(circuit: ReflectionCircuit, new_of_old: dict, n_inputs: int,
                  init: tuple, extra_layers_before=()) -> ReflectionCircuit:
    """Relabel qubits; ``init`` lists the states of the new ancillae in order."""
    layers = [tuple(g.relabel(new_of_old) for g in layer) for layer in circuit.layers]
    layers = list(extra_layers_before) + layers
    oq = None if circuit.output_qubit is None else new_of_old[circuit.output_qubit]
    return ReflectionCircuit(n_inputs, circuit.n_qubits - n_inputs, tuple(init),
                             tuple(layers), oq, circuit.output_basis)


def restriction_order(circuit: ReflectionCircuit, restriction: ClassicalRestriction) -> list[int]:
    """Old qubit index of each new qubit after :func:`restrict_classical`."""
    fixed = sorted(restriction.assignments)
    live = [i for i in range(circuit.n_inputs) if i not in restriction.assignments]
    return live + list(range(circuit.n_inputs, circuit.n_qubits)) + fixed


def restrict_classical(circuit: ReflectionCircuit,
                       restriction: ClassicalRestriction) -> ReflectionCircuit:
    """Fix some inputs to bits, turning them into ancillae.

    Survivors keep their relative order at indices ``0..n'-1``; the original
    ancillae follow, then the fixed inputs in ascending index order.
    """
    for i, b in restriction.assignments.items():
        if not 0 <= i < circuit.n_inputs:
            raise CircuitError(f"restriction index {i} is not an input")
        if b not in (0, 1):
            raise CircuitError(f"restriction value {b} is not a bit")
    if not restriction.assignments:
        return circuit
    order = restriction_order(circuit, restriction)
    new_of_old = {old: new for new, old in enumerate(order)}
    n_live = circuit.n_inputs - len(restriction.assignments)
    init = list(circuit.ancilla_init) + [BASIS[restriction.assignments[i]]
                                         for i in sorted(restriction.assignments)]
    return remap_circuit(circuit, new_of_old, n_live, tuple(init))


def merge_input(x_live, restriction: ClassicalRestriction, n: int) -> tuple:
    """Full input vector from survivor bits and a restriction."""
    it = iter(x_live)
    return tuple(restriction.assignments[i] if i in restriction.assignments else next(it)
                 for i in range(n))


# ---------------------------------------------------------------- generator

def _pool_state(rng: np.random.Generator, pool: str) -> SingleQubitState:
    if pool == "haar":
        return haar_state(rng)
    if pool == "classical":
        return BASIS[int(rng.integers(2))]
    r = rng.random()
    if r < 0.55:
        return BASIS[int(rng.integers(2))]
    if r < 0.75:
        return (PLUS, MINUS, PLUS_I, MINUS_I)[int(rng.integers(4))]
    return haar_state(rng)


def _gate_states(rng, size: int, pool: str) -> tuple:
    if pool != "classical":
        return tuple(_pool_state(rng, pool) for _ in range(size))
    # multi-controlled X or Z: maps basis states to basis states up to phase
    sts = [BASIS[int(rng.integers(2))] for _ in range(size)]
    if size > 1 and rng.random() < 0.75:
        sts[int(rng.integers(size))] = MINUS if rng.random() < 0.5 else PLUS
    return tuple(sts)


def random_circuit(n_inputs: int, n_ancillae: int, depth: int, max_gate_width: int,
                   cleaned_up: bool = False, seed: int = 0, *, max_gates: int | None = None,
                   pool: str = "mixed", gate_prob: float = 0.8, output: str | None = "last",
                   sim_cap: int = DEFAULT_SIM_CAP) -> ReflectionCircuit:
    """Deterministic random circuit.

    ``pool`` picks gate and init states: ``"mixed"`` (basis, Hadamard-type and
    Haar states), ``"haar"`` or ``"classical"`` (multi-controlled X/Z gates,
    which send basis states to basis states).  ``output="last"`` puts the
    output qubit inside a gate of the last layer when possible.
    """
    nq = n_inputs + n_ancillae
    if n_inputs < 0 or n_ancillae < 0 or depth < 0 or max_gate_width < 1 or nq < 1:
        raise CircuitError("infeasible parameters: counts must be non-negative, width >= 1")
    if nq > sim_cap:
        raise CircuitError(f"{nq} qubits exceed the simulator cap {sim_cap}")
    rng = np.random.default_rng(seed)
    budget = math.inf if max_gates is None else max_gates
    layers = []
    for layer_idx in range(depth):
        order = [int(q) for q in rng.permutation(nq)]
        gates = []
        if layer_idx == 0 and cleaned_up:
            inputs = [q for q in order if q < n_inputs]
            ancs = [q for q in order if q >= n_inputs]
            groups = [[i] for i in inputs]
            for a in ancs:
                choice = int(rng.integers(len(groups) + 1))
                if choice == len(groups):
                    groups.append([a])
                elif len(groups[choice]) < max_gate_width:
                    groups[choice].append(a)
                else:
                    groups.append([a])
        else:
            groups, pos = [], 0
            while pos < nq:
                w = int(rng.integers(1, max_gate_width + 1))
                groups.append(order[pos:pos + w])
                pos += w
        for grp in groups:
            if budget <= 0:
                break
            if rng.random() >= gate_prob:
                continue
            grp = sorted(grp)
            gates.append(ReflectionGate(tuple(grp), _gate_states(rng, len(grp), pool)))
            budget -= 1
        layers.append(tuple(gates))
    init_pool = "classical" if pool == "classical" else pool
    init = tuple(_pool_state(rng, init_pool) for _ in range(n_ancillae))
    circuit = ReflectionCircuit(n_inputs, n_ancillae, init, tuple(layers))
    if output is None:
        return circuit
    candidates = []
    if output == "last":
        for layer in reversed(layers):
            if layer:
                candidates = sorted(q for g in layer for q in g.qubits)
                break
    if not candidates:
        candidates = list(range(nq))
    t = candidates[int(rng.integers(len(candidates)))]
    if pool == "classical" or rng.random() < 0.6:
        basis = (ZERO, ONE)
    else:
        m = haar_state(rng)
        basis = (m, m.perp())
    return circuit.with_output(t, basis)

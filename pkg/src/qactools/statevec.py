"""Dense statevector simulation and the projector algebra used by activations.

Amplitudes are stored big-endian: qubit 0 is the most significant bit of the
basis index, so ``amplitudes.reshape([2] * n)`` has axis ``q`` for qubit ``q``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

import numpy as np

from .circuit_ir import (BASIS, DEFAULT_SIM_CAP, CircuitError, ReflectionCircuit,
                         ReflectionGate, SingleQubitState)

DEFAULT_TOL = float(os.environ.get("QAC_TOL", "1e-9"))
SIM_CAP = int(os.environ.get("QAC_SIM_CAP", str(DEFAULT_SIM_CAP)))
DENSITY_CAP = 10
AMBIGUOUS_BAND = (1e-12, 1e-6)


class SimulationError(ValueError):
    pass


def in_band(value: float, band=AMBIGUOUS_BAND) -> bool:
    return band[0] <= value <= band[1]


@dataclass(frozen=True, eq=False)
class DenseState:
    n_qubits: int
    amplitudes: np.ndarray
    normalized: bool = True

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n_qubits)

    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def normalize(self) -> "DenseState":
        nrm = np.sqrt(self.norm2())
        if nrm == 0:
            raise SimulationError("cannot normalize the zero vector")
        return DenseState(self.n_qubits, self.amplitudes / nrm, True)

    def dump(self, tol: float = 1e-12) -> str:
        lines = []
        for idx in np.flatnonzero(np.abs(self.amplitudes) > tol):
            z = self.amplitudes[idx]
            lines.append(f"|{idx:0{self.n_qubits}b}> {z.real:+.12f}{z.imag:+.12f}j")
        return "\n".join(lines)


def _wrap(t: np.ndarray, n: int, normalized: bool) -> DenseState:
    return DenseState(n, t.reshape(-1), normalized)


def product_state(states) -> DenseState:
    v = np.ones(1, dtype=complex)
    for s in states:
        v = np.kron(v, s.vector if isinstance(s, SingleQubitState) else np.asarray(s, complex))
    return DenseState(int(round(np.log2(len(v)))), v)


def basis_state(bits) -> DenseState:
    return product_state([BASIS[int(b)] for b in bits])


def initial_state(circuit: ReflectionCircuit, x) -> DenseState:
    x = tuple(int(b) for b in x)
    if len(x) != circuit.n_inputs:
        raise SimulationError(f"input has {len(x)} bits, circuit expects {circuit.n_inputs}")
    if circuit.n_qubits > SIM_CAP:
        raise SimulationError(f"{circuit.n_qubits} qubits exceed the simulator cap {SIM_CAP}")
    return product_state([BASIS[b] for b in x] + list(circuit.ancilla_init))


# ----------------------------------------------------------- rank-1 helpers

def _overlap(t: np.ndarray, qubits, vecs) -> np.ndarray:
    """Contract <v|_S against the tensor; remaining axes keep their order."""
    pairs = sorted(zip(qubits, vecs), key=lambda p: -p[0])
    for q, v in pairs:
        t = np.tensordot(np.conj(v), t, axes=([0], [q]))
    return t


def _embed(ov: np.ndarray, qubits, vecs) -> np.ndarray:
    """Inverse of ``_overlap``: |v>_S (x) ov with axes reinserted."""
    out = ov
    for q, v in sorted(zip(qubits, vecs)):
        out = np.expand_dims(out, q)
        shape = [1] * out.ndim
        shape[q] = 2
        out = out * np.asarray(v).reshape(shape)
    return out


def _check_range(qubits, n):
    for q in qubits:
        if not 0 <= q < n:
            raise SimulationError(f"qubit {q} out of range for {n}-qubit state")


def apply_reflection(state: DenseState, gate: ReflectionGate) -> DenseState:
    _check_range(gate.qubits, state.n_qubits)
    t = state.tensor()
    vecs = [s.vector for s in gate.states]
    ov = _overlap(t, gate.qubits, vecs)
    return _wrap(t - 2 * _embed(ov, gate.qubits, vecs), state.n_qubits, state.normalized)


def apply_layers(state: DenseState, layers) -> DenseState:
    for layer in layers:
        for g in layer:
            state = apply_reflection(state, g)
    return state


def run(circuit: ReflectionCircuit, x, n_layers: int | None = None) -> DenseState:
    """C(x); ``n_layers`` truncates the circuit to its first layers."""
    layers = circuit.layers if n_layers is None else circuit.layers[:n_layers]
    return apply_layers(initial_state(circuit, x), layers)


def output_projector(circuit: ReflectionCircuit, b: int = 1) -> "SepRank1":
    if circuit.output_qubit is None or circuit.output_basis is None:
        raise CircuitError("circuit has no output declaration")
    return SepRank1((circuit.output_qubit,), (circuit.output_basis[b],))


def accept_prob(circuit: ReflectionCircuit, x) -> float:
    return apply_projector(run(circuit, x), output_projector(circuit, 1)).norm2()


def all_inputs(n: int):
    """All x in {0,1}^n, as tuples, in the order used by truth tables."""
    for k in range(2 ** n):
        yield tuple((k >> i) & 1 for i in range(n))


def acceptance_table(circuit: ReflectionCircuit) -> np.ndarray:
    """f_C(x) for every x; entry k holds x with x_i = bit i of k."""
    return np.array([accept_prob(circuit, x) for x in all_inputs(circuit.n_inputs)])


# --------------------------------------------------------------- projectors

class ProjectorExpr:
    def support(self) -> frozenset:
        raise NotImplementedError

    def relabel(self, mapping: dict) -> "ProjectorExpr":
        raise NotImplementedError

    def _apply(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class Identity(ProjectorExpr):
    qubits: tuple = ()

    def support(self):
        return frozenset(self.qubits)

    def relabel(self, mapping):
        return Identity(tuple(mapping[q] for q in self.qubits))

    def _apply(self, t):
        return t


@dataclass(frozen=True)
class Zero(ProjectorExpr):
    qubits: tuple = ()

    def support(self):
        return frozenset(self.qubits)

    def relabel(self, mapping):
        return Zero(tuple(mapping[q] for q in self.qubits))

    def _apply(self, t):
        return np.zeros_like(t)


@dataclass(frozen=True)
class SepRank1(ProjectorExpr):
    """|v><v|_S for a product state |v>.  An empty S is the scalar 1."""

    qubits: tuple
    states: tuple

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "states", tuple(self.states))
        if len(self.qubits) != len(self.states):
            raise SimulationError("SepRank1 needs one state per qubit")

    @classmethod
    def from_gate(cls, gate: ReflectionGate, qubits=None) -> "SepRank1":
        if qubits is None:
            return cls(gate.qubits, gate.states)
        qs = [q for q in gate.qubits if q in set(qubits)]
        return cls(tuple(qs), tuple(gate.theta(q) for q in qs))

    def support(self):
        return frozenset(self.qubits)

    def relabel(self, mapping):
        return SepRank1(tuple(mapping[q] for q in self.qubits), self.states)

    def restricted(self, keep) -> "SepRank1":
        keep = set(keep)
        pairs = [(q, s) for q, s in zip(self.qubits, self.states) if q in keep]
        return SepRank1(tuple(q for q, _ in pairs), tuple(s for _, s in pairs))

    def _apply(self, t):
        if not self.qubits:
            return t
        vecs = [s.vector for s in self.states]
        return _embed(_overlap(t, self.qubits, vecs), self.qubits, vecs)


@dataclass(frozen=True)
class Complement(ProjectorExpr):
    child: ProjectorExpr

    def support(self):
        return self.child.support()

    def relabel(self, mapping):
        return Complement(self.child.relabel(mapping))

    def _apply(self, t):
        return t - self.child._apply(t)


@dataclass(frozen=True)
class Tensor(ProjectorExpr):
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        seen = set()
        for c in self.children:
            s = c.support()
            if seen & s:
                raise SimulationError(f"Tensor children overlap on qubits {sorted(seen & s)}")
            seen |= s

    def support(self):
        out = frozenset()
        for c in self.children:
            out |= c.support()
        return out

    def relabel(self, mapping):
        return Tensor(tuple(c.relabel(mapping) for c in self.children))

    def _apply(self, t):
        for c in self.children:
            t = c._apply(t)
        return t


@dataclass(frozen=True)
class Conjugated(ProjectorExpr):
    """U^dag P U for U a product of disjoint reflection gates."""

    gates: tuple
    child: ProjectorExpr

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    def support(self):
        out = self.child.support()
        for g in self.gates:
            out |= frozenset(g.qubits)
        return out

    def relabel(self, mapping):
        return Conjugated(tuple(g.relabel(mapping) for g in self.gates),
                          self.child.relabel(mapping))

    def _reflect(self, t):
        for g in self.gates:
            vecs = [s.vector for s in g.states]
            t = t - 2 * _embed(_overlap(t, g.qubits, vecs), g.qubits, vecs)
        return t

    def _apply(self, t):
        # reflections are Hermitian and the gates commute
        return self._reflect(self.child._apply(self._reflect(t)))


def apply_projector(state: DenseState, proj: ProjectorExpr) -> DenseState:
    _check_range(proj.support(), state.n_qubits)
    out = proj._apply(state.tensor())
    return _wrap(np.asarray(out, dtype=complex), state.n_qubits, False)


def projected_norm2(circuit: ReflectionCircuit, proj: ProjectorExpr, x,
                    n_layers: int | None = None) -> float:
    return apply_projector(run(circuit, x, n_layers), proj).norm2()


def activation(circuit: ReflectionCircuit, proj: ProjectorExpr, x, tol: float = DEFAULT_TOL,
               n_layers: int | None = None) -> int:
    """[ ||proj C(x)||^2 > tol ]."""
    return int(projected_norm2(circuit, proj, x, n_layers) > tol)


def projector_matrix(proj: ProjectorExpr, n_qubits: int) -> np.ndarray:
    """Dense matrix of a projector tree (small systems only)."""
    dim = 2 ** n_qubits
    eye = np.eye(dim, dtype=complex)
    cols = [proj._apply(eye[:, k].reshape((2,) * n_qubits)).reshape(-1) for k in range(dim)]
    return np.array(cols).T


def gate_matrix(gates, n_qubits: int) -> np.ndarray:
    dim = 2 ** n_qubits
    eye = np.eye(dim, dtype=complex)
    cols = []
    for k in range(dim):
        st = DenseState(n_qubits, eye[:, k])
        for g in gates:
            st = apply_reflection(st, g)
        cols.append(st.amplitudes)
    return np.array(cols).T


# ------------------------------------------------------------ mixed states

@dataclass(frozen=True, eq=False)
class DensityMatrix:
    n_qubits: int
    entries: np.ndarray

    def violations(self, tol: float = 1e-9) -> list[str]:
        out = []
        m = self.entries
        if not np.allclose(m, m.conj().T, atol=tol):
            out.append("not Hermitian")
        if abs(np.trace(m).real - 1) > tol:
            out.append("trace != 1")
        if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -tol:
            out.append("not positive semidefinite")
        return out


def _mat(rho) -> np.ndarray:
    return rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def reduced_density(state: DenseState, qubits) -> DensityMatrix:
    """Partial trace onto ``qubits`` (in the given order)."""
    qubits = [int(q) for q in qubits]
    if len(qubits) > DENSITY_CAP:
        raise SimulationError(f"{len(qubits)} qubits exceed the density cap {DENSITY_CAP}")
    _check_range(qubits, state.n_qubits)
    t = state.tensor()
    rest = [q for q in range(state.n_qubits) if q not in qubits]
    m = np.transpose(t, qubits + rest).reshape(2 ** len(qubits), -1)
    rho = m @ m.conj().T
    tr = np.trace(rho).real
    if tr > 0:
        rho = rho / tr
    return DensityMatrix(len(qubits), rho)


def pure_density(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def trace_distance(rho, sigma) -> float:
    a, b = _mat(rho), _mat(sigma)
    if a.shape != b.shape:
        raise SimulationError(f"dimension mismatch {a.shape} vs {b.shape}")
    d = a - b
    return float(0.5 * np.abs(np.linalg.eigvalsh((d + d.conj().T) / 2)).sum())


def trace_norm(m) -> float:
    return float(np.linalg.svd(_mat(m), compute_uv=False).sum())


def random_density_matrix(n_qubits: int, rng: np.random.Generator,
                          rank: int | None = None) -> np.ndarray:
    dim = 2 ** n_qubits
    r = dim if rank is None else rank
    g = rng.normal(size=(dim, r)) + 1j * rng.normal(size=(dim, r))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def kron_all(mats) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, _mat(m))
    return out


# -------------------------------------------------------------- comparisons

def fidelity(a: DenseState, b: DenseState) -> float:
    """|<a|b>|^2 / (||a||^2 ||b||^2)."""
    na, nb = a.norm2(), b.norm2()
    if na == 0 or nb == 0:
        return 0.0
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2 / (na * nb))


def equal_up_to_phase(a: DenseState, b: DenseState, tol: float = 1e-9) -> bool:
    return fidelity(a, b) >= 1 - tol and abs(a.norm2() - b.norm2()) <= tol


def schmidt_rank(state: DenseState, part, tol: float = 1e-8) -> int:
    part = [int(q) for q in part]
    rest = [q for q in range(state.n_qubits) if q not in part]
    m = np.transpose(state.tensor(), part + rest).reshape(2 ** len(part), -1)
    return int((np.linalg.svd(m, compute_uv=False) > tol).sum())


def cat_state(n: int) -> DenseState:
    v = np.zeros(2 ** n, dtype=complex)
    v[0] = v[-1] = 1 / np.sqrt(2)
    return DenseState(n, v)


def permute_qubits(state: DenseState, order) -> DenseState:
    """New qubit k is old qubit ``order[k]``."""
    t = np.transpose(state.tensor(), list(order))
    return DenseState(state.n_qubits, t.reshape(-1).copy(), state.normalized)


def enumerate_bits(n: int):
    return product((0, 1), repeat=n)

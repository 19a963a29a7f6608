"""Compile activation functions of shallow cleaned-up circuits to AND/OR circuits.

After layer 1 of a cleaned-up circuit the state is a product over layer-1
blocks, each block depending on at most one input bit.  Everything below
reduces activations to per-block evaluations on small light-cone states, and
combines them into DNFs (and one CNF-by-DNF product for the depth-3 output).

Internally a DNF is a list of terms; a term is a sorted tuple of
``(input index, negated)`` pairs.  ``[]`` is false and ``[()]`` is true.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .boolfn import (FALSE, TRUE, And, BoolCircuit, Lit, Or, input_matrix, simplify,
                     truth_table)
from .circuit_ir import ReflectionCircuit, ReflectionGate, SingleQubitState
from .statevec import (DEFAULT_TOL, SIM_CAP, Complement, Conjugated, DenseState,
                       ProjectorExpr, SepRank1, Tensor, all_inputs, apply_projector,
                       in_band, product_state, run)


class CompileError(ValueError):
    pass


class JuntaError(CompileError):
    pass


@dataclass
class _Ctx:
    tol: float = DEFAULT_TOL
    ambiguous: list = field(default_factory=list)

    def decide(self, value: float) -> bool:
        if in_band(value):
            self.ambiguous.append(value)
        return value > self.tol


@dataclass(frozen=True)
class Compiled:
    dnf: list
    prefold: int
    bound: float
    k: int

    @property
    def bool_circuit(self) -> BoolCircuit:
        return dnf_to_circuit(self.dnf)


# ------------------------------------------------------------- DNF algebra

def _merge(a: tuple, b: tuple):
    d = dict(a)
    for i, neg in b:
        if d.get(i, neg) != neg:
            return None
        d[i] = neg
    return tuple(sorted(d.items()))


def dnf_fold(terms) -> list:
    out, seen = [], set()
    for t in terms:
        if t is None or t in seen:
            continue
        if t == ():
            return [()]
        seen.add(t)
        out.append(t)
    return out


def dnf_and(a: list, b: list) -> list:
    return dnf_fold(_merge(s, t) for s in a for t in b)


def _term_circuit(t: tuple) -> BoolCircuit:
    if not t:
        return TRUE
    return And(tuple(Lit(i, neg) for i, neg in t))


def dnf_to_circuit(dnf: list) -> BoolCircuit:
    if not dnf:
        return FALSE
    return simplify(Or(tuple(_term_circuit(t) for t in dnf)))


def _eval_dnf(dnf: list, X: np.ndarray) -> np.ndarray:
    out = np.zeros(X.shape[0], dtype=bool)
    for t in dnf:
        v = np.ones(X.shape[0], dtype=bool)
        for i, neg in t:
            v &= (X[:, i] == 0) if neg else (X[:, i] == 1)
        out |= v
    return out


# ---------------------------------------------------------- block structure

class Layer1Blocks:
    """Product structure of the state after layer 1."""

    def __init__(self, circuit: ReflectionCircuit, ctx: _Ctx):
        self.circuit = circuit
        self.ctx = ctx
        self.block_of: dict[int, int] = {}
        self.blocks: list[tuple] = []
        self.gates: list = []
        layer = circuit.layers[0] if circuit.layers else ()
        for g in layer:
            for q in g.qubits:
                self.block_of[q] = len(self.blocks)
            self.blocks.append(tuple(g.qubits))
            self.gates.append(g)
        for q in range(circuit.n_qubits):
            if q not in self.block_of:
                self.block_of[q] = len(self.blocks)
                self.blocks.append((q,))
                self.gates.append(None)
        self.input_of = []
        for qs in self.blocks:
            ins = [q for q in qs if q < circuit.n_inputs]
            if len(ins) > 1:
                raise CompileError("circuit is not cleaned up: a layer-1 gate has "
                                   f"inputs {ins}")
            self.input_of.append(ins[0] if ins else None)
        self._cache: dict = {}

    def counts_as_gate(self, bid: int) -> bool:
        return self.gates[bid] is not None or self.input_of[bid] is not None

    def block_vector(self, bid: int, bit: int) -> np.ndarray:
        key = (bid, bit if self.input_of[bid] is not None else 0)
        if key not in self._cache:
            qs = self.blocks[bid]
            sts = []
            for q in qs:
                if q < self.circuit.n_inputs:
                    sts.append(SingleQubitState(1 - bit, bit))
                else:
                    sts.append(self.circuit.init_state(q))
            st = product_state(sts)
            g = self.gates[bid]
            if g is not None:
                local = {q: k for k, q in enumerate(qs)}
                from .statevec import apply_reflection
                st = apply_reflection(st, g.relabel(local))
            self._cache[key] = st.amplitudes
        return self._cache[key]

    def light_cone(self, proj: ProjectorExpr) -> list[int]:
        return sorted({self.block_of[q] for q in proj.support()})

    def norm2(self, proj: ProjectorExpr, assignment: dict) -> float:
        bids = self.light_cone(proj)
        if not bids:
            return apply_projector(DenseState(0, np.ones(1, complex)), proj).norm2()
        qubits = [q for b in bids for q in self.blocks[b]]
        local = {q: k for k, q in enumerate(qubits)}
        v = np.ones(1, dtype=complex)
        for b in bids:
            i = self.input_of[b]
            v = np.kron(v, self.block_vector(b, assignment.get(i, 0) if i is not None else 0))
        st = DenseState(len(qubits), v)
        return apply_projector(st, proj.relabel(local)).norm2()

    def activation(self, proj: ProjectorExpr, assignment: dict) -> bool:
        return self.ctx.decide(self.norm2(proj, assignment))


@dataclass(frozen=True)
class BlockStructure:
    """Key 0 is the ancilla block; key i+1 is the layer-1 block of input i."""

    blocks: dict

    @classmethod
    def from_circuit(cls, circuit: ReflectionCircuit) -> "BlockStructure":
        l1 = Layer1Blocks(circuit, _Ctx())
        return cls._from_layer1(l1)

    @classmethod
    def _from_layer1(cls, l1: Layer1Blocks) -> "BlockStructure":
        out = {0: set()}
        for bid, qs in enumerate(l1.blocks):
            i = l1.input_of[bid]
            if i is None:
                out[0] |= set(qs)
            else:
                out[i + 1] = set(qs)
        return cls({k: frozenset(v) for k, v in sorted(out.items())})

    def key_of(self, q: int) -> int:
        for k, qs in self.blocks.items():
            if q in qs:
                return k
        raise KeyError(q)


# ----------------------------------------------------------------- juntas

def _junta(l1: Layer1Blocks, proj: ProjectorExpr, k: int | None) -> Compiled:
    bids = l1.light_cone(proj)
    width = sum(1 for b in bids if l1.counts_as_gate(b))
    if k is not None and width > k:
        raise JuntaError(f"projector touches {width} layer-1 gates, more than k={k}")
    kk = width if k is None else k
    coords = sorted(l1.input_of[b] for b in bids if l1.input_of[b] is not None)
    vals = {}
    for bits in product((0, 1), repeat=len(coords)):
        vals[bits] = l1.activation(proj, dict(zip(coords, bits)))
    relevant = [pos for pos in range(len(coords))
                if any(vals[b] != vals[b[:pos] + (1 - b[pos],) + b[pos + 1:]] for b in vals)]
    terms = []
    for bits in product((0, 1), repeat=len(relevant)):
        full = [0] * len(coords)
        for pos, b in zip(relevant, bits):
            full[pos] = b
        if vals[tuple(full)]:
            terms.append(tuple(sorted((coords[pos], b == 0) for pos, b in zip(relevant, bits))))
    return Compiled(dnf_fold(terms), len(terms), 2 ** kk, kk)


def junta_dnf(depth1_circuit: ReflectionCircuit, proj: ProjectorExpr, k: int | None = None,
              tol: float = DEFAULT_TOL) -> Compiled:
    return _junta(Layer1Blocks(_first_layer(depth1_circuit), _Ctx(tol)), proj, k)


def compile_junta(depth1_circuit: ReflectionCircuit, proj: ProjectorExpr, k: int | None = None,
                  tol: float = DEFAULT_TOL) -> BoolCircuit:
    """DNF for a projector whose light-cone holds at most k layer-1 gates."""
    return junta_dnf(depth1_circuit, proj, k, tol).bool_circuit


def _first_layer(circuit: ReflectionCircuit) -> ReflectionCircuit:
    if circuit.depth > 1:
        raise CompileError("expected a depth-1 circuit")
    return circuit


# -------------------------------------------------------------- separable

def _key_of_bid(l1: Layer1Blocks, bid: int) -> int:
    i = l1.input_of[bid]
    return 0 if i is None else i + 1


def _one_junta(l1: Layer1Blocks, key: int, proj: ProjectorExpr) -> tuple:
    if key == 0:
        return (l1.activation(proj, {}),) * 2, None
    i = key - 1
    return (l1.activation(proj, {i: 0}), l1.activation(proj, {i: 1})), i


def _separable_term(l1: Layer1Blocks, per_key: dict, complemented: bool = False):
    """AND over blocks of 1-juntas, or the OR of their complements.

    Plain form returns one DNF term or ``None`` (false).  Complemented form
    returns the clause's literals or ``None`` (true).
    """
    lits = []
    for key, proj in sorted(per_key.items()):
        target = Complement(proj) if complemented else proj
        (v0, v1), i = _one_junta(l1, key, target)
        if complemented:
            if v0 and v1:
                return None
            if v0 or v1:
                lits.append((i, bool(v0)))
        else:
            if not v0 and not v1:
                return None
            if v0 != v1:
                lits.append((i, bool(v0)))
    return tuple(sorted(lits))


def compile_separable(depth1_circuit: ReflectionCircuit, blocks: BlockStructure,
                      per_block_projs: dict, complemented: bool = False,
                      tol: float = DEFAULT_TOL) -> BoolCircuit:
    """AND over blocks of per-block activations, or OR of the complements."""
    l1 = Layer1Blocks(_first_layer(depth1_circuit), _Ctx(tol))
    for key, proj in per_block_projs.items():
        if key not in blocks.blocks or not proj.support() <= blocks.blocks[key]:
            raise CompileError(f"projector for block {key} leaves the block")
    term = _separable_term(l1, per_block_projs, complemented)
    if complemented:
        if term is None:
            return TRUE
        return simplify(Or(tuple(Lit(i, neg) for i, neg in term))) if term else FALSE
    return FALSE if term is None else simplify(_term_circuit(term))


def _sepcomb(l1: Layer1Blocks, theta0: SepRank1 | None, thetas: list) -> Compiled:
    n = l1.circuit.n_inputs
    k = len(thetas)
    bound = (n + 1) ** k
    t0 = theta0 if theta0 is not None else SepRank1((), ())

    def key(q):
        return _key_of_bid(l1, l1.block_of[q])

    base: dict[int, list] = {}
    for q in t0.qubits:
        base.setdefault(key(q), []).append(q)
    choices = [sorted({key(q) for q in t.qubits}) for t in thetas]
    terms, count = [], 0
    for z in product(*choices):
        count += 1
        parts: dict[int, list] = {kk: [t0.restricted(qs)] for kk, qs in base.items()}
        for j, kk in enumerate(z):
            piece = [q for q in thetas[j].qubits if key(q) == kk]
            parts.setdefault(kk, []).append(Complement(thetas[j].restricted(piece)))
        per = {kk: (ps[0] if len(ps) == 1 else Tensor(tuple(ps))) for kk, ps in parts.items()}
        term = _separable_term(l1, per)
        if term is not None:
            terms.append(term)
    return Compiled(dnf_fold(terms), count, bound, k)


def sep_combination_dnf(depth1_circuit: ReflectionCircuit, theta0: SepRank1 | None,
                        thetas: list, tol: float = DEFAULT_TOL) -> Compiled:
    return _sepcomb(Layer1Blocks(_first_layer(depth1_circuit), _Ctx(tol)), theta0, list(thetas))


def compile_sep_combination(depth1_circuit: ReflectionCircuit, theta0: SepRank1 | None,
                            thetas: list, tol: float = DEFAULT_TOL) -> BoolCircuit:
    """DNF for theta0 (x) prod_j (I - |v><v|_{T_j})."""
    return sep_combination_dnf(depth1_circuit, theta0, thetas, tol).bool_circuit


# ---------------------------------------------------------------- layer 2

@dataclass(frozen=True)
class YBranch:
    y: tuple
    P: ProjectorExpr          # U(y)^dag Pi U(y), on T and the X parts
    theta0: SepRank1          # product of |v><v|_{Y_j} for y_j = 1
    thetas: tuple             # |v><v|_{Y_j} for y_j = 0, to be complemented

    def Q(self) -> ProjectorExpr:
        return Tensor((self.theta0,) + tuple(Complement(t) for t in self.thetas))


def _layer2_gates(circuit: ReflectionCircuit, T) -> list:
    if circuit.depth < 2:
        return []
    return [g for g in circuit.layers[1] if set(g.qubits) & set(T)]


def block_diagonalize(circuit: ReflectionCircuit, proj: ProjectorExpr,
                      l1: Layer1Blocks | None = None) -> tuple[list, int, int]:
    """Split L2^dag (proj (x) I) L2 into orthogonal pieces P(y) (x) Q(y).

    Returns the branches, the number of layer-1 gates under the projector and
    the number of layer-2 gates touching it.
    """
    l1 = l1 or Layer1Blocks(circuit, _Ctx())
    T = proj.support()
    d1 = {l1.block_of[q] for q in T}
    d1q = {q for b in d1 for q in l1.blocks[b]}
    gates = _layer2_gates(circuit, T)
    k1 = sum(1 for b in d1 if l1.counts_as_gate(b))
    k2 = len(gates)
    X = [tuple(q for q in g.qubits if q in d1q) for g in gates]
    Y = [tuple(q for q in g.qubits if q not in d1q) for g in gates]
    out = []
    for idx in range(2 ** k2):
        y = tuple((idx >> (k2 - 1 - j)) & 1 for j in range(k2))
        if any(yj == 0 and not Y[j] for j, yj in enumerate(y)):
            continue
        us = tuple(gates[j].restricted(X[j]) for j, yj in enumerate(y) if yj and X[j])
        P = Conjugated(us, proj) if us else proj
        ones = [q for j, yj in enumerate(y) if yj for q in Y[j]]
        th0 = SepRank1(tuple(ones), tuple(_theta_of(gates, q) for q in ones))
        ths = tuple(SepRank1.from_gate(gates[j], Y[j]) for j, yj in enumerate(y) if not yj)
        out.append(YBranch(y, P, th0, ths))
    return out, k1, k2


def _theta_of(gates, q) -> SingleQubitState:
    for g in gates:
        if q in g.qubits:
            return g.theta(q)
    raise KeyError(q)


def _layer2(circuit: ReflectionCircuit, l1: Layer1Blocks, proj: ProjectorExpr,
            k: int | None = None, stages: list | None = None) -> Compiled:
    branches, k1, k2 = block_diagonalize(circuit, proj, l1)
    kk = max(k1, k2)
    if k is not None:
        if kk > k:
            raise JuntaError(f"projector touches {k1} layer-1 and {k2} layer-2 gates, k={k}")
        kk = k
    n = circuit.n_inputs
    terms, count = [], 0
    for br in branches:
        cj = _junta(l1, br.P, kk)
        cs = _sepcomb(l1, br.theta0 if br.theta0.qubits else None, list(br.thetas))
        if stages is not None:
            stages.append(("junta", cj.prefold, cj.bound))
            stages.append(("sep_combination", cs.prefold, cs.bound))
        count += cj.prefold * cs.prefold
        terms.extend(dnf_and(cj.dnf, cs.dnf))
    res = Compiled(dnf_fold(terms), count, 4 ** kk * (n + 1) ** (kk + 1), kk)
    if stages is not None:
        stages.append(("layer2_small", res.prefold, res.bound))
    return res


def _check_depth2(circuit: ReflectionCircuit):
    if circuit.depth > 2:
        raise CompileError("expected a depth-2 circuit")
    if not circuit.is_cleaned_up():
        raise CompileError("circuit is not cleaned up")


def layer2_small_dnf(depth2_circuit: ReflectionCircuit, proj: ProjectorExpr,
                     k: int | None = None, tol: float = DEFAULT_TOL) -> Compiled:
    _check_depth2(depth2_circuit)
    return _layer2(depth2_circuit, Layer1Blocks(depth2_circuit, _Ctx(tol)), proj, k)


def compile_layer2_small(depth2_circuit: ReflectionCircuit, proj: ProjectorExpr,
                         k: int | None = None, tol: float = DEFAULT_TOL) -> BoolCircuit:
    return layer2_small_dnf(depth2_circuit, proj, k, tol).bool_circuit


# ---------------------------------------------------------------- depth 3

@dataclass
class CompilationReport:
    bool_circuit: BoolCircuit
    declared_bound: float
    measured_size: int
    measured_depth: int
    prefold_size: int
    oracle_checked: bool = False
    mismatches: list = field(default_factory=list)
    ambiguous_inputs: list = field(default_factory=list)
    ambiguous_evaluations: int = 0
    stages: list = field(default_factory=list)
    bound_violations: list = field(default_factory=list)
    redundant_qubits: list = field(default_factory=list)
    parts: list = field(default_factory=list)
    exact_circuit: bool | None = None
    exact_mismatches: list = field(default_factory=list)
    n_inputs: int = 0
    n_gates: int = 0
    notes: list = field(default_factory=lambda: [
        "sep-combination clause bound asserted as (n+1)^k, the tuple count over {0..n}^k"])

    @property
    def ok(self) -> bool:
        return (not self.bound_violations and self.measured_depth <= 3
                and not self.mismatches and not self.exact_mismatches)

    def to_dict(self) -> dict:
        from .boolfn import to_prefix
        return {
            "bool_circuit": to_prefix(self.bool_circuit),
            "declared_bound": self.declared_bound,
            "measured_size": self.measured_size,
            "measured_depth": self.measured_depth,
            "prefold_size": self.prefold_size,
            "oracle_checked": self.oracle_checked,
            "mismatches": [list(x) for x in self.mismatches],
            "ambiguous_inputs": [list(x) for x in self.ambiguous_inputs],
            "ambiguous_evaluations": self.ambiguous_evaluations,
            "stages": [{"stage": s, "prefold": c, "bound": b} for s, c, b in self.stages],
            "bound_violations": self.bound_violations,
            "redundant_qubits": self.redundant_qubits,
            "parts": [list(p) for p in self.parts],
            "exact_circuit": self.exact_circuit,
            "exact_mismatches": [list(x) for x in self.exact_mismatches],
            "n_inputs": self.n_inputs,
            "n_gates": self.n_gates,
            "notes": list(self.notes),
            "ok": self.ok,
        }


def _check_depth3(circuit: ReflectionCircuit):
    if circuit.output_qubit is None or circuit.output_basis is None:
        raise CompileError("circuit has no output declaration")
    if circuit.depth > 3:
        raise CompileError(f"depth {circuit.depth} > 3")
    if not circuit.is_cleaned_up():
        raise CompileError("circuit is not cleaned up")


def reflected_output(theta_t: SingleQubitState, mu: SingleQubitState) -> SingleQubitState:
    """(I - 2|theta><theta|) |mu>."""
    v = mu.vector - 2 * theta_t.inner(mu) * theta_t.vector
    return SingleQubitState.from_vector(v)


def final_gate(circuit: ReflectionCircuit) -> ReflectionGate | None:
    if circuit.depth < 3:
        return None
    return circuit.gate_on(2, circuit.output_qubit)


def control_parts(circuit: ReflectionCircuit, S) -> list[tuple]:
    """Split S by (layer-2 block, layer-1 block), in ascending lexical order."""
    l1 = Layer1Blocks(circuit.with_layers(circuit.layers[:1]), _Ctx())
    l2 = {}
    if circuit.depth >= 2:
        for gi, g in enumerate(circuit.layers[1]):
            for q in g.qubits:
                l2[q] = gi
    base = len(circuit.layers[1]) if circuit.depth >= 2 else 0
    groups: dict = {}
    for q in S:
        key = (l2.get(q, base + q), l1.block_of[q])
        groups.setdefault(key, []).append(q)
    return [tuple(sorted(groups[k])) for k in sorted(groups)]


def _complement_on(gate: ReflectionGate, qs) -> Complement:
    return Complement(SepRank1.from_gate(gate, qs))


def compile_depth3_output(circuit: ReflectionCircuit, verify: bool = True,
                          tol: float = DEFAULT_TOL) -> CompilationReport:
    """Classical depth-3 circuit for the output bit of a cleaned-up depth-3 circuit."""
    _check_depth3(circuit)
    ctx = _Ctx(tol)
    D = circuit.with_layers(circuit.layers[:2])
    l1 = Layer1Blocks(D, ctx)
    t = circuit.output_qubit
    mu1 = circuit.output_basis[1]
    n = circuit.n_inputs
    m = max(circuit.n_gates, 1)
    stages: list = []
    G = final_gate(circuit)
    redundant, parts = [], []
    if G is None:
        res = _layer2(D, l1, SepRank1((t,), (mu1,)), stages=stages)
        bc = dnf_to_circuit(res.dnf)
        prefold_size = res.prefold + 1
    else:
        S = [q for q in G.qubits if q != t]
        for q in S:
            c = _layer2(D, l1, SepRank1((q,), (G.theta(q).perp(),)), stages=stages)
            if not c.dnf:
                redundant.append(q)
        S = [q for q in S if q not in redundant]
        parts = control_parts(circuit, S)
        mut1 = reflected_output(G.theta(t), mu1)
        A_terms, B_terms, a_pre, b_pre = [], [], 0, 0
        for p in parts:
            ca = _layer2(D, l1, _complement_on(G, p), stages=stages)
            cb = _layer2(D, l1, Tensor((_complement_on(G, p), SepRank1((t,), (mu1,)))),
                         stages=stages)
            A_terms += ca.dnf
            B_terms += cb.dnf
            a_pre += ca.prefold
            b_pre += cb.prefold
        A, B = dnf_fold(A_terms), dnf_fold(B_terms)
        cm = _layer2(D, l1, SepRank1((t,), (mut1,)), stages=stages)
        M = cm.dnf
        bc = assemble(A, B, M)
        prefold_size = a_pre * b_pre + cm.prefold * (1 + a_pre) + 1
    bound = 64 * m ** 4 * max(n, 1) ** 4
    stages.append(("depth3_assembly", prefold_size, bound))
    violations = [f"{s}: {c} > {b}" for s, c, b in stages if c > b]
    rep = CompilationReport(bc, bound, bc.size(), bc.depth(), prefold_size,
                            stages=stages, bound_violations=violations,
                            redundant_qubits=redundant, parts=parts,
                            ambiguous_evaluations=len(ctx.ambiguous),
                            n_inputs=n, n_gates=circuit.n_gates)
    if rep.measured_depth > 3:
        rep.bound_violations.append(f"depth {rep.measured_depth} > 3")
    if verify and circuit.n_qubits <= SIM_CAP:
        v = verify_compilation(circuit, bc, tol)
        rep.oracle_checked = True
        rep.mismatches = v["mismatches"]
        rep.ambiguous_inputs = v["ambiguous"]
        rep.exact_circuit = v["exact_circuit"]
        rep.exact_mismatches = v["exact_mismatches"]
    return rep


def assemble(A: list, B: list, M: list) -> BoolCircuit:
    """(A and B) or (not A and M) as an OR-AND-OR circuit; not A becomes a CNF."""
    top = [_term_circuit(t) for t in dnf_and(A, B)]
    cnf = []
    for t in A:
        if not t:
            cnf = None
            break
        cnf.append(Or(tuple(Lit(i, not neg) for i, neg in t)))
    if cnf is not None:
        for t in M:
            kids = list(cnf) + [Lit(i, neg) for i, neg in t]
            top.append(And(tuple(kids)) if kids else TRUE)
    if not top:
        return FALSE
    return simplify(Or(tuple(top)))


# ------------------------------------------------------------------ oracle

def output_oracle(circuit: ReflectionCircuit, x,
                  tol: float = DEFAULT_TOL) -> tuple[int, bool, dict]:
    """Output bit from dense simulation, with an ambiguity flag and the norms.

    Without a final layer-3 gate on the output qubit this is the activation of
    |mu1><mu1|.  Otherwise it is the case split on the control qubits S:
    if (I - |v><v|_S) D(x) != 0 the bit is [(I - |v><v|_S) (x) |mu1><mu1| D(x) != 0],
    else it is [|mu1'><mu1'| D(x) != 0] with mu1' the reflected output vector.
    """
    t = circuit.output_qubit
    mu1 = circuit.output_basis[1]
    st = run(circuit, x, n_layers=2)
    G = final_gate(circuit)
    if G is None:
        v = apply_projector(st, SepRank1((t,), (mu1,))).norm2()
        return int(v > tol), in_band(v), {"M": v}
    S = [q for q in G.qubits if q != t]
    comp = Complement(SepRank1.from_gate(G, S))
    a = apply_projector(st, comp).norm2()
    norms = {"A": a}
    if a > tol:
        b = apply_projector(st, Tensor((comp, SepRank1((t,), (mu1,))))).norm2()
        norms["B"] = b
        bit, chosen = int(b > tol), b
    else:
        mut1 = reflected_output(G.theta(t), mu1)
        mv = apply_projector(st, SepRank1((t,), (mut1,))).norm2()
        norms["M"] = mv
        bit, chosen = int(mv > tol), mv
    return bit, in_band(a) or in_band(chosen), norms


def exact_output(circuit: ReflectionCircuit, x, tol: float = DEFAULT_TOL) -> int | None:
    """Output bit when C(x) is a definite basis state on the output qubit, else None."""
    st = run(circuit, x)
    t = circuit.output_qubit
    p1 = apply_projector(st, SepRank1((t,), (circuit.output_basis[1],))).norm2()
    p0 = apply_projector(st, SepRank1((t,), (circuit.output_basis[0],))).norm2()
    if p0 <= tol and p1 > tol:
        return 1
    if p1 <= tol and p0 > tol:
        return 0
    return None


def verify_compilation(circuit: ReflectionCircuit, bc: BoolCircuit,
                       tol: float = DEFAULT_TOL) -> dict:
    n = circuit.n_inputs
    if circuit.n_qubits > SIM_CAP:
        raise CompileError(f"{circuit.n_qubits} qubits exceed the simulator cap {SIM_CAP}")
    got = truth_table(bc, n).values
    mismatches, ambiguous, exact_mm = [], [], []
    exact = True
    for k, x in enumerate(all_inputs(n)):
        bit, amb, _ = output_oracle(circuit, x, tol)
        if amb:
            ambiguous.append(x)
        elif int(got[k]) != bit:
            mismatches.append(x)
        e = exact_output(circuit, x, tol)
        if e is None:
            exact = False
        elif e != int(got[k]):
            exact_mm.append(x)
    return {"mismatches": mismatches, "ambiguous": ambiguous, "exact_circuit": exact,
            "exact_mismatches": exact_mm if exact else []}


def activation_table(circuit: ReflectionCircuit, proj: ProjectorExpr, n_layers=None,
                     tol: float = DEFAULT_TOL) -> np.ndarray:
    from .statevec import activation
    return np.array([activation(circuit, proj, x, tol, n_layers)
                     for x in all_inputs(circuit.n_inputs)])


def dnf_table(dnf: list, n: int) -> np.ndarray:
    return _eval_dnf(dnf, input_matrix(n)).astype(float)

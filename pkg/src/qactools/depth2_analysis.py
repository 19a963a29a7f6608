"""Depth-2 experiments: Fourier tails, trace-distance lemmas, kill sets and witnesses.

f_C(x) here is always the acceptance probability Pr[output = mu_1].  Reflection
gates I - 2|v><v| play the role of the CZ gate I - 2|1^m><1^m|; the two are
related by single-qubit conjugation, so every bound below is stated with |v>
in place of |1^m>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .ac0_compile import Layer1Blocks, _Ctx
from .boolfn import (FuncTable, RandomValuedRestriction, all_restrictions, fwht,
                     level_weights, maclaurin_bound, restrict_table, tail_weight,
                     tails_closeness)
from .circuit_ir import (ClassicalRestriction, CircuitError, ReflectionCircuit,
                         restrict_classical, restriction_order)
from .statevec import (DENSITY_CAP, DEFAULT_TOL, DenseState, DensityMatrix, SepRank1,
                       SimulationError, acceptance_table, all_inputs, apply_projector,
                       kron_all, reduced_density, run, trace_distance, trace_norm)

DEFAULT_EPS = 0.25
SLACK = 1e-8


def default_b_threshold(n: int, eps: float = DEFAULT_EPS) -> int:
    return math.ceil(math.log2(16 * max(n, 1) / eps))


def _f(circuit: ReflectionCircuit) -> FuncTable:
    return FuncTable(circuit.n_inputs, acceptance_table(circuit))


# ------------------------------------------------------- large-gate removal

@dataclass(frozen=True)
class DroppedGate:
    gate_index: int
    inputs: tuple
    bound: float


def drop_large_layer1_gates(circuit: ReflectionCircuit, b_threshold: int | None = None,
                            eps: float = DEFAULT_EPS) -> tuple[ReflectionCircuit, list]:
    """Replace layer-1 gates holding more than ``b_threshold`` inputs by identity."""
    if b_threshold is None:
        b_threshold = default_b_threshold(circuit.n_inputs, eps)
    if not circuit.layers:
        return circuit, []
    keep, dropped = [], []
    for gi, g in enumerate(circuit.layers[0]):
        ins = tuple(circuit.gate_inputs(g))
        if len(ins) > b_threshold:
            dropped.append(DroppedGate(gi, ins, 4.0 * 2.0 ** -len(ins)))
        else:
            keep.append(g)
    if not dropped:
        return circuit, []
    return circuit.with_layers((tuple(keep),) + tuple(circuit.layers[1:])), dropped


def aggregate_removal_bound(dropped) -> float:
    """Triangle inequality over sequential removals: (sum_g 2 * 2^{-|S_g|/2})^2."""
    return float(sum(math.sqrt(d.bound) for d in dropped)) ** 2


def removal_check(circuit: ReflectionCircuit, b_threshold: int | None = None,
                  eps: float = DEFAULT_EPS) -> dict:
    """Measured ||f_C - f_C'||_2^2 against the declared bounds, per gate and jointly."""
    f = _f(circuit)
    reduced, dropped = drop_large_layer1_gates(circuit, b_threshold, eps)
    per_gate = []
    for d in dropped:
        layer = tuple(g for gi, g in enumerate(circuit.layers[0]) if gi != d.gate_index)
        alone = _f(circuit.with_layers((layer,) + tuple(circuit.layers[1:])))
        dist2 = float(np.mean((f.values - alone.values) ** 2))
        tails = tails_closeness(f, alone)
        per_gate.append({
            "gate_index": d.gate_index, "n_inputs": len(d.inputs), "measured": dist2,
            "bound": d.bound, "holds": dist2 <= d.bound + SLACK,
            "tail_gap": tails["max_gap"], "tail_bound": tails["bound"],
            "tail_holds": tails["max_gap"] <= tails["bound"] + SLACK,
            "tail_statement_form": 8.0 * 2.0 ** -len(d.inputs),
        })
    measured = float(np.mean((f.values - _f(reduced).values) ** 2)) if dropped else 0.0
    agg = aggregate_removal_bound(dropped)
    return {"dropped": len(dropped), "measured": measured, "bound": agg,
            "holds": measured <= agg + SLACK and all(p["holds"] and p["tail_holds"]
                                                     for p in per_gate),
            "per_gate": per_gate}


# --------------------------------------------------- structured restrictions

def input_blocks(circuit: ReflectionCircuit) -> tuple[list, list]:
    """(S_1..S_l, S_0): input sets of layer-1 gates with inputs, and the rest."""
    n = circuit.n_inputs
    groups, seen = [], set()
    for g in (circuit.layers[0] if circuit.layers else ()):
        ins = tuple(sorted(circuit.gate_inputs(g)))
        if ins:
            groups.append(ins)
            seen |= set(ins)
    return groups, [i for i in range(n) if i not in seen]


def structure_restriction(circuit: ReflectionCircuit, seed: int) -> RandomValuedRestriction:
    """One uniform live input per layer-1 gate, untouched inputs live, z uniform."""
    rng = np.random.default_rng(seed)
    groups, free = input_blocks(circuit)
    J = set(free)
    for S in groups:
        J.add(S[int(rng.integers(len(S)))])
    z = {i: int(rng.integers(2)) for i in range(circuit.n_inputs) if i not in J}
    return RandomValuedRestriction(circuit.n_inputs, frozenset(J), z)


def restriction_distribution(groups, free) -> list:
    """Exact distribution of J as (J, probability) pairs."""
    out = []
    p = 1.0
    for S in groups:
        p /= len(S)
    for pick in product(*groups):
        out.append((frozenset(free) | frozenset(pick), p))
    return out


def restriction_claim_check(table: FuncTable, groups, free, k: int) -> dict:
    """W^{>=4kb}[f] <= 2 E_{J,z} W^{>=k}[f|_{J,z}], both sides enumerated."""
    b = max((len(S) for S in groups), default=1)
    level = 4 * k * b
    # beyond level n the tail is empty
    lhs = tail_weight(fwht(table), level) if level <= table.n else 0.0
    rhs = 0.0
    for J, p in restriction_distribution(groups, free):
        rs = list(all_restrictions(table.n, J))
        for r in rs:
            rhs += p / len(rs) * tail_weight(fwht(restrict_table(table, r)), k)
    return {"k": k, "b": b, "level": level, "lhs": lhs, "rhs": 2 * rhs,
            "holds": lhs <= 2 * rhs + SLACK}


# ----------------------------------------------------- gate input states

@dataclass
class GateInputDecomposition:
    """Product decomposition of the state entering one layer-2 gate.

    ``blocks[0]`` is Q_0 (qubits from input-free layer-1 blocks) and
    ``blocks[i + 1]`` is Q_i for input i.  ``axis`` maps each gate qubit to
    its reflection state, or is ``None`` when the output sits in no layer-2
    gate and the "gate" is just the output qubit.
    """

    gate_qubits: tuple
    axis: dict | None
    blocks: list
    rho0: DensityMatrix
    pairs: list

    @property
    def n(self) -> int:
        return len(self.pairs)

    def rho(self, i: int) -> np.ndarray:
        r0, r1 = self.pairs[i]
        return (r0.entries + r1.entries) / 2

    def derivative(self, i: int) -> np.ndarray:
        r0, r1 = self.pairs[i]
        return (r1.entries - r0.entries) / 2

    def derivative_norms(self) -> np.ndarray:
        return np.array([trace_norm(self.derivative(i)) for i in range(self.n)])

    def axis_vector(self, qs) -> np.ndarray:
        v = np.ones(1, dtype=complex)
        for q in qs:
            v = np.kron(v, self.axis[q].vector)
        return v

    def overlap(self, k: int, rho: np.ndarray) -> float:
        v = self.axis_vector(self.blocks[k])
        return float(np.real(np.vdot(v, rho @ v)))

    def deltas(self) -> np.ndarray:
        """delta_0..delta_n with delta_i = 1 - <v_Qi| rho_i |v_Qi>."""
        if self.axis is None:
            raise SimulationError("no reflection axis: output is not inside a layer-2 gate")
        out = [1 - self.overlap(0, self.rho0.entries)]
        out += [1 - self.overlap(i + 1, self.rho(i)) for i in range(self.n)]
        return np.array(out)

    def active_weight(self) -> float:
        """<v|rho|v> for the input-averaged state rho."""
        return float(np.prod(1 - self.deltas()))

    def joint(self, x) -> np.ndarray:
        return kron_all([self.rho0] + [self.pairs[i][x[i]] for i in range(self.n)])

    def ordered_qubits(self) -> list:
        return [q for blk in self.blocks for q in blk]


def output_gate(circuit: ReflectionCircuit):
    if circuit.output_qubit is None:
        raise CircuitError("circuit has no output declaration")
    if circuit.depth < 2:
        return None
    return circuit.gate_on(1, circuit.output_qubit)


def gate_input_decomposition(circuit: ReflectionCircuit,
                             layer2_gate=None) -> GateInputDecomposition:
    """Split the qubits of a layer-2 gate by layer-1 block and trace out the rest.

    With ``layer2_gate=None`` the gate holding the output qubit is used.
    """
    if not circuit.is_cleaned_up():
        raise CircuitError("circuit is not structured: a layer-1 gate has several inputs")
    if layer2_gate is None:
        layer2_gate = output_gate(circuit)
    if layer2_gate is None:
        qubits, axis = (circuit.output_qubit,), None
    else:
        qubits, axis = tuple(layer2_gate.qubits), layer2_gate.state_map()
    c1 = circuit.with_layers(circuit.layers[:1])
    l1 = Layer1Blocks(c1, _Ctx())
    n = circuit.n_inputs
    blocks = [[] for _ in range(n + 1)]
    for q in qubits:
        i = l1.input_of[l1.block_of[q]]
        blocks[0 if i is None else i + 1].append(q)
    blocks = [tuple(sorted(b)) for b in blocks]
    for b in blocks:
        if len(b) > DENSITY_CAP:
            raise SimulationError(f"block of {len(b)} qubits exceeds the density cap {DENSITY_CAP}")

    def marginal(qs, assignment):
        if not qs:
            return DensityMatrix(0, np.ones((1, 1), dtype=complex))
        bids = sorted({l1.block_of[q] for q in qs})
        order = [q for bid in bids for q in l1.blocks[bid]]
        v = np.ones(1, dtype=complex)
        for bid in bids:
            i = l1.input_of[bid]
            v = np.kron(v, l1.block_vector(bid, assignment.get(i, 0) if i is not None else 0))
        st = DenseState(len(order), v)
        return reduced_density(st, [order.index(q) for q in qs])

    rho0 = marginal(blocks[0], {})
    pairs = [(marginal(blocks[i + 1], {i: 0}), marginal(blocks[i + 1], {i: 1})) for i in range(n)]
    return GateInputDecomposition(qubits, axis, blocks, rho0, pairs)


def decomposition_consistency(circuit: ReflectionCircuit, dec: GateInputDecomposition, x) -> float:
    """max |reduced layer-1 state on the gate - tensor of the block states|."""
    st = run(circuit, x, n_layers=1)
    red = reduced_density(st, dec.ordered_qubits())
    return float(np.abs(red.entries - dec.joint(x)).max())


def matrix_fourier_bound(dec: GateInputDecomposition, circuit: ReflectionCircuit) -> dict:
    """|f^(R)| against prod_{i in R} ||D_i||_1 for every R."""
    coeffs = fwht(_f(circuit)).coeffs
    norms = dec.derivative_norms()
    rows, worst = [], -math.inf
    for mask in range(len(coeffs)):
        bound = float(np.prod([norms[i] for i in range(dec.n) if mask >> i & 1]))
        val = abs(float(coeffs[mask]))
        worst = max(worst, val - bound)
        rows.append({"R": [i for i in range(dec.n) if mask >> i & 1], "coeff": val, "bound": bound})
    return {"rows": rows, "max_excess": worst, "holds": worst <= SLACK,
            "derivative_norms": norms.tolist()}


# --------------------------------------------------- trace-distance lemmas

def _entries(rho) -> np.ndarray:
    return rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def _all_ones(m: int) -> np.ndarray:
    v = np.zeros(2 ** m, dtype=complex)
    v[-1] = 1
    return v


def cz_phase_distance(rho, axis=None) -> dict:
    """D(rho, R rho R) against 2 sqrt(delta), R = I - 2|v><v|, v = |1^m> by default."""
    m_ = _entries(rho)
    v = _all_ones(int(round(math.log2(m_.shape[0])))) if axis is None else np.asarray(axis, complex)
    R = np.eye(len(v), dtype=complex) - 2 * np.outer(v, v.conj())
    delta = max(float(np.real(np.vdot(v, m_ @ v))), 0.0)
    dist = trace_distance(m_, R @ m_ @ R)
    bound = 2 * math.sqrt(delta)
    return {"distance": dist, "delta": delta, "bound": bound, "holds": dist <= bound + 1e-9}


def close_to_all_ones(rho1, rho2, delta: float) -> dict:
    """D(rho', rho'') against 2 delta + 2 sqrt(delta) when both sit near |1^d>."""
    a, b = _entries(rho1), _entries(rho2)
    v = _all_ones(int(round(math.log2(a.shape[0]))))
    p1, p2 = (float(np.real(np.vdot(v, m @ v))) for m in (a, b))
    pre = p1 >= 1 - delta - 1e-12 and p2 >= 1 - delta - 1e-12
    dist = trace_distance(a, b)
    bound = 2 * delta + 2 * math.sqrt(delta)
    return {"distance": dist, "bound": bound, "precondition": pre,
            "holds": (not pre) or dist <= bound + 1e-9}


def rho_rho_squared(rho) -> dict:
    """<i|rho|i> >= <i|rho^2|i> for every basis index i."""
    m_ = _entries(rho)
    gaps = np.real(np.diag(m_)) - np.real(np.diag(m_ @ m_))
    return {"min_gap": float(gaps.min()), "holds": bool(gaps.min() >= -SLACK)}


# ---------------------------------------------------------- case dichotomy

def _depends_on_at_most_one(table: np.ndarray, n: int) -> bool:
    rel = 0
    for i in range(n):
        k = np.arange(2 ** n)
        if np.abs(table - table[k ^ (1 << i)]).max() > 1e-9:
            rel += 1
    return rel <= 1


def case_dichotomy(circuit: ReflectionCircuit, eps: float = DEFAULT_EPS) -> dict:
    """Run whichever branch applies to the gate holding the output and check it."""
    dec = gate_input_decomposition(circuit)
    f = _f(circuit)
    n = circuit.n_inputs
    if dec.axis is None:
        ok = _depends_on_at_most_one(f.values, n)
        return {"case": "dictator", "holds": ok}
    active = dec.active_weight()
    out = {"active_weight": active, "threshold": eps / 32}
    if active <= eps / 32:
        g = output_gate(circuit)
        layer = tuple(h for h in circuit.layers[1] if h != g)
        f3 = _f(circuit.with_layers((circuit.layers[0], layer)))
        measured = float(np.mean((f.values - f3.values) ** 2))
        out.update(case=1, measured=measured, bound=eps / 8,
                   dictator=_depends_on_at_most_one(f3.values, n),
                   holds=measured <= eps / 8 + SLACK and _depends_on_at_most_one(f3.values, n))
        return out
    deltas = dec.deltas()
    lnsum = float(deltas.sum())
    td = []
    for i in range(n):
        r0, r1 = dec.pairs[i]
        td.append((trace_distance(r0, r1), 8 * math.sqrt(max(deltas[i + 1], 0.0))))
    w = level_weights(fwht(f))
    mac = [(float(w[ell]), maclaurin_bound(deltas[1:], ell))
           for ell in range(1, min(6, n) + 1)]
    mf = matrix_fourier_bound(dec, circuit)
    holds = (lnsum <= math.log(32 / eps) + SLACK and all(a <= b + SLACK for a, b in td)
             and all(a <= b + SLACK for a, b in mac) and mf["holds"])
    out.update(case=2, delta_sum=lnsum, ln_bound=math.log(32 / eps),
               trace_distances=td, maclaurin=mac, fourier_holds=mf["holds"], holds=holds)
    return out


# ------------------------------------------------------- kill sets (depth 2)

def _require_depth2(circuit: ReflectionCircuit):
    if circuit.depth > 2:
        raise CircuitError(f"expected depth <= 2, got {circuit.depth}")
    if not circuit.is_cleaned_up():
        raise CircuitError("circuit is not cleaned up")


def _gate_tables(circuit: ReflectionCircuit, tol: float = DEFAULT_TOL) -> list:
    """Activation table of |v><v|_S on the layer-1 state for each layer-2 gate."""
    gates = circuit.layers[1] if circuit.depth >= 2 else ()
    projs = [SepRank1.from_gate(g) for g in gates]
    tabs = np.zeros((len(gates), 2 ** circuit.n_inputs), dtype=bool)
    for k, x in enumerate(all_inputs(circuit.n_inputs)):
        st = run(circuit, x, n_layers=1)
        for j, p in enumerate(projs):
            tabs[j, k] = apply_projector(st, p).norm2() > tol
    return list(tabs)


def _kills(table: np.ndarray, n: int, i: int, b: int) -> bool:
    k = np.arange(2 ** n)
    return not table[((k >> i) & 1) == b].any()


def _trivial(table: np.ndarray) -> str | None:
    if table.all():
        return "one"
    if not table.any():
        return "zero"
    return None


def onesided_assignment(circuit: ReflectionCircuit) -> dict:
    """z_i = b when input i's layer-1 axis is |b>, else 0; count gates each (i, z_i) kills."""
    _require_depth2(circuit)
    n = circuit.n_inputs
    z = []
    for i in range(n):
        g = circuit.gate_on(0, i) if circuit.layers else None
        bit = g.theta(i).is_basis() if g is not None else None
        z.append(int(bit) if bit is not None else 0)
    tabs = _gate_tables(circuit)
    nontrivial = [j for j, t in enumerate(tabs) if _trivial(t) is None]
    killed = [[j for j in nontrivial if _kills(tabs[j], n, i, z[i])] for i in range(n)]
    counts = [len(k) for k in killed]
    return {"z": z, "kill_counts": counts, "killed_gates": killed,
            "nontrivial_gates": nontrivial, "holds": max(counts, default=0) <= 2}


@dataclass
class KillSet:
    gates: list = field(default_factory=list)
    verified: bool = False

    def members(self, j: int) -> list:
        return self.gates[j]["kills"]

    def to_dict(self) -> dict:
        return {"gates": self.gates, "verified": self.verified}


def kill_sets(circuit: ReflectionCircuit) -> KillSet:
    """K(H) = {(i, b) : fixing x_i = b makes H's activation identically 0}.

    Membership is read off the exhaustive activation table, then each member
    is re-checked on the restricted circuit.
    """
    _require_depth2(circuit)
    n = circuit.n_inputs
    gates = circuit.layers[1] if circuit.depth >= 2 else ()
    tabs = _gate_tables(circuit)
    out = []
    for j, (g, t) in enumerate(zip(gates, tabs)):
        kills = [(i, b) for i in range(n) for b in (0, 1) if _kills(t, n, i, b)]
        out.append({"gate_index": j, "qubits": list(g.qubits), "trivial": _trivial(t),
                    "kills": kills})
    ok = all(_restricted_dead(circuit, {i: b}, [j]) for e in out for j in [e["gate_index"]]
             for i, b in e["kills"])
    return KillSet(out, ok)


def _restricted_dead(circuit: ReflectionCircuit, assignment: dict, gate_ids,
                     tol: float = DEFAULT_TOL) -> bool:
    r = ClassicalRestriction(dict(assignment))
    rc = restrict_classical(circuit, r)
    order = restriction_order(circuit, r) if assignment else list(range(circuit.n_qubits))
    new_of_old = {old: new for new, old in enumerate(order)}
    projs = [SepRank1.from_gate(circuit.layers[1][j].relabel(new_of_old)) for j in gate_ids]
    for y in all_inputs(rc.n_inputs):
        st = run(rc, y, n_layers=1)
        if any(apply_projector(st, p).norm2() > tol for p in projs):
            return False
    return True


def restriction_builder(circuit: ReflectionCircuit, frac_b: float = 0.1,
                        frac_r1: float = 0.75, max_b: int = 20) -> dict:
    """R = R0 u R1 killing every non-trivial layer-2 activation, or an infeasibility report."""
    _require_depth2(circuit)
    n = circuit.n_inputs
    ks = kill_sets(circuit)
    z = onesided_assignment(circuit)["z"]
    targets = [e for e in ks.gates if e["trivial"] is None]
    reasons = []
    B = [e["gate_index"] for e in targets
         if sum(1 for i, b in e["kills"] if b == z[i]) >= frac_b * n]
    if len(B) > max_b:
        reasons.append(f"{len(B)} gates in the one-sided family, more than {max_b}")
    R0: dict = {}
    for j in B:
        kills = set(map(tuple, ks.members(j)))
        if any((i, b) in kills for i, b in R0.items()):
            continue
        for i in range(n):
            if (i, z[i]) in kills and i not in R0:
                R0[i] = z[i]
                break
    budget = min(int(math.floor(frac_r1 * n)), n - len(R0) - 1)
    R1: dict = {}
    alive = [e for e in targets if e["gate_index"] not in B]

    def dead(e):
        kills = set(map(tuple, e["kills"]))
        return any((i, b) in kills for i, b in list(R0.items()) + list(R1.items()))

    while len(R1) < budget:
        pending = [e for e in alive if not dead(e)]
        cand = [i for i in range(n) if i not in R0 and i not in R1]
        if not cand:
            break
        score = {i: sum(1 for e in pending if (i, 1 - z[i]) in set(map(tuple, e["kills"])))
                 for i in cand}
        best = max(cand, key=lambda i: (score[i], -i))
        R1[best] = 1 - z[best]
    R = {**R0, **R1}
    survivors = n - len(R)
    verified = _restricted_dead(circuit, R, [e["gate_index"] for e in targets]) if targets else True
    if not verified:
        reasons.append("some non-trivial layer-2 activation survives the restriction")
    if survivors < 1:
        reasons.append("no surviving inputs")
    return {"restriction": {str(i): b for i, b in sorted(R.items())},
            "R0": {str(i): b for i, b in sorted(R0.items())},
            "R1": {str(i): b for i, b in sorted(R1.items())},
            "family_B": B, "z": z, "survivors": survivors, "verified": verified,
            "feasible": not reasons, "reasons": reasons}


# ------------------------------------------------------ exactness witness

def _restricted_table(circuit: ReflectionCircuit, proj, assignment: dict,
                      tol: float = DEFAULT_TOL) -> np.ndarray:
    """Activation of ``proj`` (old labels) on C|_R over all survivor inputs."""
    r = ClassicalRestriction(dict(assignment))
    rc = restrict_classical(circuit, r)
    order = restriction_order(circuit, r) if assignment else list(range(circuit.n_qubits))
    new_of_old = {old: new for new, old in enumerate(order)}
    p = proj.relabel(new_of_old)
    return np.array([apply_projector(run(rc, y), p).norm2() > tol
                     for y in all_inputs(rc.n_inputs)])


def depth2_exactness_witness(circuit: ReflectionCircuit, tol: float = DEFAULT_TOL) -> dict:
    """Case 1 or Case 2 witness for a cleaned-up depth-2 circuit with an output."""
    _require_depth2(circuit)
    n = circuit.n_inputs
    t = circuit.output_qubit
    if t is None:
        raise CircuitError("circuit has no output declaration")
    G = output_gate(circuit)
    S = [q for q in G.qubits if q != t] if G is not None else []
    c1 = circuit.with_layers(circuit.layers[:1])
    l1 = Layer1Blocks(c1, _Ctx(tol))
    for q in S:
        perp = SepRank1((q,), (G.theta(q).perp(),))
        live = [x for x in all_inputs(n) if apply_projector(run(c1, x), perp).norm2() > tol]
        if not live:
            continue
        for b in (0, 1):
            proj = SepRank1((q, t), (G.theta(q).perp(), circuit.output_basis[b]))
            coords = sorted({l1.input_of[l1.block_of[p]] for p in (q, t)} - {None})
            for bits in product((0, 1), repeat=len(coords)):
                R = dict(zip(coords, bits))
                tab = _restricted_table(circuit, proj, R, tol)
                if tab.all():
                    return _case2(circuit, q, b, R, tol)
        return {"case": None, "found": False, "reason": "no witness at this size", "q": q}
    # Case 1: controls always in |v>_S; output depends on t's layer-1 block only
    i = l1.input_of[l1.block_of[t]]
    f = acceptance_table(circuit)
    ok = _depends_on_at_most_one(f, n)
    return {"case": 1, "found": True, "verified": ok, "junta_coordinate": i,
            "restriction": {}, "forced_bit": None}


def _case2(circuit: ReflectionCircuit, q: int, b: int, R: dict, tol: float) -> dict:
    from .ac0_compile import exact_output
    r = ClassicalRestriction(dict(R))
    rc = restrict_classical(circuit, r)
    outs = [exact_output(rc, y, tol) for y in all_inputs(rc.n_inputs)]
    exact = all(o is not None for o in outs)
    forced = exact and all(o == b for o in outs)
    return {"case": 2, "found": True, "verified": True, "q": q, "forced_bit": b,
            "restriction": {str(i): v for i, v in sorted(R.items())},
            "survivors": rc.n_inputs, "exact_on_survivors": exact,
            "forced_bit_verified": forced if exact else None}


def claim_check(circuit: ReflectionCircuit, claim: str, tol: float = DEFAULT_TOL) -> dict:
    """Test a claim that the circuit computes PARITY or MAJORITY exactly.

    A Case-2 witness gives a restriction under which outcome mu_b always has
    positive probability; any surviving input where the claimed function is
    not b is a counterexample.
    """
    claim = claim.upper()
    fn = {"PARITY": lambda x: sum(x) % 2,
          "MAJORITY": lambda x: int(2 * sum(x) > len(x))}[claim]
    w = depth2_exactness_witness(circuit, tol)
    n = circuit.n_inputs
    if w.get("case") == 2:
        R = {int(i): v for i, v in w["restriction"].items()}
        for y in all_inputs(n - len(R)):
            it = iter(y)
            x = tuple(R[i] if i in R else next(it) for i in range(n))
            if fn(x) != w["forced_bit"]:
                return {"claim": claim, "refuted": True, "counterexample": list(x), "witness": w}
    if w.get("case") == 1:
        from .ac0_compile import exact_output
        for x in all_inputs(n):
            for i in range(n):
                x2 = tuple(v ^ (k == i) for k, v in enumerate(x))
                if fn(x) != fn(x2) and w["junta_coordinate"] != i:
                    # the output cannot tell x from x2, so one of them is wrong
                    bad = x if exact_output(circuit, x, tol) != fn(x) else x2
                    return {"claim": claim, "refuted": True, "counterexample": list(bad),
                            "flip": i, "witness": w}
    return {"claim": claim, "refuted": False, "witness": w}

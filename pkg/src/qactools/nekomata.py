"""Generalized nekomata: recognition, post-selection certificates and searches.

A generalized n-nekomata on targets t_1..t_n is
``alpha |mu_1..mu_n>|g0> + beta |mu_1^perp..mu_n^perp>|g1>`` with alpha, beta
nonzero.  Ancilla states are stored on the non-target qubits in ascending
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .circuit_ir import (PLUS, ZERO, ReflectionCircuit, ReflectionGate, SingleQubitState,
                         cnot_gate, haar_state, random_circuit)
from .statevec import (SIM_CAP, DenseState, SepRank1, SimulationError, apply_projector,
                       apply_reflection, run, schmidt_rank)

AMP_TOL = 1e-10
FID_TOL = 1e-8
MIN_BRANCH = 0.01


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return v / np.linalg.norm(v)


def _canon(v) -> np.ndarray:
    """Fix the phase: first component above 1e-12 real and positive."""
    v = _unit(v)
    for a in v:
        if abs(a) > 1e-12:
            return v * (abs(a) / a)
    return v


def _perp(v) -> np.ndarray:
    v = _unit(v)
    return np.array([-np.conj(v[1]), np.conj(v[0])])


def _contract(state: DenseState, q: int, vec) -> np.ndarray:
    """<vec|_q psi as a tensor with axis q removed."""
    return np.tensordot(np.conj(vec), state.tensor(), axes=([0], [q]))


@dataclass
class NekomataCert:
    n_qubits: int
    targets: tuple
    bases: tuple          # per target (mu, mu_perp) as 2-vectors
    alpha: complex
    beta: complex
    gamma0: DenseState
    gamma1: DenseState
    fidelity: float = 1.0

    @property
    def ancillae(self) -> tuple:
        return tuple(q for q in range(self.n_qubits) if q not in self.targets)

    def branch_projector(self, b: int) -> SepRank1:
        return SepRank1(self.targets, tuple(SingleQubitState.from_vector(mu[b])
                                            for mu in self.bases))

    def reconstruct(self) -> DenseState:
        n = self.n_qubits
        order = list(self.targets) + list(self.ancillae)
        out = np.zeros(2 ** n, dtype=complex)
        for b, amp, g in ((0, self.alpha, self.gamma0), (1, self.beta, self.gamma1)):
            v = np.ones(1, dtype=complex)
            for mu in self.bases:
                v = np.kron(v, mu[b])
            v = np.kron(v, g.amplitudes)
            out += amp * v
        t = out.reshape([2] * n) if n else out
        inv = np.argsort(order)
        if n:
            t = np.transpose(t, list(inv))
        return DenseState(n, t.reshape(-1))

    def check(self) -> list[str]:
        bad = []
        for i, (m0, m1) in enumerate(self.bases):
            if abs(np.vdot(m0, m1)) > 1e-9:
                bad.append(f"basis of target {self.targets[i]} not orthogonal")
        if abs(self.alpha) ** 2 <= AMP_TOL or abs(self.beta) ** 2 <= AMP_TOL:
            bad.append("alpha or beta vanishes")
        return bad

    def to_dict(self) -> dict:
        def c(z):
            z = complex(z)
            return [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]
        return {
            "n_qubits": self.n_qubits,
            "targets": list(self.targets),
            "bases": [[[c(a) for a in m0], [c(a) for a in m1]] for m0, m1 in self.bases],
            "alpha": c(self.alpha),
            "beta": c(self.beta),
            "gamma0": [c(a) for a in self.gamma0.amplitudes],
            "gamma1": [c(a) for a in self.gamma1.amplitudes],
            "fidelity": round(self.fidelity, 12),
        }


@dataclass
class GnspCert:
    post_qubits: tuple
    post_states: tuple     # SingleQubitState per post-selected qubit
    inner: NekomataCert
    n_before: int = 0
    k: int = 0
    bound_met: bool = True
    notes: list = field(default_factory=list)

    @property
    def n_targets(self) -> int:
        return len(self.inner.targets)

    def projector(self) -> SepRank1:
        return SepRank1(self.post_qubits, self.post_states)

    def to_dict(self) -> dict:
        return {"post_selection": {"qubits": list(self.post_qubits),
                                   "states": [[[s.amplitude0.real, s.amplitude0.imag],
                                               [s.amplitude1.real, s.amplitude1.imag]]
                                              for s in self.post_states]},
                "inner": self.inner.to_dict(), "n_before": self.n_before, "k": self.k,
                "bound_met": self.bound_met, "notes": list(self.notes)}


# ---------------------------------------------------------------- certify

def _column_space(state: DenseState, t1: int, t2: int, tol: float) -> list:
    rest = [q for q in range(state.n_qubits) if q not in (t1, t2)]
    m = np.transpose(state.tensor(), [t1, t2] + rest).reshape(4, -1)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    r = int((s > tol * max(s[0], 1e-300)).sum())
    return [u[:, k].reshape(2, 2) for k in range(r)]


def _product_points(A0: np.ndarray, A1: np.ndarray) -> list:
    """Rank-1 matrices in span{A0, A1}, i.e. roots of det(s A0 + r A1)."""
    def det(m):
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    d0, d1 = det(A0), det(A1)
    c = det(A0 + A1) - d0 - d1
    roots = np.roots([d1, c, d0]) if max(abs(d0), abs(d1), abs(c)) > 1e-14 else []
    mats = [A0 + u * A1 for u in roots]
    if len(mats) < 2:
        mats.append(A1)
    return mats[:2]


def _factor(m: np.ndarray) -> tuple | None:
    u, s, vh = np.linalg.svd(m)
    if s[0] < 1e-12 or s[1] > 1e-6 * s[0]:
        return None
    return u[:, 0], vh[0, :]


def _first_two_bases(state: DenseState, t1: int, t2: int, tol: float):
    cols = _column_space(state, t1, t2, tol)
    if len(cols) == 2:
        pts = _product_points(*cols)
        f = [_factor(m) for m in pts]
        if len(f) != 2 or any(x is None for x in f):
            return None
        (a, b), (c, d) = f
        if abs(np.vdot(a, c)) > 1e-6 or abs(np.vdot(b, d)) > 1e-6:
            return None
        return (a, c), (b, d)
    if len(cols) == 1:
        u, s, vh = np.linalg.svd(cols[0])
        if s[1] < 1e-6 * s[0]:
            return None
        return (u[:, 0], u[:, 1]), (vh[0, :], vh[1, :])
    return None


def _branch_basis(state: DenseState, t1: int, mu1, t: int) -> np.ndarray | None:
    rest = _contract(state, t1, mu1)
    qs = [q for q in range(state.n_qubits) if q != t1]
    k = qs.index(t)
    m = np.moveaxis(rest, k, 0).reshape(2, -1)
    rho = m @ m.conj().T
    w, v = np.linalg.eigh(rho)
    if w[-1] <= 0:
        return None
    return v[:, -1]


def _project_branch(state: DenseState, targets, vecs) -> np.ndarray:
    t = state.tensor()
    for q, v in sorted(zip(targets, vecs), key=lambda p: -p[0]):
        t = np.tensordot(np.conj(v), t, axes=([0], [q]))
    return t.reshape(-1)


def branch_weights(state: DenseState, targets, bases) -> tuple[float, float]:
    psi = state if state.normalized else state.normalize()
    return tuple(float(np.linalg.norm(_project_branch(psi, targets, [mu[b] for mu in bases])) ** 2)
                 for b in (0, 1))


def branch_fidelity(state: DenseState, targets, bases) -> float:
    """||P0 psi||^2 + ||P1 psi||^2 for a normalized state."""
    return sum(branch_weights(state, targets, bases))


def _single_target(psi: DenseState, t: int) -> NekomataCert:
    # every state splits this way; pick a basis where neither branch vanishes
    qs = [q for q in range(psi.n_qubits) if q != t]
    m = np.transpose(psi.tensor(), [t] + qs).reshape(2, -1)
    w, v = np.linalg.eigh(m @ m.conj().T)
    a, b = v[:, 1], v[:, 0]
    if w[0] < 1e-9:
        a, b = (a + b) / math.sqrt(2), (a - b) / math.sqrt(2)
    bases = ((_canon(a), _canon(b)),)
    amps, gammas = [], []
    for k in (0, 1):
        g = _project_branch(psi, (t,), [bases[0][k]])
        nrm = float(np.linalg.norm(g))
        amps.append(nrm)
        gammas.append(DenseState(psi.n_qubits - 1, g / nrm))
    return NekomataCert(psi.n_qubits, (t,), bases, complex(amps[0]), complex(amps[1]),
                        gammas[0], gammas[1], float(min(amps[0] ** 2 + amps[1] ** 2, 1.0)))


def certify_nekomata(state: DenseState, targets, tol: float = FID_TOL) -> NekomataCert | None:
    """Return a certificate when ``state`` is a generalized nekomata on ``targets``."""
    targets = tuple(int(t) for t in targets)
    if not targets:
        raise ValueError("need at least one target")
    if len(set(targets)) != len(targets) or not all(0 <= t < state.n_qubits for t in targets):
        raise ValueError(f"bad target list {targets}")
    if state.norm2() <= 0:
        return None
    psi = state.normalize()
    if len(targets) == 1:
        return _single_target(psi, targets[0])
    for t in targets:
        if schmidt_rank(psi, [t], tol=1e-7) != 2:
            return None
    first = _first_two_bases(psi, targets[0], targets[1], 1e-7)
    if first is None:
        return None
    b1, b2 = first
    bases = [b1, b2]
    for t in targets[2:]:
        m0 = _branch_basis(psi, targets[0], b1[0], t)
        m1 = _branch_basis(psi, targets[0], b1[1], t)
        if m0 is None or m1 is None or abs(np.vdot(m0, m1)) > 1e-6:
            return None
        bases.append((m0, m1))
    # branch 0 carries the larger |<0|mu>| on the first target
    if abs(bases[0][1][0]) > abs(bases[0][0][0]) + 1e-12:
        bases = [(m1, m0) for m0, m1 in bases]
    bases = tuple((_canon(m0), _canon(m1)) for m0, m1 in bases)
    amps, gammas = [], []
    n_anc = psi.n_qubits - len(targets)
    for b in (0, 1):
        g = _project_branch(psi, targets, [mu[b] for mu in bases])
        a = float(np.linalg.norm(g))
        amps.append(a)
        gammas.append(DenseState(n_anc, g / a if a > 0 else g))
    if amps[0] ** 2 <= AMP_TOL or amps[1] ** 2 <= AMP_TOL:
        return None
    fid = amps[0] ** 2 + amps[1] ** 2
    if fid < 1 - tol:
        return None
    return NekomataCert(psi.n_qubits, targets, bases, complex(amps[0]), complex(amps[1]),
                        gammas[0], gammas[1], float(min(fid, 1.0)))


def make_nekomata(n_targets: int, n_ancillae: int, rng: np.random.Generator,
                  computational: bool = False) -> NekomataCert:
    """Random generalized nekomata with targets 0..n_targets-1."""
    bases = []
    for _ in range(n_targets):
        if computational:
            bases.append((np.array([1, 0], complex), np.array([0, 1], complex)))
        else:
            s = haar_state(rng)
            bases.append((s.vector, s.perp().vector))
    ang = rng.uniform(0.15, math.pi / 2 - 0.15)
    alpha = complex(math.cos(ang)) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    beta = complex(math.sin(ang)) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    g = []
    for _ in range(2):
        v = rng.normal(size=2 ** n_ancillae) + 1j * rng.normal(size=2 ** n_ancillae)
        g.append(DenseState(n_ancillae, _unit(v)))
    return NekomataCert(n_targets + n_ancillae, tuple(range(n_targets)), tuple(bases),
                        alpha, beta, g[0], g[1])


# --------------------------------------------------------- post-selections

def _postselect(state: DenseState, qubits, states) -> DenseState:
    return apply_projector(state, SepRank1(tuple(qubits), tuple(states)))


def _live(state: DenseState, q: int, s: SingleQubitState, tol: float = 1e-10) -> bool:
    return _postselect(state, (q,), (s,)).norm2() > tol


def _branches(state: DenseState, targets, bases) -> list:
    return [apply_projector(state, SepRank1(tuple(targets),
                                            tuple(SingleQubitState.from_vector(mu[b])
                                                  for mu in bases))) for b in (0, 1)]


def strip_redundant(gate: ReflectionGate, state: DenseState) -> tuple:
    """Drop gate qubits whose perpendicular axis annihilates the state.

    Returns the reduced gate (``None`` when nothing is left, i.e. the gate is
    a global sign) and the dropped qubits.
    """
    keep, dropped = [], []
    for q in gate.qubits:
        if _live(state, q, gate.theta(q).perp()):
            keep.append(q)
        else:
            dropped.append(q)
    return (gate.restricted(keep) if keep else None), dropped


def _recertify(state: DenseState, targets, post_q, post_s) -> NekomataCert | None:
    st = _postselect(state, post_q, post_s) if post_q else state
    if st.norm2() <= 1e-12:
        return None
    return certify_nekomata(st.normalize(), targets)


def postgate_certificate(cert: NekomataCert, gate: ReflectionGate) -> GnspCert:
    """Separable post-selection after one reflection gate keeping n - floor(k/2) targets."""
    psi = cert.reconstruct().normalize()
    phi = apply_reflection(psi, gate)
    T = list(cert.targets)
    k = len(set(gate.qubits) & set(T))
    n = len(T)
    g, dropped = strip_redundant(gate, psi)
    notes = [f"redundant qubits stripped: {dropped}"] if dropped else []
    plan = _plan(psi, cert, g, T)
    q_list, s_list, targets, met = plan
    inner = _recertify(phi, targets, q_list, s_list)
    if inner is None:
        raise SimulationError("post-gate certificate failed verification")
    need = n - k // 2
    if not met:
        notes.append("one-target case: no ancilla post-selection keeps both branches; "
                     "the gate's target is dropped")
    return GnspCert(tuple(q_list), tuple(s_list), inner, n, k,
                    met and len(inner.targets) >= need, notes)


def _plan(psi: DenseState, cert: NekomataCert, g, T) -> tuple:
    if g is None:
        return [], [], T, True
    basis = dict(zip(cert.targets, cert.bases))
    inT = [q for q in g.qubits if q in T]
    if not inT:
        return [], [], T, True
    if len(inT) >= 2:
        for t in inT:
            ov = abs(np.vdot(g.theta(t).vector, basis[t][0]))
            if 1e-9 < ov < 1 - 1e-9:
                return [t], [g.theta(t).perp()], [q for q in T if q != t], True
        return [], [], T, True
    t = inT[0]
    bases = [basis[q] for q in T]
    res = _one_target(psi, g, t, T, bases)
    if res is not None:
        return res[0], res[1], T, True
    return [], [], [q for q in T if q != t], False


def _one_target(psi: DenseState, g: ReflectionGate, t: int, T, bases):
    """Recursive ancilla post-selection for a gate holding a single target."""
    rest = [q for q in g.qubits if q != t]
    if not rest:
        return [], []
    q = rest[0]
    th = g.theta(q)
    if not _live(psi, q, th):
        return [], []          # gate acts as identity on psi
    if not _live(psi, q, th.perp()):
        return _one_target(psi, g.restricted([p for p in g.qubits if p != q]), t, T, bases)
    br = _branches(psi, T, bases)
    for s, shrink in ((th.perp(), False), (th, True)):
        if all(_postselect(b, (q,), (s,)).norm2() > 1e-10 for b in br):
            sub = _postselect(psi, (q,), (s,)).normalize()
            if not shrink:
                return [q], [s]
            inner = _one_target(sub, g.restricted([p for p in g.qubits if p != q]), t, T, bases)
            if inner is not None:
                return [q] + inner[0], [s] + inner[1]
    return None


def postlayer_certificate(cert: NekomataCert, layer) -> GnspCert:
    """Compose post-gate certificates over a layer of disjoint gates."""
    layer = tuple(layer)
    seen = set()
    for g in layer:
        if seen & set(g.qubits):
            raise ValueError("layer gates overlap")
        seen |= set(g.qubits)
    T0 = list(cert.targets)
    n0 = len(seen & set(T0))
    cur = cert
    qs, ss, notes, met = [], [], [], True
    for g in layer:
        gc = postgate_certificate(cur, g)
        qs += list(gc.post_qubits)
        ss += list(gc.post_states)
        notes += gc.notes
        met = met and gc.bound_met
        cur = gc.inner
    psi = cert.reconstruct().normalize()
    phi = psi
    for g in layer:
        phi = apply_reflection(phi, g)
    inner = _recertify(phi, cur.targets, qs, ss)
    if inner is None:
        raise SimulationError("post-layer certificate failed verification")
    need = len(T0) - n0 // 2
    return GnspCert(tuple(qs), tuple(ss), inner, len(T0), n0,
                    met and len(inner.targets) >= need, notes)


# --------------------------------------------------------------- depth 1

def _span_residual(block_out: np.ndarray, v0: np.ndarray, v1: np.ndarray) -> float:
    A = np.stack([v0, v1], axis=1)
    coef, *_ = np.linalg.lstsq(A, block_out, rcond=None)
    return float(np.linalg.norm(A @ coef - block_out))


def _prod_vec(states) -> np.ndarray:
    v = np.ones(1, dtype=complex)
    for s in states:
        v = np.kron(v, s.vector)
    return v


def depth1_gnsp_check(circuit: ReflectionCircuit, n_targets: int = 3, samples: int = 20,
                      seed: int = 0, x=None) -> dict:
    """Span witness per gate plus a sampled negative control for GNSP certificates."""
    if circuit.depth > 1:
        raise ValueError("expected a depth-1 circuit")
    x = tuple([0] * circuit.n_inputs) if x is None else tuple(x)
    psi = run(circuit, x)
    residuals = []
    for g in (circuit.layers[0] if circuit.layers else ()):
        qs = list(g.qubits)
        v0 = _prod_vec([circuit.init_state(q) if q >= circuit.n_inputs
                        else SingleQubitState(1 - x[q], x[q]) for q in qs])
        out = apply_reflection(DenseState(len(qs), v0), g.relabel({q: k for k, q in enumerate(qs)}))
        residuals.append(_span_residual(out.amplitudes, v0, g.vector()))
    rng = np.random.default_rng(seed)
    nq = circuit.n_qubits
    hits = []
    trials = 0
    for s in range(samples):
        size = int(rng.integers(0, max(nq - n_targets, 0) + 1))
        Q = sorted(int(q) for q in rng.choice(nq, size=size, replace=False)) if size else []
        etas = [haar_state(rng) for _ in Q]
        st = _postselect(psi, Q, etas) if Q else psi
        if st.norm2() <= 1e-12:
            continue
        st = st.normalize()
        cand = [q for q in range(nq) if q not in Q and schmidt_rank(st, [q], tol=1e-7) == 2]
        for T in combinations(cand, n_targets):
            trials += 1
            c = certify_nekomata(st, T)
            if c is not None:
                hits.append({"sample": s, "Q": Q, "targets": list(T), "fidelity": c.fidelity})
    return {"max_span_residual": max(residuals, default=0.0), "residuals": residuals,
            "impossible_by_structure": max(residuals, default=0.0) <= 1e-9,
            "sampled_postselections": samples, "certify_trials": trials, "hits": hits}


# --------------------------------------------------------------- depth 2

def planted_cat4() -> ReflectionCircuit:
    """|Cat_4> in two layers from |+000>."""
    return ReflectionCircuit(0, 4, (PLUS, ZERO, ZERO, ZERO),
                             ((cnot_gate(0, 1),), (cnot_gate(0, 2), cnot_gate(1, 3))))


def _refine(psi: DenseState, targets, bases, sweeps: int = 3) -> list:
    """Coordinate ascent: each target's mu is the top eigenvector of A - B."""
    bases = [tuple(b) for b in bases]
    t_all = list(targets)
    for _ in range(sweeps):
        for k, t in enumerate(t_all):
            others = [(q, bases[j]) for j, q in enumerate(t_all) if j != k]
            ops = []
            for b in (0, 1):
                v = _project_branch(psi, [q for q, _ in others], [mu[b] for _, mu in others])
                rem = [q for q in range(psi.n_qubits) if q not in [p for p, _ in others]]
                m = np.moveaxis(v.reshape([2] * len(rem)), rem.index(t), 0).reshape(2, -1)
                ops.append(m @ m.conj().T)
            w, vecs = np.linalg.eigh(ops[0] - ops[1])
            mu = vecs[:, -1]
            bases[k] = (mu, _perp(mu))
    return bases


def best_nekomata_fidelity(psi: DenseState, targets, refine: bool = True,
                           min_branch: float = MIN_BRANCH) -> tuple[float, list]:
    """Largest ||P0 psi||^2 + ||P1 psi||^2 over candidate bases on ``targets``,
    counting only bases whose two branch weights are both at least ``min_branch``."""
    psi = psi.normalize()
    cands = []
    eig = []
    for t in targets:
        qs = [q for q in range(psi.n_qubits) if q != t]
        m = np.transpose(psi.tensor(), [t] + qs).reshape(2, -1)
        w, v = np.linalg.eigh(m @ m.conj().T)
        eig.append((v[:, 1], v[:, 0]))
    for signs in product((0, 1), repeat=len(targets) - 1):
        cands.append([eig[0]] + [(e[s], e[1 - s]) for e, s in zip(eig[1:], signs)])
    first = _first_two_bases(psi, targets[0], targets[1], 1e-7) if len(targets) >= 2 else None
    if first is not None:
        b = [first[0], first[1]]
        for t in targets[2:]:
            m0 = _branch_basis(psi, targets[0], first[0][0], t)
            m1 = _branch_basis(psi, targets[0], first[0][1], t)
            if m0 is None:
                break
            b.append((m0, m1 if m1 is not None else
                      SingleQubitState.from_vector(m0).perp().vector))
        if len(b) == len(targets):
            cands.append(b)
    cands = [[(m0, _perp(m0)) for m0, _ in c] for c in cands]
    if refine:
        cands += [_refine(psi, targets, c) for c in cands]
    best, arg = 0.0, None
    for c in cands:
        w0, w1 = branch_weights(psi, targets, c)
        # a vanishing branch would make every product state a perfect hit
        if min(w0, w1) < min_branch:
            continue
        if w0 + w1 > best:
            best, arg = w0 + w1, c
    return min(best, 1.0), arg


def depth2_neko_search(n_targets: int, n_qubits: int, seeds, max_gate_width: int = 3,
                       include_planted: bool = True, min_branch: float = MIN_BRANCH) -> dict:
    """Best generalized-nekomata fidelity over random depth-2 circuits."""
    if n_qubits > SIM_CAP:
        raise SimulationError(f"{n_qubits} qubits exceed the simulator cap {SIM_CAP}")
    if n_targets > n_qubits:
        raise ValueError("more targets than qubits")
    rows = []
    for seed in seeds:
        c = random_circuit(0, n_qubits, 2, max_gate_width, seed=seed, pool="mixed", output=None)
        psi = run(c, ())
        best, where = -1.0, None
        for T in combinations(range(n_qubits), n_targets):
            f, _ = best_nekomata_fidelity(psi, T, min_branch=min_branch)
            if f > best:
                best, where = f, list(T)
        rows.append({"seed": int(seed), "best_fidelity": best, "targets": where})
    out = {"n_targets": n_targets, "n_qubits": n_qubits, "seeds": len(rows), "rows": rows,
           "max_fidelity": max((r["best_fidelity"] for r in rows), default=None)}
    if include_planted and n_targets <= 4:
        psi = run(planted_cat4(), ())
        T = list(range(4))[:n_targets] if n_targets == 4 else None
        if T is not None:
            f, _ = best_nekomata_fidelity(psi, T)
            cert = certify_nekomata(psi, T)
            out["planted"] = {"fidelity": f, "certified": cert is not None}
    return out


def search_csv(report: dict) -> str:
    lines = ["seed,best_fidelity"]
    for r in report["rows"]:
        lines.append(f"{r['seed']},{r['best_fidelity']:.15f}")
    return "\n".join(lines) + "\n"


def state_from_dict(d: dict) -> DenseState:
    n = int(d["n_qubits"])
    amps = np.array([complex(a[0], a[1]) for a in d["amplitudes"]], dtype=complex)
    if len(amps) != 2 ** n:
        raise ValueError(f"expected {2 ** n} amplitudes, got {len(amps)}")
    return DenseState(n, amps)


def state_to_dict(state: DenseState) -> dict:
    return {"n_qubits": state.n_qubits,
            "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes]}

"""Brute-force reference implementations shared by the tests.

Everything here is built from explicit Kronecker products, independent of the
tensor-contraction code in the package.
"""

import numpy as np

I2 = np.eye(2, dtype=complex)


def ket(s):
    return np.array([s.amplitude0, s.amplitude1], dtype=complex)


def projector_on(n, qubits, states):
    mats = []
    for q in range(n):
        if q in qubits:
            v = ket(states[list(qubits).index(q)])
            mats.append(np.outer(v, v.conj()))
        else:
            mats.append(I2)
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def gate_unitary(gate, n):
    return np.eye(2 ** n, dtype=complex) - 2 * projector_on(n, gate.qubits, gate.states)


def circuit_unitary(circuit):
    n = circuit.n_qubits
    u = np.eye(2 ** n, dtype=complex)
    for layer in circuit.layers:
        for g in layer:
            u = gate_unitary(g, n) @ u
    return u


def initial_vector(circuit, x):
    v = np.ones(1, dtype=complex)
    for b in x:
        v = np.kron(v, np.eye(2)[b])
    for s in circuit.ancilla_init:
        v = np.kron(v, ket(s))
    return v


def simulate(circuit, x):
    v = initial_vector(circuit, x)
    for layer in circuit.layers:
        for g in layer:
            v = gate_unitary(g, circuit.n_qubits) @ v
    return v


def accept(circuit, x, b=1):
    v = simulate(circuit, x)
    p = projector_on(circuit.n_qubits, (circuit.output_qubit,), (circuit.output_basis[b],))
    return float(np.vdot(v, p @ v).real)


def inputs(n):
    for k in range(2 ** n):
        yield tuple((k >> i) & 1 for i in range(n))


def naive_fourier(values, n):
    """f_hat(S) = E_x[f(x) (-1)^{sum_{i in S} x_i}] by direct summation."""
    out = np.zeros(2 ** n)
    for s in range(2 ** n):
        tot = 0.0
        for k in range(2 ** n):
            tot += values[k] * (-1) ** bin(s & k).count("1")
        out[s] = tot / 2 ** n
    return out


def rand_density(dim, rng):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    r = g @ g.conj().T
    return r / np.trace(r).real


def output_bit(circuit, x, tol=1e-9):
    """Reference for the compiled output bit, by explicit matrices.

    Without a layer-3 gate on the output qubit: is <mu1| component nonzero.
    With one, G = I - 2|v><v|, split on the control part S: if the state has
    weight outside |v_S> the bit asks for mu1 there, else G acts on the output
    qubit as a reflection and the bit asks for the reflected mu1.
    """
    n, t = circuit.n_qubits, circuit.output_qubit
    mu1 = circuit.output_basis[1]
    v = initial_vector(circuit, x)
    for layer in circuit.layers[:2]:
        for g in layer:
            v = gate_unitary(g, n) @ v
    last = circuit.layers[2] if len(circuit.layers) > 2 else ()
    G = next((g for g in last if t in g.qubits), None)
    p_mu1 = projector_on(n, (t,), (mu1,))
    if G is None:
        return int(np.vdot(v, p_mu1 @ v).real > tol)
    S = [q for q in G.qubits if q != t]
    comp = np.eye(2 ** n) - projector_on(n, S, [G.states[list(G.qubits).index(q)] for q in S])
    w = comp @ v
    if np.vdot(w, w).real > tol:
        u = p_mu1 @ w
        return int(np.vdot(u, u).real > tol)
    th = ket(G.states[list(G.qubits).index(t)])
    m = ket(mu1)
    m2 = m - 2 * th * np.vdot(th, m)
    p = np.kron(np.kron(np.eye(2 ** t), np.outer(m2, m2.conj())), np.eye(2 ** (n - t - 1)))
    return int(np.vdot(v, p @ v).real > tol)

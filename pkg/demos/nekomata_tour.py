"""Cat states, a post-selection certificate, and the planted depth-2 search."""

from qactools.circuit_ir import PLUS, ReflectionGate
from qactools.nekomata import (certify_nekomata, depth2_neko_search, planted_cat4,
                               postgate_certificate)
from qactools.statevec import cat_state, run

cert = certify_nekomata(cat_state(4), range(4))
print("Cat_4 certified, alpha", round(abs(cert.alpha), 4), "beta", round(abs(cert.beta), 4))

# a |++> reflection on two targets; post-selecting one of them keeps three targets
gate = ReflectionGate((0, 1), (PLUS, PLUS))
gc = postgate_certificate(cert, gate)
print("post-select qubits", gc.post_qubits, "->", gc.n_targets, "targets left,",
      "bound met:", gc.bound_met)

psi = run(planted_cat4(), ())
print("planted circuit is a 4-nekomata:", certify_nekomata(psi, range(4)) is not None)

# random depth-2 circuits on 6 qubits: how close do they get to a 4-nekomata?
rep = depth2_neko_search(4, 6, range(30))
best = sorted(rep["rows"], key=lambda r: -r["best_fidelity"])[:3]
for r in best:
    print("seed", r["seed"], "fidelity", round(r["best_fidelity"], 4), "targets", r["targets"])
print("planted fidelity", rep["planted"]["fidelity"])

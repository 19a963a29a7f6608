"""Walk through one depth-3 circuit: simulate, clean up, compile, compare."""

from qactools.ac0_compile import compile_depth3_output
from qactools.boolfn import to_prefix, truth_table
from qactools.circuit_ir import random_circuit
from qactools.cleanup import cleanup, verify_cleanup
from qactools.statevec import acceptance_table

SEED = 4

# a raw circuit: layer-1 gates may hold several inputs
raw = random_circuit(5, 4, 3, 3, seed=SEED, max_gates=8)
print("raw circuit:", raw.n_inputs, "inputs,", raw.n_ancillae, "ancillae,", raw.n_gates, "gates")
print("cleaned up already?", raw.is_cleaned_up())

res = cleanup(raw)
check = verify_cleanup(raw, res)
print("survivors", res.survivors, "fixed", res.classical_fixed,
      "quantum pairs", [p.pair for p in res.quantum_pairs])
print("clean-up verified:", check["ok"])

# compile the output bit of the cleaned circuit to an OR-AND-OR formula
c = res.circuit
rep = compile_depth3_output(c)
print("declared bound", rep.declared_bound, "prefold size", rep.prefold_size)
print("gates", rep.measured_size, "alternation depth", rep.measured_depth)
for name, count, bound in rep.stages:
    print(f"  {name:16s} {count:6d} <= {bound}")

# the formula computes the activation: is the accept probability nonzero?
probs = acceptance_table(c)
quantum = (probs > 1e-9).astype(float)
classical = truth_table(rep.bool_circuit, c.n_inputs).values
print("accept probabilities seen:", sorted({round(float(p), 4) for p in probs}))
print("quantum   ", "".join(str(int(v)) for v in quantum))
print("classical ", "".join(str(int(v)) for v in classical))
print("agree on every input:", (quantum == classical).all())

text = to_prefix(rep.bool_circuit)
print("formula (prefix, first 120 chars):", text[:120] + ("..." if len(text) > 120 else ""))

"""Fourier profile of depth-2 acceptance functions next to PARITY and tribes."""

import numpy as np

from qactools.boolfn import (FuncTable, fwht, parity_table, tail_curve, to_pm1,
                             total_influence, tribes, truth_table)
from qactools.circuit_ir import random_circuit
from qactools.depth2_analysis import case_dichotomy, removal_check
from qactools.statevec import acceptance_table

n = 6


def show(name, table):
    spec = fwht(to_pm1(table))
    tails = ", ".join(f"{w:.3f}" for w in tail_curve(spec))
    print(f"{name:12s} I={total_influence(spec):6.3f}  tails [{tails}]")


show("parity", parity_table(n))
show("tribes(3,2)", truth_table(tribes(3, 2), n))

# random cleaned-up depth-2 circuits sit far from parity at the top level
tops = []
for seed in range(20):
    c = random_circuit(n, 3, 2, 3, cleaned_up=True, seed=seed, max_gates=7)
    f = FuncTable(n, acceptance_table(c))
    spec = fwht(to_pm1(f))
    tops.append(abs(spec.coeffs[-1]))
    if seed < 4:
        show(f"circuit {seed}", f)
        d = case_dichotomy(c)
        print("   dichotomy case", d.get("case"), "holds", d["holds"],
              "| gate-removal bound holds", removal_check(c, b_threshold=2)["holds"])
print("largest |f^([n])| over 20 circuits:", round(float(np.max(tops)), 4))

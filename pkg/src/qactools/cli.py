"""Command-line front end.

Exit codes: 0 when every asserted property holds, 1 on a property violation,
2 on usage or input errors.  Reports are JSON with sorted keys and carry the
package version and the input circuit's content hash; no timestamps, so the
same argv and seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .circuit_ir import (CircuitError, ReflectionCircuit, SingleQubitState, check_valid,
                         load, random_circuit, serialize, validate)
from .statevec import (DEFAULT_TOL, AMBIGUOUS_BAND, Complement, Identity,
                       SepRank1, SimulationError, Tensor, Zero, accept_prob, apply_projector,
                       output_projector, run)


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ helpers

def _plain(o):
    if isinstance(o, dict):
        return {str(k): _plain(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_plain(v) for v in o]
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, (complex, np.complexfloating)):
        return [float(o.real), float(o.imag)]
    if isinstance(o, np.ndarray):
        return _plain(o.tolist())
    return o


def _report(command: str, body: dict, circuit: ReflectionCircuit | None = None) -> dict:
    out = {"tool": "qactools", "version": __version__, "command": command}
    if circuit is not None:
        out["circuit_hash"] = circuit.content_hash()
    out.update(body)
    return out


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj: dict) -> None:
    _emit(args, json.dumps(_plain(obj), indent=1, sort_keys=True) + "\n")


def _circuit(path: str) -> ReflectionCircuit:
    c = load(path)
    check_valid(c)
    return c


def _bits(text: str | None, n: int) -> tuple:
    if text is None:
        if n:
            raise UsageError(f"--input with {n} bits is required")
        return ()
    text = text.strip()
    if len(text) != n or any(ch not in "01" for ch in text):
        raise UsageError(f"--input must be {n} characters of 0/1 (bit i is x_i)")
    return tuple(int(ch) for ch in text)


def _ints(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def _state(v) -> SingleQubitState:
    return SingleQubitState(complex(*v[0]), complex(*v[1]))


def projector_from_dict(d: dict):
    """JSON projector: seprank1 / complement / tensor / identity / zero."""
    kind = d.get("type")
    if kind == "seprank1":
        return SepRank1(tuple(d["qubits"]), tuple(_state(s) for s in d["states"]))
    if kind == "complement":
        return Complement(projector_from_dict(d["child"]))
    if kind == "tensor":
        return Tensor(tuple(projector_from_dict(c) for c in d["children"]))
    if kind == "identity":
        return Identity(tuple(d.get("qubits", ())))
    if kind == "zero":
        return Zero(tuple(d.get("qubits", ())))
    raise UsageError(f"unknown projector type {kind!r}")


def _tol(args) -> float:
    t = args.tol if getattr(args, "tol", None) is not None else DEFAULT_TOL
    if not t > 0:
        raise UsageError("tolerance must be positive")
    return t


# -------------------------------------------------------------- subcommands

def cmd_validate(args) -> int:
    c = load(args.circuit)
    problems = validate(c)
    _emit_json(args, _report("validate", {"valid": not problems, "violations": problems}, c))
    return 0 if not problems else 1


def cmd_simulate(args) -> int:
    c = _circuit(args.circuit)
    x = _bits(args.input, c.n_inputs)
    st = run(c, x)
    body = {"input": list(x), "n_qubits": c.n_qubits, "norm2": st.norm2(),
            "nonzero_amplitudes": int((np.abs(st.amplitudes) > 1e-12).sum())}
    if c.output_qubit is not None:
        body["accept_prob"] = accept_prob(c, x)
    if args.amplitudes:
        body["amplitudes"] = st.dump().splitlines()
    _emit_json(args, _report("simulate", body, c))
    return 0


def cmd_activation(args) -> int:
    c = _circuit(args.circuit)
    x = _bits(args.input, c.n_inputs)
    tol = _tol(args)
    if args.projector:
        with open(args.projector) as fh:
            proj = projector_from_dict(json.load(fh))
    else:
        if c.output_qubit is None:
            raise UsageError("circuit has no output; pass --projector")
        proj = output_projector(c, args.bit)
    v = apply_projector(run(c, x), proj).norm2()
    lo, hi = AMBIGUOUS_BAND
    _emit_json(args, _report("activation", {"input": list(x), "norm2": v, "active": v > tol,
                                            "ambiguous": lo <= v <= hi, "tol": tol}, c))
    return 0


def cmd_cleanup(args) -> int:
    from .cleanup import cleanup, verify_cleanup
    c = _circuit(args.circuit)
    res = cleanup(c, args.mode)
    ver = verify_cleanup(c, res)
    if args.write:
        with open(args.write, "w") as fh:
            fh.write(serialize(res.circuit, indent=1))
    body = {"result": res.to_dict(), "verification": ver,
            "cleaned_hash": res.circuit.content_hash()}
    _emit_json(args, _report("cleanup", body, c))
    return 0 if ver["ok"] else 1


def _compile(args, verify: bool) -> int:
    from .ac0_compile import compile_depth3_output
    from .boolfn import to_prefix
    c = _circuit(args.circuit)
    rep = compile_depth3_output(c, verify=verify, tol=_tol(args))
    if getattr(args, "write", None):
        with open(args.write, "w") as fh:
            fh.write(to_prefix(rep.bool_circuit) + "\n")
    d = rep.to_dict()
    _emit_json(args, _report("verify" if args.command == "verify" else "compile", d, c))
    return 0 if rep.ok else 1


def cmd_compile(args) -> int:
    return _compile(args, args.verify)


def cmd_verify(args) -> int:
    return _compile(args, True)


def cmd_fourier(args) -> int:
    from .boolfn import (FuncTable, coordinate_influences, fwht, spectrum_csv, tail_csv,
                         total_influence)
    from .statevec import acceptance_table
    c = _circuit(args.circuit)
    if c.output_qubit is None:
        raise UsageError("circuit has no output declaration")
    f = FuncTable(c.n_inputs, acceptance_table(c))
    spec = fwht(f)
    if args.format == "csv":
        if args.what == "spectrum":
            _emit(args, spectrum_csv(spec))
        elif args.what == "tails":
            _emit(args, tail_csv(spec))
        else:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["coordinate", "influence"])
            for i, v in enumerate(coordinate_influences(f)):
                w.writerow([i, repr(float(v))])
            _emit(args, buf.getvalue())
        return 0
    from .boolfn import tail_curve
    body = {"n": c.n_inputs, "coefficients": [float(v) for v in spec.coeffs],
            "tails": tail_curve(spec), "total_influence": total_influence(spec),
            "influences": [float(v) for v in coordinate_influences(f)]}
    _emit_json(args, _report("fourier", body, c))
    return 0


def _influence_row(job) -> dict:
    from .boolfn import FuncTable, fwht, tail_curve, total_influence
    from .depth2_analysis import case_dichotomy, removal_check
    from .statevec import acceptance_table
    seed, n, a, width, eps = job
    c = random_circuit(n, a, 2, width, cleaned_up=True, seed=seed, output="last")
    rem = removal_check(c, eps=eps)
    dich = case_dichotomy(c, eps)
    spec = fwht(FuncTable(n, acceptance_table(c)))
    return {"seed": seed, "circuit_hash": c.content_hash(), "removal_holds": rem["holds"],
            "removal_measured": rem["measured"], "removal_bound": rem["bound"],
            "case": dich.get("case"), "dichotomy_holds": dich["holds"],
            "total_influence": total_influence(spec), "tails": tail_curve(spec)}


def _map(fn, jobs, n_jobs: int) -> list:
    if n_jobs <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_jobs) as ex:
        return list(ex.map(fn, jobs))


def cmd_influence_exp(args) -> int:
    seeds = range(args.seed, args.seed + args.count)
    jobs = [(s, args.inputs, args.ancillae, args.width, args.eps) for s in seeds]
    rows = _map(_influence_row, jobs, args.jobs)
    ok = all(r["removal_holds"] and r["dichotomy_holds"] for r in rows)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["seed", "case", "total_influence", "removal_measured", "removal_bound",
                    "removal_holds", "dichotomy_holds"])
        for r in rows:
            w.writerow([r["seed"], r["case"], repr(r["total_influence"]),
                        repr(r["removal_measured"]), repr(r["removal_bound"]),
                        int(r["removal_holds"]), int(r["dichotomy_holds"])])
        _emit(args, buf.getvalue())
    else:
        body = {"seed": args.seed, "count": args.count, "inputs": args.inputs,
                "ancillae": args.ancillae, "eps": args.eps, "all_hold": ok, "rows": rows}
        _emit_json(args, _report("influence-exp", body))
    return 0 if ok else 1


def cmd_killsets(args) -> int:
    from .depth2_analysis import kill_sets, onesided_assignment
    c = _circuit(args.circuit)
    ks = kill_sets(c)
    one = onesided_assignment(c)
    _emit_json(args, _report("killsets", {"kill_sets": ks.to_dict(), "onesided": one}, c))
    return 0 if ks.verified and one["holds"] else 1


def cmd_restrict_build(args) -> int:
    from .depth2_analysis import restriction_builder
    c = _circuit(args.circuit)
    r = restriction_builder(c, frac_b=args.frac_b, frac_r1=args.frac_r1)
    _emit_json(args, _report("restrict-build", r, c))
    # infeasibility is a finding, not a violation; a feasible R must verify
    return 1 if r["feasible"] and not r["verified"] else 0


def cmd_neko_certify(args) -> int:
    from .nekomata import certify_nekomata, state_from_dict
    with open(args.state) as fh:
        d = json.load(fh)
    circuit = None
    if "layers" in d:
        from .circuit_ir import from_dict
        circuit = from_dict(d)
        check_valid(circuit)
        st = run(circuit, _bits(args.input, circuit.n_inputs))
    else:
        st = state_from_dict(d)
    targets = _ints(args.targets)
    cert = certify_nekomata(st, targets, tol=args.fid_tol)
    body = {"targets": targets, "certified": cert is not None,
            "certificate": None if cert is None else cert.to_dict()}
    _emit_json(args, _report("neko-certify", body, circuit))
    return 0 if cert is not None else 1


def _neko_row(job) -> dict:
    from .nekomata import depth2_neko_search
    seed, nt, nq, width = job
    r = depth2_neko_search(nt, nq, [seed], width, include_planted=False)
    return r["rows"][0]


def cmd_neko_search(args) -> int:
    from .nekomata import depth2_neko_search, search_csv
    seeds = list(range(args.seed, args.seed + args.count))
    rows = _map(_neko_row, [(s, args.targets, args.qubits, args.width) for s in seeds],
                args.jobs)
    rep = depth2_neko_search(args.targets, args.qubits, [], args.width)
    rep.update(rows=rows, seeds=len(rows),
               max_fidelity=max((r["best_fidelity"] for r in rows), default=None))
    ok = rep.get("planted", {}).get("fidelity", 1.0) >= 1 - 1e-10
    if args.format == "csv":
        _emit(args, search_csv(rep))
    else:
        _emit_json(args, _report("neko-search", {"seed": args.seed, **rep}))
    return 0 if ok else 1


def cmd_gen(args) -> int:
    c = random_circuit(args.inputs, args.ancillae, args.depth, args.width,
                       cleaned_up=args.cleaned_up, seed=args.seed, max_gates=args.max_gates,
                       pool=args.pool, output=None if args.no_output else "last")
    _emit(args, serialize(c, indent=1) + "\n")
    return 0


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qactools", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"qactools {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("--tol", type=float, help="activation tolerance (default 1e-9 or QAC_TOL)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, circuit=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if circuit:
            sp.add_argument("circuit", help="circuit JSON file")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "check a circuit file")
    sp = add("simulate", cmd_simulate, "run a circuit on one input")
    sp.add_argument("--input", help="input bits, x_0 first")
    sp.add_argument("--amplitudes", action="store_true", help="include nonzero amplitudes")
    sp = add("activation", cmd_activation, "projector activation on one input")
    sp.add_argument("--input")
    sp.add_argument("--projector", help="projector JSON (default: output outcome --bit)")
    sp.add_argument("--bit", type=int, choices=(0, 1), default=1)
    sp = add("cleanup", cmd_cleanup, "clean-up transformation")
    sp.add_argument("--mode", default="STRUCTURAL", type=str.upper,
                    choices=("STRUCTURAL", "PARITY", "MAJORITY"))
    sp.add_argument("--write", help="also write the cleaned circuit here")
    sp = add("compile", cmd_compile, "compile a depth-<=3 output to a boolean circuit")
    sp.add_argument("--verify", action="store_true", help="check against the statevector oracle")
    sp.add_argument("--write", help="write the boolean circuit (prefix form) here")
    sp = add("verify", cmd_verify, "compile and oracle-check")
    sp.add_argument("--write")
    sp = add("fourier", cmd_fourier, "Fourier spectrum of the acceptance function")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--what", choices=("spectrum", "tails", "influence"), default="spectrum")
    sp = add("influence-exp", cmd_influence_exp, "depth-2 inequality pipeline over seeds",
             circuit=False)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--inputs", type=int, default=5)
    sp.add_argument("--ancillae", type=int, default=3)
    sp.add_argument("--width", type=int, default=3)
    sp.add_argument("--eps", type=float, default=0.25)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--jobs", type=int, default=1)
    add("killsets", cmd_killsets, "kill sets and the one-sided assignment")
    sp = add("restrict-build", cmd_restrict_build, "restriction killing layer-2 activations")
    sp.add_argument("--frac-b", type=float, default=0.1)
    sp.add_argument("--frac-r1", type=float, default=0.75)
    sp = add("neko-certify", cmd_neko_certify, "certify a generalized nekomata", circuit=False)
    sp.add_argument("state", help="state JSON {n_qubits, amplitudes} or a circuit JSON")
    sp.add_argument("--targets", required=True, help="comma-separated target qubits")
    sp.add_argument("--input", help="input bits when the file is a circuit")
    sp.add_argument("--fid-tol", type=float, default=1e-8)
    sp = add("neko-search", cmd_neko_search, "random depth-2 nekomata search", circuit=False)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--targets", type=int, default=4)
    sp.add_argument("--qubits", type=int, default=6)
    sp.add_argument("--width", type=int, default=3)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--jobs", type=int, default=1)
    sp = add("gen", cmd_gen, "random circuit generator", circuit=False)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--inputs", type=int, required=True)
    sp.add_argument("--ancillae", type=int, default=0)
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--width", type=int, default=3)
    sp.add_argument("--max-gates", type=int)
    sp.add_argument("--pool", choices=("mixed", "haar", "classical"), default="mixed")
    sp.add_argument("--cleaned-up", action="store_true")
    sp.add_argument("--no-output", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 2
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    if getattr(args, "tol", None) is not None and not args.tol > 0:
        print("error: tolerance must be positive", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except (UsageError, CircuitError, SimulationError, OSError, ValueError, KeyError,
            TypeError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

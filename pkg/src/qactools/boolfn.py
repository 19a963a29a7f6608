"""Boolean functions on {0,1}^n: Fourier analysis and a small circuit AST.

Tables are indexed by an integer k whose bit i is x_i; Fourier coefficients
are indexed by a subset bitmask with bit i for coordinate i.  The characters
are chi_S(x) = (-1)^(sum of x_i over S).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np


@dataclass(frozen=True, eq=False)
class FuncTable:
    n: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (2 ** self.n,):
            raise ValueError(f"table length {v.shape} != 2^{self.n}")
        if not np.all(np.isfinite(v)):
            raise ValueError("table values must be finite")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, n: int, fn) -> "FuncTable":
        return cls(n, np.array([fn(bits(k, n)) for k in range(2 ** n)], dtype=float))

    def __call__(self, x) -> float:
        return float(self.values[index_of(x)])


@dataclass(frozen=True, eq=False)
class FourierSpectrum:
    n: int
    coeffs: np.ndarray


def bits(k: int, n: int) -> tuple:
    return tuple((k >> i) & 1 for i in range(n))


def index_of(x) -> int:
    return sum(int(b) << i for i, b in enumerate(x))


def popcounts(n: int) -> np.ndarray:
    k = np.arange(2 ** n)
    out = np.zeros(2 ** n, dtype=int)
    for i in range(n):
        out += (k >> i) & 1
    return out


def _butterfly(values: np.ndarray, n: int) -> np.ndarray:
    a = np.asarray(values, dtype=float).reshape((2,) * n) if n else np.asarray(values, float)
    for axis in range(n):
        lo = np.take(a, 0, axis=axis)
        hi = np.take(a, 1, axis=axis)
        a = np.stack([lo + hi, lo - hi], axis=axis)
    return a.reshape(-1)


def fwht(table: FuncTable) -> FourierSpectrum:
    """f^(S) = E_x[f(x) chi_S(x)], in O(n 2^n)."""
    return FourierSpectrum(table.n, _butterfly(table.values, table.n) / 2 ** table.n)


def inverse_fwht(spec: FourierSpectrum) -> FuncTable:
    return FuncTable(spec.n, _butterfly(spec.coeffs, spec.n))


def to_pm1(table: FuncTable) -> FuncTable:
    """0/1 table -> +-1 table (0 -> 1, 1 -> -1)."""
    return FuncTable(table.n, 1 - 2 * table.values)


def l2_norm(table: FuncTable) -> float:
    return float(np.sqrt(np.mean(table.values ** 2)))


def l2_distance(f: FuncTable, g: FuncTable) -> float:
    return float(np.sqrt(np.mean((f.values - g.values) ** 2)))


def level_weights(spec: FourierSpectrum) -> np.ndarray:
    """W^k for k = 0..n."""
    return np.bincount(popcounts(spec.n), weights=spec.coeffs ** 2, minlength=spec.n + 1)


def tail_weight(spec: FourierSpectrum, k: int) -> float:
    if not 0 <= k <= spec.n + 1:
        raise ValueError(f"level {k} outside 0..{spec.n}")
    return float(level_weights(spec)[k:].sum())


def tail_curve(spec: FourierSpectrum) -> list:
    w = level_weights(spec)
    return [float(w[k:].sum()) for k in range(spec.n + 1)]


def parity_correlation(spec: FourierSpectrum) -> float:
    return float(spec.coeffs[-1])


def total_influence(spec: FourierSpectrum) -> float:
    return float((popcounts(spec.n) * spec.coeffs ** 2).sum())


def coordinate_influences(table: FuncTable) -> np.ndarray:
    """Inf_i = E_x[(|f(x) - f(x with bit i flipped)| / 2)^2]."""
    k = np.arange(2 ** table.n)
    v = table.values
    return np.array([np.mean((np.abs(v - v[k ^ (1 << i)]) / 2) ** 2) for i in range(table.n)])


def total_influence_combinatorial(table: FuncTable) -> float:
    return float(coordinate_influences(table).sum())


@dataclass(frozen=True)
class RandomValuedRestriction:
    """Live set J and values z on the complement."""

    n: int
    J: frozenset
    z: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "J", frozenset(int(i) for i in self.J))
        object.__setattr__(self, "z", {int(i): int(b) for i, b in dict(self.z).items()})
        if set(self.J) | set(self.z) != set(range(self.n)) or set(self.J) & set(self.z):
            raise ValueError("J and dom(z) must partition the coordinates")


def restrict_table(table: FuncTable, r: RandomValuedRestriction) -> FuncTable:
    """f|_{J,z} as a function on all n coordinates (coordinates outside J ignored)."""
    k = np.arange(2 ** table.n)
    live = sum(1 << i for i in r.J)
    fixed = sum(b << i for i, b in r.z.items())
    return FuncTable(table.n, table.values[(k & live) | fixed])


def all_restrictions(n: int, J: frozenset):
    """Every z for a fixed live set J."""
    free = [i for i in range(n) if i not in J]
    for k in range(2 ** len(free)):
        yield RandomValuedRestriction(n, J, {i: (k >> t) & 1 for t, i in enumerate(free)})


def restricted_weight_identity(table: FuncTable, j_dist) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of E_{J,z}[f|^(S)^2] = sum_T f^(T)^2 Pr[T cap J = S].

    ``j_dist`` is a list of (J, probability) pairs; z is uniform.
    """
    n = table.n
    spec = fwht(table).coeffs
    lhs = np.zeros(2 ** n)
    rhs = np.zeros(2 ** n)
    masks = np.arange(2 ** n)
    for J, p in j_dist:
        jm = sum(1 << i for i in J)
        rs = list(all_restrictions(n, frozenset(J)))
        for r in rs:
            lhs += p / len(rs) * fwht(restrict_table(table, r)).coeffs ** 2
        np.add.at(rhs, masks & jm, p * spec ** 2)
    return lhs, rhs


def tails_closeness(f: FuncTable, g: FuncTable) -> dict:
    """|W>=k[f] - W>=k[g]| for all k, with the bound 2||f-g||_2."""
    cf, cg = tail_curve(fwht(f)), tail_curve(fwht(g))
    gaps = [abs(a - b) for a, b in zip(cf, cg)]
    d = l2_distance(f, g)
    return {"gaps": gaps, "max_gap": max(gaps), "bound": 2 * d, "bound_squared_form": 2 * d * d}


# ------------------------------------------------------------- circuit AST

class BoolCircuit:
    def size(self) -> int:
        """Number of AND/OR gates."""
        return 0

    def node_count(self) -> int:
        return 1

    def depth(self) -> int:
        return _alt_depth(self)

    def max_index(self) -> int:
        return -1


@dataclass(frozen=True)
class Const(BoolCircuit):
    bit: int


@dataclass(frozen=True)
class Lit(BoolCircuit):
    index: int
    negated: bool = False

    def max_index(self):
        return self.index


@dataclass(frozen=True)
class _Gate(BoolCircuit):
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise ValueError(f"{type(self).__name__} needs at least one child")

    def size(self):
        return 1 + sum(c.size() for c in self.children)

    def node_count(self):
        return 1 + sum(c.node_count() for c in self.children)

    def max_index(self):
        return max(c.max_index() for c in self.children)


class And(_Gate):
    pass


class Or(_Gate):
    pass


TRUE, FALSE = Const(1), Const(0)


def _alt_depth(node: BoolCircuit, parent: type | None = None) -> int:
    if not isinstance(node, _Gate):
        return 0
    bump = 0 if type(node) is parent else 1
    return bump + max(_alt_depth(c, type(node)) for c in node.children)


def negate(node: BoolCircuit) -> BoolCircuit:
    """Complement pushed to the literals (De Morgan)."""
    if isinstance(node, Const):
        return Const(1 - node.bit)
    if isinstance(node, Lit):
        return Lit(node.index, not node.negated)
    if isinstance(node, And):
        return Or(tuple(negate(c) for c in node.children))
    return And(tuple(negate(c) for c in node.children))


def simplify(node: BoolCircuit) -> BoolCircuit:
    """Constant folding, flattening of nested same-kind gates, and collapse of
    single-child gates."""
    if not isinstance(node, _Gate):
        return node
    kind = type(node)
    absorbing = 0 if kind is And else 1
    kids = []
    for c in node.children:
        c = simplify(c)
        if isinstance(c, Const):
            if c.bit == absorbing:
                return Const(absorbing)
            continue
        if type(c) is kind:
            kids.extend(c.children)
        else:
            kids.append(c)
    seen, uniq = set(), []
    for c in kids:
        if c not in seen:
            seen.add(c)
            uniq.append(c)
    if isinstance(node, And):
        lits = {(c.index, c.negated) for c in uniq if isinstance(c, Lit)}
        if any((i, not neg) in lits for i, neg in lits):
            return FALSE
    else:
        lits = {(c.index, c.negated) for c in uniq if isinstance(c, Lit)}
        if any((i, not neg) in lits for i, neg in lits):
            return TRUE
    if not uniq:
        return Const(1 - absorbing)
    if len(uniq) == 1:
        return uniq[0]
    return kind(tuple(uniq))


def _eval_vec(node: BoolCircuit, X: np.ndarray) -> np.ndarray:
    if isinstance(node, Const):
        return np.full(X.shape[0], bool(node.bit))
    if isinstance(node, Lit):
        col = X[:, node.index].astype(bool)
        return ~col if node.negated else col
    parts = [_eval_vec(c, X) for c in node.children]
    if isinstance(node, And):
        return np.logical_and.reduce(parts)
    return np.logical_or.reduce(parts)


def eval_circuit(bc: BoolCircuit, x) -> int:
    x = np.asarray(x, dtype=int).reshape(1, -1)
    if bc.max_index() >= x.shape[1]:
        raise ValueError("input shorter than the circuit's arity")
    return int(_eval_vec(bc, x)[0])


def input_matrix(n: int) -> np.ndarray:
    k = np.arange(2 ** n)
    return np.stack([(k >> i) & 1 for i in range(n)], axis=1) if n else np.zeros((1, 0), int)


def truth_table(bc: BoolCircuit, n: int) -> FuncTable:
    if bc.max_index() >= n:
        raise ValueError(f"circuit mentions x{bc.max_index()} but arity is {n}")
    return FuncTable(n, _eval_vec(bc, input_matrix(n)).astype(float))


def tribes(s: int, w: int) -> BoolCircuit:
    """OR of s disjoint ANDs of width w, on s*w inputs (read-once DNF)."""
    if s < 1 or w < 1:
        raise ValueError("tribes needs s, w >= 1")
    return Or(tuple(And(tuple(Lit(i * w + j) for j in range(w))) for i in range(s)))


def parity_table(n: int) -> FuncTable:
    return FuncTable(n, popcounts(n) % 2)


def majority_table(n: int) -> FuncTable:
    return FuncTable(n, (2 * popcounts(n) > n).astype(float))


# -------------------------------------------------------------- text forms

def to_prefix(node: BoolCircuit) -> str:
    if isinstance(node, Const):
        return str(node.bit)
    if isinstance(node, Lit):
        return ("~" if node.negated else "") + f"x{node.index}"
    op = "AND" if isinstance(node, And) else "OR"
    return " ".join([op, str(len(node.children))] + [to_prefix(c) for c in node.children])


def parse_prefix(text: str) -> BoolCircuit:
    toks = text.split()
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise ValueError("unexpected end of prefix expression")
        tok = toks[pos]
        pos += 1
        if tok in ("AND", "OR"):
            k = int(toks[pos])
            pos += 1
            kids = tuple(take() for _ in range(k))
            return And(kids) if tok == "AND" else Or(kids)
        if tok in ("0", "1"):
            return Const(int(tok))
        neg = tok.startswith("~")
        return Lit(int(tok.lstrip("~")[1:]), neg)

    out = take()
    if pos != len(toks):
        raise ValueError("trailing tokens in prefix expression")
    return out


def dnf_terms(node: BoolCircuit) -> list | None:
    """Terms of a DNF-shaped circuit as lists of literals, else None."""
    if isinstance(node, Const):
        return [[]] if node.bit else []
    if isinstance(node, Lit):
        return [[node]]
    if isinstance(node, And) and all(isinstance(c, Lit) for c in node.children):
        return [list(node.children)]
    if isinstance(node, Or):
        out = []
        for c in node.children:
            t = dnf_terms(c)
            if t is None or len(t) != 1:
                return None
            out.extend(t)
        return out
    return None


def to_dimacs_dnf(node: BoolCircuit, n: int) -> str:
    terms = dnf_terms(node)
    if terms is None:
        raise ValueError("circuit is not in DNF shape")
    lines = [f"p dnf {n} {len(terms)}"]
    for t in terms:
        lits = [str(-(l.index + 1) if l.negated else l.index + 1) for l in t]
        lines.append(" ".join(lits + ["0"]))
    return "\n".join(lines) + "\n"


def spectrum_csv(spec: FourierSpectrum) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["mask", "size", "coefficient"])
    for s, (c, k) in enumerate(zip(spec.coeffs, popcounts(spec.n))):
        w.writerow([s, int(k), repr(float(c))])
    return buf.getvalue()


def tail_csv(spec: FourierSpectrum) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "tail_weight"])
    for k, v in enumerate(tail_curve(spec)):
        w.writerow([k, repr(v)])
    return buf.getvalue()


def subsets_of_size(n: int, k: int):
    for c in combinations(range(n), k):
        yield sum(1 << i for i in c)


def maclaurin_bound(deltas, ell: int, scale: float = 64.0) -> float:
    return (scale * float(np.sum(deltas))) ** ell / math.factorial(ell)

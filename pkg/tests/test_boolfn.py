import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qactools.boolfn import (FALSE, TRUE, And, Const, FuncTable, Lit, Or, RandomValuedRestriction,
                             all_restrictions, coordinate_influences, dnf_terms, eval_circuit,
                             fwht, inverse_fwht, level_weights, majority_table, maclaurin_bound,
                             negate, parity_table, parse_prefix, restrict_table,
                             restricted_weight_identity, simplify, tail_curve, tail_weight,
                             tails_closeness, to_dimacs_dnf, to_pm1, to_prefix, total_influence,
                             total_influence_combinatorial, tribes, truth_table)

import oracle


def test_constant_one_spectrum():
    c = fwht(FuncTable(3, np.ones(8))).coeffs
    assert c[0] == 1 and np.all(c[1:] == 0)


def test_fwht_matches_naive_n8(rng):
    v = rng.normal(size=256)
    assert np.allclose(fwht(FuncTable(8, v)).coeffs, oracle.naive_fourier(v, 8), atol=1e-10)


def test_table_validation():
    with pytest.raises(ValueError):
        FuncTable(2, np.ones(3))
    with pytest.raises(ValueError):
        FuncTable(1, np.array([0.0, np.nan]))


@given(n=st.integers(0, 7), seed=st.integers(0, 10 ** 6))
def test_parseval_and_inverse(n, seed):
    v = np.random.default_rng(seed).normal(size=2 ** n)
    spec = fwht(FuncTable(n, v))
    assert float((spec.coeffs ** 2).sum()) == pytest.approx(float(np.mean(v ** 2)), abs=1e-9)
    assert np.allclose(inverse_fwht(spec).values, v, atol=1e-10)


@given(n=st.integers(1, 7), seed=st.integers(0, 10 ** 6))
def test_spectral_equals_combinatorial_influence(n, seed):
    v = np.random.default_rng(seed).integers(0, 2, size=2 ** n)
    f = to_pm1(FuncTable(n, v))
    assert total_influence(fwht(f)) == pytest.approx(total_influence_combinatorial(f), abs=1e-9)


def test_tribes_2_2_influence_is_three_halves():
    f = to_pm1(truth_table(tribes(2, 2), 4))
    assert np.allclose(coordinate_influences(f), 3 / 8)
    assert total_influence(fwht(f)) == pytest.approx(1.5, abs=1e-12)
    # brute force: count sensitive edges directly
    edges = 0
    for x in itertools.product((0, 1), repeat=4):
        for i in range(4):
            y = list(x)
            y[i] ^= 1
            edges += eval_circuit(tribes(2, 2), x) != eval_circuit(tribes(2, 2), y)
    assert edges / 16 == 1.5


def test_dictator_and_parity():
    f = to_pm1(FuncTable.from_function(3, lambda x: x[1]))
    assert total_influence(fwht(f)) == pytest.approx(1)
    spec = fwht(to_pm1(parity_table(5)))
    assert tail_weight(spec, 5) == pytest.approx(1)
    assert tail_curve(spec)[0] == pytest.approx(1)
    assert level_weights(spec)[5] == pytest.approx(1)


def test_majority_table():
    m = majority_table(3)
    assert m((1, 1, 0)) == 1 and m((1, 0, 0)) == 0


def test_restriction_identity_live_everything():
    f = FuncTable(3, np.arange(8.0))
    r = RandomValuedRestriction(3, frozenset(range(3)))
    assert np.allclose(restrict_table(f, r).values, f.values)
    with pytest.raises(ValueError):
        RandomValuedRestriction(3, frozenset({0}), {1: 0})


def test_random_valued_restriction_identity_n4(rng):
    f = FuncTable(4, rng.normal(size=16))
    subsets = [frozenset(c) for k in range(5) for c in itertools.combinations(range(4), k)]
    probs = rng.random(len(subsets))
    probs /= probs.sum()
    lhs, rhs = restricted_weight_identity(f, list(zip(subsets, probs)))
    assert np.allclose(lhs, rhs, atol=1e-12)
    assert len(list(all_restrictions(4, frozenset({0, 2})))) == 4


def test_tails_closeness_bound(rng):
    f = FuncTable(5, rng.random(32))
    g = FuncTable(5, f.values + 0.01 * rng.normal(size=32))
    r = tails_closeness(f, g)
    assert r["max_gap"] <= r["bound"] + 1e-12


def test_eval_examples():
    assert eval_circuit(Const(1), (0, 1)) == 1
    dnf = Or((And((Lit(0), Lit(1))), And((Lit(2), Lit(3)))))
    assert eval_circuit(dnf, (1, 1, 0, 0)) == 1
    assert to_prefix(tribes(1, 1)) == "OR 1 AND 1 x0"
    assert simplify(tribes(1, 1)) == Lit(0)
    t = tribes(2, 2)
    assert eval_circuit(t, (0, 0, 0, 0)) == 0 and eval_circuit(t, (1, 1, 0, 0)) == 1


def random_formula(draw_rng, n, depth):
    if depth == 0 or draw_rng.random() < 0.25:
        if draw_rng.random() < 0.1:
            return Const(int(draw_rng.integers(2)))
        return Lit(int(draw_rng.integers(n)), bool(draw_rng.integers(2)))
    kind = And if draw_rng.random() < 0.5 else Or
    return kind(tuple(random_formula(draw_rng, n, depth - 1)
                      for _ in range(int(draw_rng.integers(1, 4)))))


@given(seed=st.integers(0, 10 ** 6), n=st.integers(1, 6))
def test_de_morgan_and_simplify_preserve_semantics(seed, n):
    f = random_formula(np.random.default_rng(seed), n, 3)
    t = truth_table(f, n).values
    assert np.array_equal(truth_table(negate(f), n).values, 1 - t)
    assert np.array_equal(truth_table(simplify(f), n).values, t)
    assert simplify(f).depth() <= f.depth()
    assert parse_prefix(to_prefix(f)) == f


def test_depth_and_size():
    f = Or((And((Lit(0), Lit(1))), Lit(2)))
    assert f.depth() == 2 and f.size() == 2 and f.node_count() == 5
    assert Or((Or((Lit(0), Lit(1))), Lit(2))).depth() == 1
    assert TRUE.depth() == 0 and FALSE.size() == 0


def test_dimacs_export():
    f = Or((And((Lit(0), Lit(1, True))), And((Lit(2),))))
    assert to_dimacs_dnf(f, 3) == "p dnf 3 2\n1 -2 0\n3 0\n"
    assert dnf_terms(And((Or((Lit(0), Lit(1))),))) is None
    with pytest.raises(ValueError):
        to_dimacs_dnf(And((Or((Lit(0), Lit(1))), Lit(2))), 3)


def test_truth_table_arity_check():
    with pytest.raises(ValueError):
        truth_table(Lit(4), 3)
    with pytest.raises(ValueError):
        parse_prefix("AND 2 x0")


def test_maclaurin_bound_value():
    assert maclaurin_bound([0.01, 0.02], 2) == pytest.approx((64 * 0.03) ** 2 / 2)

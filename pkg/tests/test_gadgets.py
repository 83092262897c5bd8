import itertools
import math
import random

import pytest

from bfenum import (
    cnf_evaluate,
    cnf_to_bformula,
    find_representation,
    flip_literals,
    format_formula,
    invroot_reduction,
    make_cnf,
    make_function,
    maxones_star_d1_pipeline,
    minones_const0_reduction,
    minones_const1_reduction,
    pad_to_power3,
    parse_formula,
    require_representation,
    satstar_reduction,
    threshold_tree,
    truth_table_int,
    verify_representation,
    weight_vector,
    wminones_fresh_var_reduction,
)
from bfenum.errors import (
    ArityBudget,
    EmptyBase,
    MissingEntry,
    PaddingInfeasible,
    RepresentationMissing,
    SizeGuard,
)

from conftest import NAMED, random_formula


def all_assignments(n):
    return itertools.product((0, 1), repeat=n)


def models_of(phi):
    n = len(phi.variables)
    return [b for b in all_assignments(n) if phi.evaluate(b) == 1]


def has_model_weight_le(phi, k, weights=None):
    vec = weight_vector(weights, phi.variables) if weights else None
    for b in models_of(phi):
        w = sum(x * y for x, y in zip(b, vec)) if vec else sum(b)
        if w <= k:
            return True
    return False


# -- threshold trees

def test_threshold_tree_depth_zero_is_a_variable():
    t = threshold_tree(3, 2, 0)
    assert len(t.variables) == 1
    assert t.evaluate((0,)) == 0 and t.evaluate((1,)) == 1


def test_threshold_tree_is_majority_at_depth_one():
    t = threshold_tree(3, 2, 1)
    assert truth_table_int(t) == truth_table_int(
        parse_formula("maj(x1, x2, x3)", [NAMED["maj"]])
    )


def test_threshold_tree_forced_zones():
    t = threshold_tree(3, 2, 2)
    assert len(t.variables) == 9
    for bits in all_assignments(9):
        v = t.evaluate(bits)
        pc = sum(bits)
        if pc < 4:
            assert v == 0
        elif pc > 5:
            assert v == 1


def test_threshold_tree_leaf_budget():
    with pytest.raises(SizeGuard):
        threshold_tree(3, 2, 12)
    with pytest.raises(ValueError):
        threshold_tree(3, 2, -1)


def test_threshold_tree_named_leaves():
    t = threshold_tree(3, 2, 1, variables=("a", "b", "c"))
    assert t.variables == ("a", "b", "c")


# -- representation search

def test_find_representation_pinned_witness():
    rep = find_representation(NAMED["or"], [NAMED["imp"]])
    assert format_formula(rep) == "imp(imp(x1,x2),x2)"
    assert verify_representation(rep, NAMED["or"])


def test_find_representation_over_or_eq():
    for target in (NAMED["and"], NAMED["imp"]):
        rep = find_representation(target, [NAMED["or"], NAMED["eq"]])
        assert rep is not None and verify_representation(rep, target)


def test_find_representation_over_selfdual_base():
    base = [NAMED["d1"], NAMED["top"]]
    for target, limit in ((NAMED["and"], 5), (NAMED["imp"], 5), (NAMED["maj"], 7), (NAMED["or"], 8)):
        rep = find_representation(target, base, size_limit=limit)
        assert rep is not None and verify_representation(rep, target), target.name


def test_find_representation_respects_property_walls():
    # affine closure cannot express conjunction
    assert find_representation(NAMED["and"], [NAMED["xor"], NAMED["top"]]) is None
    # monotone closure cannot express implication
    assert find_representation(NAMED["imp"], [NAMED["and"], NAMED["or"]]) is None


def test_find_representation_validation():
    with pytest.raises(EmptyBase):
        find_representation(NAMED["or"], [])
    with pytest.raises(ArityBudget):
        find_representation(NAMED["t24"], [NAMED["imp"]])
    with pytest.raises(ArityBudget):
        find_representation(NAMED["or"], [NAMED["imp"]], size_limit=0)


def test_require_representation_raises_when_absent():
    with pytest.raises(RepresentationMissing):
        require_representation(NAMED["xor"], [NAMED["maj"]])


def test_verify_representation_rejects_wrong_formula():
    wrong = parse_formula("imp(x1, x2)", [NAMED["imp"]])
    assert not verify_representation(wrong, NAMED["or"])


# -- CNF translation and literal flipping

def test_cnf_to_bformula_matches_cnf():
    reps = {
        "or": parse_formula("or(x1, x2)", [NAMED["or"]]),
        "and": parse_formula("and(x1, x2)", [NAMED["and"]]),
    }
    rng = random.Random(73)
    for _ in range(40):
        n = rng.randint(2, 6)
        m = rng.randint(1, 5)
        clauses = []
        for _ in range(m):
            vs = rng.sample(range(1, n + 1), rng.randint(1, min(3, n)))
            clauses.append(tuple(v for v in vs))  # positive clauses only
        cnf = make_cnf(n, clauses)
        phi = cnf_to_bformula(cnf, reps)
        assert phi.variables == cnf.variables()
        for bits in all_assignments(n):
            assert phi.evaluate(bits) == cnf_evaluate(cnf, bits)


def test_cnf_to_bformula_requires_entries():
    cnf = make_cnf(2, [(1, 2)])
    rep = parse_formula("or(x1, x2)", [NAMED["or"]])
    with pytest.raises(MissingEntry):
        cnf_to_bformula(cnf, {"or": rep})


def test_flip_literals_mirrors_models():
    rng = random.Random(79)
    for _ in range(50):
        n = rng.randint(1, 6)
        m = rng.randint(1, 6)
        clauses = []
        for _ in range(m):
            vs = rng.sample(range(1, n + 1), rng.randint(1, min(3, n)))
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
        cnf = make_cnf(n, clauses)
        flipped = flip_literals(cnf)
        for bits in all_assignments(n):
            comp = tuple(1 - b for b in bits)
            assert cnf_evaluate(cnf, bits) == cnf_evaluate(flipped, comp)


# -- weight-bound reductions

def test_invroot_reduction_equations():
    cnf = make_cnf(4, [(1, -2, 3)])
    tr = invroot_reduction(cnf, 2)
    d = tr.data
    assert d["n_prime"] == d["n"] + d["fresh"]
    assert d["k_prime"] == math.isqrt(d["n_prime"])


def test_invroot_reduction_biconditional():
    rng = random.Random(83)
    for _ in range(60):
        n = rng.choice([3, 4])
        m = rng.randint(1, 6)
        clauses = []
        for _ in range(m):
            vs = rng.sample(range(1, n + 1), 3)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
        cnf = make_cnf(n, clauses)
        for k in range(n + 1):
            tr = invroot_reduction(cnf, k)
            n2 = tr.data["n_prime"]
            lhs = any(
                cnf_evaluate(cnf, b) == 1 and sum(b) <= k
                for b in all_assignments(n)
            )
            flipped = flip_literals(tr.cnf)
            rhs = any(
                cnf_evaluate(flipped, b) == 1 and sum(b) >= n2 - math.isqrt(n2)
                for b in all_assignments(n2)
            )
            assert lhs == rhs, (clauses, k, tr.data)


def test_invroot_rejects_negative_bound():
    with pytest.raises(ValueError):
        invroot_reduction(make_cnf(2, [(1,)]), -1)


def test_pad_to_power3_counts():
    cnf = make_cnf(4, [(1, 2, 3)])
    tr = pad_to_power3(cnf)
    d = tr.data
    assert d["n_prime"] == 9 and d["depth"] == 2
    assert d["forced_zero"] == math.isqrt(9) - math.isqrt(4)
    assert d["forced_one"] == 9 - 4 - d["forced_zero"]


def test_pad_to_power3_window_shift():
    # weight window [n - isqrt(n), n] must survive the padding
    rng = random.Random(89)
    for n in (2, 3, 4, 5, 7, 9):
        clauses = [tuple(rng.sample(range(1, n + 1), min(2, n)))]
        cnf = make_cnf(n, clauses)
        tr = pad_to_power3(cnf)
        n2 = tr.data["n_prime"]
        lo = n - math.isqrt(n)
        lo2 = n2 - math.isqrt(n2)
        lhs = any(
            cnf_evaluate(cnf, b) == 1 and lo <= sum(b) <= n
            for b in all_assignments(n)
        )
        padded = tr.cnf
        rhs = any(
            cnf_evaluate(padded, b) == 1 and lo2 <= sum(b) <= n2
            for b in all_assignments(n2)
        )
        assert lhs == rhs, (n, tr.data)


# -- constant elimination for optimization bounds

def test_minones_const1_keeps_threshold():
    phi = parse_formula("imp(x1, 1)", [NAMED["imp"]])
    for k in range(3):
        tr = minones_const1_reduction(phi, k)
        out = tr.formula
        assert tr.data["k_prime"] == k + 1
        assert out.constants() == frozenset()
        assert has_model_weight_le(phi, k) == has_model_weight_le(out, k + 1)


def test_minones_const0_threshold_tree_guard():
    phi = parse_formula("imp(x1, 0)", [NAMED["imp"]])
    for k in range(3):
        tr = minones_const0_reduction(phi, k)
        out = tr.formula
        assert out.constants() == frozenset()
        assert has_model_weight_le(phi, k) == has_model_weight_le(out, tr.data["k_prime"])


def test_minones_reductions_on_random_formulas(fns):
    rng = random.Random(97)
    base = [fns["imp"], fns["and"]]
    for _ in range(25):
        phi = random_formula(rng, base, rng.randint(1, 4), 3)
        for k in range(len(phi.variables) + 1):
            t1 = minones_const1_reduction(phi, k)
            assert has_model_weight_le(phi, k) == has_model_weight_le(
                t1.formula, t1.data["k_prime"]
            )
            if len(phi.variables) <= 2:
                # the 0-marker reduction pads with a threshold tree, so
                # brute checks stay feasible only on tiny inputs
                t0 = minones_const0_reduction(phi, k)
                assert has_model_weight_le(phi, k) == has_model_weight_le(
                    t0.formula, t0.data["k_prime"]
                )
            tw = wminones_fresh_var_reduction(phi, k)
            assert has_model_weight_le(phi, k) == has_model_weight_le(
                tw.formula, tw.data["k_prime"], tw.weights
            )


def test_wminones_fresh_variable_carries_blocking_weight():
    phi = parse_formula("imp(x1, 0)", [NAMED["imp"]])
    tr = wminones_fresh_var_reduction(phi, 1)
    heavy = [v for v, w in tr.weights.items() if w > 1]
    assert len(heavy) == 1
    assert tr.weights[heavy[0]] == len(phi.variables) + 1


# -- SAT* construction

def test_satstar_star_models_biject_with_models(fns):
    rng = random.Random(101)
    for _ in range(30):
        phi = random_formula(rng, [fns["imp"]], rng.randint(1, 5), 3)
        tr = satstar_reduction(phi)
        out = tr.formula
        n = len(phi.variables)
        n2 = len(out.variables)
        assert n2 == n + 2
        allones = (1,) * n2
        star = [b for b in models_of(out) if b != allones]
        assert len(star) == len(models_of(phi))
        # star models force the two fresh variables to 1, 0
        tpos = out.variables.index(tr.data["forced"])
        fpos = out.variables.index(tr.data["selector"])
        for b in star:
            assert b[tpos] == 1 and b[fpos] == 0
        assert {tuple(b[:n]) for b in star} == set(models_of(phi))
        assert out.evaluate(allones) == 1


def test_satstar_on_formula_with_marker():
    phi = parse_formula("imp(x1, 0)", [NAMED["imp"]])
    tr = satstar_reduction(phi)
    assert tr.formula.constants() == frozenset()
    star = [
        b
        for b in models_of(tr.formula)
        if b != (1,) * len(tr.formula.variables)
    ]
    assert len(star) == len(models_of(phi)) == 1


# -- the five-stage pipeline

def test_pipeline_requires_power_of_three():
    with pytest.raises(PaddingInfeasible):
        maxones_star_d1_pipeline(make_cnf(4, [(1, 2, 3)]))


def test_pipeline_trace_shape():
    cnf = make_cnf(3, [(1, -2, 3)])
    tr = maxones_star_d1_pipeline(cnf)
    assert len(tr.stages) == 5
    assert tr.formula is tr.stages[-1]
    assert tr.data["window_low"] == 3 - math.isqrt(3)
    assert tr.data["window_high"] == 3
    assert {f.name for f in tr.formula.connectives()} == {"d1"}
    assert tr.data["selector"] in tr.formula.variables


def test_pipeline_window_equivalence_on_selector_zero_plane():
    rng = random.Random(103)
    n = 3
    lo = n - math.isqrt(n)
    for _ in range(40):
        m = rng.randint(1, 6)
        clauses = []
        for _ in range(m):
            vs = rng.sample(range(1, n + 1), rng.randint(1, 3))
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
        cnf = make_cnf(n, clauses)
        tr = maxones_star_d1_pipeline(cnf)
        out = tr.formula
        n5 = len(out.variables)
        fpos = out.variables.index(tr.data["selector"])
        allones = (1,) * n5
        cnf_window = {
            b
            for b in all_assignments(n)
            if cnf_evaluate(cnf, b) == 1 and lo <= sum(b) <= n
        }
        phi_window = {
            b
            for b in models_of(out)
            if b != allones and b[fpos] == 0 and lo <= sum(b) <= n
        }
        assert {b[:n] for b in phi_window} == cnf_window

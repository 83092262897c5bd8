import itertools
import random

import pytest

from bfenum import (
    Formula,
    Var,
    brute_force_opt,
    max_ones_star,
    min_ones,
    parse_formula,
    w_max_ones_star_s02,
    weight_vector,
)
from bfenum.errors import Intractable, NotDeg2, TooLarge

from conftest import NAMED, brute_models, random_formula


def test_min_ones_simple():
    phi = parse_formula("imp(x1, imp(x2, x3))", [NAMED["imp"]])
    r = min_ones(phi)
    assert r.found and r.weight == 0 and r.bits == (0, 0, 0)
    assert r.algorithm == "S0-steady-unsteady"


def test_min_ones_weighted_prefers_cheap_variables():
    phi = parse_formula("or(x1, x2)", [NAMED["or"], NAMED["top"], NAMED["bot"]])
    r = min_ones(phi, {"x1": 10, "x2": 1})
    assert r.found and r.weight == 1 and r.bits == (0, 1)


def test_min_ones_unsat():
    phi = parse_formula("and(x1, 0)", [NAMED["and"], NAMED["top"], NAMED["bot"]])
    r = min_ones(phi)
    assert r.status == "unsat" and not r.found
    assert r.bits is None and r.weight is None


def test_min_ones_intractable_tag():
    phi = parse_formula("maj(x1, x2, x3)", [NAMED["maj"]])
    with pytest.raises(Intractable) as exc:
        min_ones(phi)
    assert exc.value.tag == "D2"


def test_min_ones_matches_bruteforce_on_random_s0(fns):
    rng = random.Random(61)
    for _ in range(150):
        phi = random_formula(rng, [fns["imp"]], rng.randint(1, 7), 3)
        r = min_ones(phi)
        b = brute_force_opt(phi, mode="min")
        assert r.status == b.status
        if r.found:
            assert r.weight == b.weight
            assert phi.evaluate(r.bits) == 1
            assert sum(r.bits) == r.weight


def test_max_ones_star_skips_all_ones():
    phi = parse_formula("imp(x1, imp(x2, x3))", [NAMED["imp"]])
    r = max_ones_star(phi)
    assert r.found and 0 in r.bits
    assert phi.evaluate(r.bits) == 1
    assert r.weight == 2


def test_max_ones_star_no_nontrivial():
    # conjunction of everything: the only model is all-ones
    phi = parse_formula("and(x1, and(x2, x3))", [NAMED["and"], NAMED["top"], NAMED["bot"]])
    r = max_ones_star(phi)
    assert r.status == "no-nontrivial" and not r.found


def test_max_ones_star_unsat():
    phi = parse_formula("and(x1, 0)", [NAMED["and"], NAMED["top"], NAMED["bot"]])
    r = max_ones_star(phi)
    assert r.status == "unsat"


def test_max_ones_star_weighted_majority(fns):
    rng = random.Random(67)
    for _ in range(150):
        phi = random_formula(rng, [fns["maj"]], rng.randint(1, 7), 3)
        w = {v: rng.randint(0, 30) for v in phi.variables}
        r = max_ones_star(phi, w)
        b = brute_force_opt(phi, w, mode="max-star")
        assert r.status == b.status
        if r.found:
            assert r.weight == b.weight
            assert phi.evaluate(r.bits) == 1 and 0 in r.bits


def test_single_zero_scan_matches_bruteforce_exactly(fns):
    rng = random.Random(71)
    for _ in range(200):
        phi = random_formula(rng, [fns["imp"], fns["maj"]], rng.randint(1, 8), 3)
        w = {v: rng.randint(0, 100) for v in phi.variables}
        r = w_max_ones_star_s02(phi, w)
        b = brute_force_opt(phi, w, mode="max-star")
        assert (r.status, r.weight, r.bits) == (b.status, b.weight, b.bits)


def test_single_zero_scan_unweighted_default(fns):
    phi = parse_formula("maj(x1, x2, x3)", [fns["maj"]])
    r = w_max_ones_star_s02(phi)
    assert r.found and r.weight == 2
    # lex-greatest among the weight-2 single-zero models
    assert r.bits == (1, 1, 0)


def test_single_zero_scan_rejects_wrong_base(fns):
    phi = parse_formula("xor(x1, x2)", [fns["xor"]])
    with pytest.raises(NotDeg2):
        w_max_ones_star_s02(phi)


def test_single_zero_scan_single_variable(fns):
    taut = parse_formula("imp(x1, x1)", [fns["imp"]])
    r = w_max_ones_star_s02(taut)
    assert r.found and r.bits == (0,) and r.weight == 0
    only_one = parse_formula("maj(x1, x1, x1)", [fns["maj"]])
    r2 = w_max_ones_star_s02(only_one)
    assert r2.status == "no-nontrivial"


def test_scan_uses_linear_evaluations(fns):
    phi = parse_formula(
        "maj(x1, maj(x2, x3, x4), maj(x5, x6, x7))", [fns["maj"]]
    )
    r = w_max_ones_star_s02(phi, {v: 1 for v in phi.variables})
    assert r.evals <= len(phi.variables) + 1


def test_brute_force_opt_modes():
    phi = parse_formula("imp(x1, x2)", [NAMED["imp"]])
    mn = brute_force_opt(phi, mode="min")
    assert mn.bits == (0, 0) and mn.weight == 0
    mx = brute_force_opt(phi, mode="max-star")
    assert mx.bits == (0, 1) and mx.weight == 1
    with pytest.raises(ValueError):
        brute_force_opt(phi, mode="max")


def test_brute_force_opt_cap():
    names = tuple(f"x{i}" for i in range(1, 27))
    phi = Formula(Var("x1"), names)
    with pytest.raises(TooLarge):
        brute_force_opt(phi, mode="min")


def test_force_bruteforce_paths():
    phi = parse_formula("maj(x1, x2, x3)", [NAMED["maj"]])
    r = min_ones(phi, force_bruteforce=True)
    assert r.algorithm == "bruteforce"
    assert r.weight == 2
    r2 = max_ones_star(phi, force_bruteforce=True)
    assert r2.algorithm == "bruteforce"
    assert r2.weight == 2

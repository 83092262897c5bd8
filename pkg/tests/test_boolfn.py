import itertools
import random

import pytest

from bfenum import (
    BooleanFunction,
    PropertyKind,
    constant_function,
    dual,
    eval_function,
    fictive_coordinates,
    has_property,
    is_separating,
    is_separating_deg2,
    is_separating_degree,
    make_function,
    separating_coordinate,
    threshold_function,
)
from bfenum.errors import BadThreshold, LengthMismatch, TooLarge, ZeroArity

from conftest import NAMED


def test_make_function_from_string_and_tuple():
    a = make_function(2, "0111", "or")
    b = make_function(2, (0, 1, 1, 1))
    assert a.table == b.table
    assert a.bits() == "0111"
    assert a.name == "or" and b.name is None


def test_make_function_rejects_bad_lengths():
    with pytest.raises(LengthMismatch):
        make_function(2, "011")
    with pytest.raises(ZeroArity):
        make_function(0, "1")
    with pytest.raises(TooLarge):
        make_function(17, "0" * (1 << 17))


def test_eval_uses_first_variable_as_most_significant_bit():
    imp = NAMED["imp"]
    assert eval_function(imp, (0, 0)) == 1
    assert eval_function(imp, (0, 1)) == 1
    assert eval_function(imp, (1, 0)) == 0
    assert eval_function(imp, (1, 1)) == 1


def test_constant_function_has_one_fictive_coordinate():
    top = constant_function(1, "top")
    assert top.arity == 1
    assert top.table == (1, 1)
    assert fictive_coordinates(top) == {1}
    assert fictive_coordinates(NAMED["maj"]) == set()


def test_dual_involution():
    rng = random.Random(7)
    for _ in range(50):
        ar = rng.randint(1, 4)
        table = tuple(rng.randint(0, 1) for _ in range(1 << ar))
        f = make_function(ar, table)
        assert dual(dual(f)).table == f.table


def test_dual_of_and_is_or():
    assert dual(NAMED["and"]).table == NAMED["or"].table
    assert dual(NAMED["maj"]).table == NAMED["maj"].table  # self-dual


PROPERTY_TABLE = [
    # fn, 0-rep, 1-rep, monotone, affine, self-dual
    ("imp", False, True, False, False, False),
    ("or", True, True, True, False, False),
    ("and", True, True, True, False, False),
    ("xor", True, False, False, True, False),
    ("eq", False, True, False, True, False),
    ("maj", True, True, True, False, True),
    ("d1", True, True, False, False, True),
    ("andimp", True, True, False, False, False),
    ("ormed", True, True, True, False, False),
    ("andmed", True, True, True, False, False),
]


@pytest.mark.parametrize("name,r0,r1,mono,aff,sd", PROPERTY_TABLE)
def test_named_function_properties(name, r0, r1, mono, aff, sd):
    f = NAMED[name]
    assert has_property(f, PropertyKind.REPRODUCING_0) is r0
    assert has_property(f, PropertyKind.REPRODUCING_1) is r1
    assert has_property(f, PropertyKind.MONOTONE) is mono
    assert has_property(f, PropertyKind.AFFINE) is aff
    assert has_property(f, PropertyKind.SELF_DUAL) is sd


def test_monotone_bruteforce_agreement():
    rng = random.Random(11)
    for _ in range(200):
        ar = rng.randint(1, 3)
        f = make_function(ar, tuple(rng.randint(0, 1) for _ in range(1 << ar)))
        rows = list(itertools.product((0, 1), repeat=ar))
        expected = all(
            eval_function(f, a) <= eval_function(f, b)
            for a in rows
            for b in rows
            if all(x <= y for x, y in zip(a, b))
        )
        assert has_property(f, PropertyKind.MONOTONE) is expected


def test_affine_bruteforce_agreement():
    # affine iff the function equals the parity fit through its own table
    rng = random.Random(13)
    for _ in range(200):
        ar = rng.randint(1, 3)
        f = make_function(ar, tuple(rng.randint(0, 1) for _ in range(1 << ar)))
        c = eval_function(f, (0,) * ar)
        coeffs = []
        for i in range(ar):
            e = tuple(1 if j == i else 0 for j in range(ar))
            coeffs.append(eval_function(f, e) ^ c)
        expected = all(
            eval_function(f, row)
            == (c ^ sum(b * k for b, k in zip(row, coeffs)) % 2)
            for row in itertools.product((0, 1), repeat=ar)
        )
        assert has_property(f, PropertyKind.AFFINE) is expected


def test_separating_coordinate_picks_least_index():
    # imp: only the pair (1,0) maps to 0, second coordinate is 0 there
    assert separating_coordinate(NAMED["imp"], 0) == 2
    # or: the 0-preimage is (0,0); both coordinates qualify, least wins
    assert separating_coordinate(NAMED["or"], 0) == 1
    assert separating_coordinate(NAMED["and"], 1) == 1


def test_separating_empty_preimage_defaults_to_first_coordinate():
    top = constant_function(1, "top")
    assert separating_coordinate(top, 0) == 1
    assert is_separating(top, 0)


def test_maj_is_degree_two_but_not_separating():
    maj = NAMED["maj"]
    assert not is_separating(maj, 0)
    assert is_separating_deg2(maj, 0)
    assert is_separating_degree(maj, 0, 2)
    assert not is_separating_degree(maj, 0, 3)


def test_separating_degree_weakens_as_k_shrinks():
    # a shared c-coordinate on every (k+1)-subset restricts to every k-subset
    rng = random.Random(17)
    for _ in range(200):
        ar = rng.randint(1, 4)
        f = make_function(ar, tuple(rng.randint(0, 1) for _ in range(1 << ar)))
        for c in (0, 1):
            for k in range(1, 5):
                if is_separating_degree(f, c, k + 1):
                    assert is_separating_degree(f, c, k)


def test_plain_separation_implies_every_degree():
    rng = random.Random(19)
    for _ in range(300):
        ar = rng.randint(1, 4)
        f = make_function(ar, tuple(rng.randint(0, 1) for _ in range(1 << ar)))
        for c in (0, 1):
            if is_separating(f, c):
                for k in range(1, 6):
                    assert is_separating_degree(f, c, k)


def test_degree_bruteforce_agreement():
    # compare against a literal reading over explicit preimage subsets
    rng = random.Random(23)
    for _ in range(150):
        ar = rng.randint(1, 4)
        f = make_function(ar, tuple(rng.randint(0, 1) for _ in range(1 << ar)))
        for c in (0, 1):
            pre = [
                row
                for row in itertools.product((0, 1), repeat=ar)
                if eval_function(f, row) == c
            ]
            for k in (1, 2, 3):
                size = min(k, len(pre))
                expected = all(
                    any(all(row[i] == c for row in sub) for i in range(ar))
                    for sub in itertools.combinations(pre, size)
                ) if pre else True
                assert is_separating_degree(f, c, k) is expected, (f, c, k)


def test_threshold_function_values():
    thr = threshold_function(3, 2)
    assert thr.table == NAMED["maj"].table
    assert thr.name == "thr3_2"
    t42 = threshold_function(4, 2)
    for bits in itertools.product((0, 1), repeat=4):
        assert eval_function(t42, bits) == (1 if sum(bits) >= 2 else 0)


def test_threshold_function_validation():
    with pytest.raises(BadThreshold):
        threshold_function(2, 2)
    with pytest.raises(BadThreshold):
        threshold_function(3, 1)


def test_functions_compare_by_table_not_name():
    a = make_function(2, "0111", "or")
    b = make_function(2, "0111", "disj")
    assert a == b
    assert len({a, b}) == 1

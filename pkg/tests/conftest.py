import itertools
import random

import pytest

from bfenum import (
    Apply,
    Formula,
    Var,
    constant_function,
    make_function,
)

NAMED = {
    "imp": make_function(2, "1101", "imp"),
    "or": make_function(2, "0111", "or"),
    "and": make_function(2, "0001", "and"),
    "xor": make_function(2, "0110", "xor"),
    "eq": make_function(2, "1001", "eq"),
    "maj": make_function(3, "00010111", "maj"),
    "d1": make_function(3, "00101011", "d1"),
    "andimp": make_function(3, "00001101", "andimp"),
    "ormed": make_function(3, "00011111", "ormed"),
    "andmed": make_function(3, "00000111", "andmed"),
    "t24": make_function(4, "0001011101111111", "t24"),
    "s02fix": make_function(3, "10010111", "s02fix"),
    "top": constant_function(1, "top"),
    "bot": constant_function(0, "bot"),
}


@pytest.fixture
def fns():
    return dict(NAMED)


def random_formula(rng: random.Random, base, n, size) -> Formula:
    """A random connective tree over x1..xn using at least one base function."""
    names = [f"x{i + 1}" for i in range(n)]

    def node(depth):
        if depth <= 0 or rng.random() < 0.3:
            return Var(rng.choice(names))
        fn = rng.choice(base)
        if fn.arity == 0:
            return Apply(fn, ())
        return Apply(fn, tuple(node(depth - 1) for _ in range(fn.arity)))

    while True:
        root = node(size)
        phi = Formula(root, names)
        if phi.connectives():
            return phi


def brute_models(phi: Formula):
    """Model set by direct evaluation, independent of the enumerators."""
    n = len(phi.variables)
    return [bits for bits in itertools.product((0, 1), repeat=n) if phi.evaluate(bits) == 1]


def assignment_weight(bits, vec=None) -> int:
    if vec is None:
        return sum(bits)
    return sum(b * w for b, w in zip(bits, vec))

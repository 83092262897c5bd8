"""Weight optimization over models: lightest model, heaviest non-trivial model.

Both problems ride on the enumeration machinery: the lightest model is
the first output of an increasing stream, the heaviest non-trivial
model is the first non-all-ones output of a decreasing stream.  The one
genuinely different case is the degree-2 base under weights, where full
decreasing enumeration is open but the optimum is a linear scan.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clones import ProblemKind, clone_profile
from .enumeration import (
    BRUTE_FORCE_MAX_VARS,
    ORDER_DEC,
    ORDER_INC,
    classify_formula,
    effective_base,
    normalize_weights,
    stream_with_algorithm,
)
from .errors import Intractable, NotDeg2, RuleViolation, TooLarge
from .formula import truth_table_int

STATUS_FOUND = "found"
STATUS_UNSAT = "unsat"
STATUS_NO_NONTRIVIAL = "no-nontrivial"


@dataclass(frozen=True)
class OptResult:
    status: str
    bits: tuple | None
    weight: int | None
    algorithm: str
    evals: int = 0

    @property
    def found(self):
        return self.status == STATUS_FOUND


def _closed_case(phi, star):
    # formula without variables: the empty assignment is also the all-ones one
    if phi.evaluate(()):
        status = STATUS_NO_NONTRIVIAL if star else STATUS_FOUND
        bits, w = ((), 0) if not star else (None, None)
        return OptResult(status, bits, w, "closed", 1)
    return OptResult(STATUS_UNSAT, None, None, "closed", 1)


def min_ones(phi, weights=None, force_bruteforce=False):
    """Lightest model of phi, or its absence."""
    if not phi.variables:
        return _closed_case(phi, star=False)
    if force_bruteforce:
        return brute_force_opt(phi, weights, mode="min")
    problem = (
        ProblemKind.W_MIN_ONES if weights is not None else ProblemKind.MIN_ONES
    )
    verdict = classify_formula(phi, problem)
    if verdict.kind != "tractable":
        raise Intractable(verdict.tag)
    stream = stream_with_algorithm(phi, verdict.algorithm, ORDER_INC, weights)
    for bits, weight in stream:
        return OptResult(
            STATUS_FOUND, bits, weight, verdict.algorithm, stream.tally.count
        )
    return OptResult(STATUS_UNSAT, None, None, verdict.algorithm, stream.tally.count)


def max_ones_star(phi, weights=None, force_bruteforce=False):
    """Heaviest model other than the all-ones assignment."""
    if not phi.variables:
        return _closed_case(phi, star=True)
    if force_bruteforce:
        return brute_force_opt(phi, weights, mode="max-star")
    problem = (
        ProblemKind.W_MAX_ONES_STAR
        if weights is not None
        else ProblemKind.MAX_ONES_STAR
    )
    verdict = classify_formula(phi, problem)
    if verdict.kind != "tractable":
        raise Intractable(verdict.tag)
    if verdict.algorithm == "S02-single-zero-scan":
        return w_max_ones_star_s02(phi, weights)
    stream = stream_with_algorithm(phi, verdict.algorithm, ORDER_DEC, weights)
    ones = (1,) * len(phi.variables)
    saw_ones = False
    for bits, weight in stream:
        if bits == ones:
            saw_ones = True
            continue
        return OptResult(
            STATUS_FOUND, bits, weight, verdict.algorithm, stream.tally.count
        )
    status = STATUS_NO_NONTRIVIAL if saw_ones else STATUS_UNSAT
    return OptResult(status, None, None, verdict.algorithm, stream.tally.count)


def w_max_ones_star_s02(phi, weights=None):
    """Optimum by scanning the n assignments with a single zero.

    Sound for degree-2 bases: two single-zero non-models would have
    disjoint zero sets, so at most one candidate fails, and any model
    with several zeros is dominated in (weight, lex) by a single-zero
    model above it.
    """
    base = effective_base(phi)
    if not clone_profile(base).all_0sep_deg2:
        raise NotDeg2("the single-zero scan needs every connective at degree 2")
    n = len(phi.variables)
    vec = normalize_weights(phi, weights)
    if n == 0:
        return _closed_case(phi, star=True)
    algorithm = "S02-single-zero-scan"
    if n == 1:
        if phi.evaluate((0,)):
            return OptResult(STATUS_FOUND, (0,), 0, algorithm, 1)
        return OptResult(STATUS_NO_NONTRIVIAL, None, None, algorithm, 1)
    total = sum(vec) if vec is not None else n
    best = None
    evals = 0
    for i in range(n):
        cand = tuple(0 if p == i else 1 for p in range(n))
        evals += 1
        if phi.evaluate(cand):
            weight = total - (vec[i] if vec is not None else 1)
            if best is None or (weight, cand) > (best[0], best[1]):
                best = (weight, cand)
    if best is None:
        raise RuleViolation(
            "every single-zero assignment failed, which degree 2 forbids"
        )
    return OptResult(STATUS_FOUND, best[1], best[0], algorithm, evals)


def brute_force_opt(phi, weights=None, mode="min"):
    """Reference optimizer over the full truth table (capped at 24 variables)."""
    if mode not in ("min", "max-star"):
        raise ValueError(f"mode must be 'min' or 'max-star', got {mode!r}")
    n = len(phi.variables)
    if n == 0:
        return _closed_case(phi, star=mode == "max-star")
    if n > BRUTE_FORCE_MAX_VARS:
        raise TooLarge(
            f"brute force is capped at {BRUTE_FORCE_MAX_VARS} variables, got {n}"
        )
    vec = normalize_weights(phi, weights)
    mask = truth_table_int(phi)
    evals = 1 << n
    best = None
    saw_ones = False
    for row in range(1 << n):
        if not (mask >> row) & 1:
            continue
        bits = tuple((row >> (n - 1 - i)) & 1 for i in range(n))
        if mode == "max-star" and row == (1 << n) - 1:
            saw_ones = True
            continue
        weight = (
            sum(w for b, w in zip(bits, vec) if b) if vec is not None else sum(bits)
        )
        if mode == "min":
            key = (weight, sum(bits), bits)
            if best is None or key < best[0]:
                best = (key, bits, weight)
        else:
            key = (weight, bits)
            if best is None or key > best[0]:
                best = (key, bits, weight)
    if best is not None:
        return OptResult(STATUS_FOUND, best[1], best[2], "bruteforce", evals)
    if mode == "max-star" and saw_ones:
        return OptResult(STATUS_NO_NONTRIVIAL, None, None, "bruteforce", evals)
    return OptResult(STATUS_UNSAT, None, None, "bruteforce", evals)

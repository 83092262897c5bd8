"""Model enumeration with certified weight orders and bounded delay.

Every public entry point returns an EnumerationStream: a pull-based
iterator of (assignment, weight) pairs that records how many formula
evaluations separate consecutive outputs.  The dispatcher picks the
algorithm from the clone profile of the formula's connectives; asking
for an order the profile cannot certify raises Intractable or OpenCase
instead of silently degrading.
"""

from __future__ import annotations

import heapq
from collections.abc import Mapping
from math import comb

from .clones import ProblemKind, Verdict, classify
from .boolfn import constant_function, make_function
from .errors import Intractable, OpenCase, RuleViolation, EKRViolation, TooLarge, MissingWeight
from .formula import separating_variable, truth_table_int, weight_vector

ORDER_NONE = "none"
ORDER_INC = "inc"
ORDER_DEC = "dec"
ORDERS = (ORDER_NONE, ORDER_INC, ORDER_DEC)

BRUTE_FORCE_MAX_VARS = 24

_PROBLEM_BY_ORDER = {
    (ORDER_NONE, False): ProblemKind.ENUM_SAT,
    (ORDER_INC, False): ProblemKind.ENUM_SAT_INC,
    (ORDER_DEC, False): ProblemKind.ENUM_SAT_DEC,
    (ORDER_INC, True): ProblemKind.W_ENUM_SAT_INC,
    (ORDER_DEC, True): ProblemKind.W_ENUM_SAT_DEC,
}


class EvalTally:
    """Mutable counter of formula evaluations."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0


class _Counted:
    # formula proxy that routes evaluate() through a tally
    __slots__ = ("_phi", "_tally")

    def __init__(self, phi, tally):
        self._phi = phi
        self._tally = tally

    def evaluate(self, bits):
        self._tally.count += 1
        return self._phi.evaluate(bits)

    def __getattr__(self, name):
        return getattr(self._phi, name)


class EnumerationStream:
    """Iterator of (bits, weight) pairs with per-output delay accounting.

    bits is a 0/1 tuple aligned with the formula's variable order.  The
    stream checks its own weight monotonicity and raises RuleViolation
    if an enumerator ever emits out of order.
    """

    def __init__(self, gen, algorithm, order, tally):
        self._gen = gen
        self.algorithm = algorithm
        self.order = order
        self.tally = tally
        self.delays = []
        self.trailing_evals = 0
        self._last_weight = None
        self._done = False

    def __iter__(self):
        return self

    def __next__(self):
        start = self.tally.count
        try:
            bits, weight = next(self._gen)
        except StopIteration:
            if not self._done:
                self._done = True
                self.trailing_evals = self.tally.count - start
            raise
        self.delays.append(self.tally.count - start)
        last = self._last_weight
        if last is not None:
            if self.order == ORDER_INC and weight < last:
                raise RuleViolation(
                    f"weight {weight} emitted after {last} in an increasing stream"
                )
            if self.order == ORDER_DEC and weight > last:
                raise RuleViolation(
                    f"weight {weight} emitted after {last} in a decreasing stream"
                )
        self._last_weight = weight
        return bits, weight

    @property
    def max_delay_evals(self):
        worst = max(self.delays, default=0)
        return max(worst, self.trailing_evals)


def weight_level_assignments(n, k):
    """All length-n 0/1 tuples with exactly k ones, ascending as binary numbers."""
    if k < 0 or k > n:
        return

    def masks(limit, j):
        if j == 0:
            yield 0
            return
        for hi in range(j - 1, limit):
            high = 1 << hi
            for lower in masks(hi, j - 1):
                yield lower | high

    for value in masks(n, k):
        yield tuple((value >> (n - 1 - i)) & 1 for i in range(n))


def _bits_of(row, n):
    return tuple((row >> (n - 1 - i)) & 1 for i in range(n))


def _dot(bits, vec):
    if vec is None:
        return sum(bits)
    return sum(w for b, w in zip(bits, vec) if b)


def _flip(bits, i):
    return bits[:i] + (1 - bits[i],) + bits[i + 1 :]


def _complement(bits):
    return tuple(1 - b for b in bits)


def _scatter(n, positions, sub_bits, fill=0):
    out = [fill] * n
    for p, b in zip(positions, sub_bits):
        out[p] = b
    return out


# -- best-first machinery

def _best_first(seeds, key, successors):
    heap = []
    seen = set()
    for s in seeds:
        if s not in seen:
            seen.add(s)
            heapq.heappush(heap, (key(s), s))
    while heap:
        k, sol = heapq.heappop(heap)
        yield sol
        for nxt in successors(sol):
            if nxt in seen:
                continue
            kn = key(nxt)
            if kn > k:
                seen.add(nxt)
                heapq.heappush(heap, (kn, nxt))


def _key_inc(vec):
    def key(bits):
        return (_dot(bits, vec), sum(bits), bits)

    return key


def _key_dec(vec):
    def key(bits):
        return (-_dot(bits, vec), -sum(bits), bits)

    return key


def _removal_successors(phi):
    # one fewer 1, kept only if still a model; complete whenever every
    # non-top model has a model one level above it
    def successors(bits):
        for i, b in enumerate(bits):
            if b:
                child = _flip(bits, i)
                if phi.evaluate(child):
                    yield child

    return successors


def _addition_successors(n):
    # one more 1, no evaluation; valid when supersets of models are models
    def successors(bits):
        for i, b in enumerate(bits):
            if not b:
                yield _flip(bits, i)

    return successors


# -- structure probes (all evaluations go through the proxy)

def _affine_split(phi):
    n = len(phi.variables)
    c = phi.evaluate((0,) * n)
    support = []
    probe = [0] * n
    for i in range(n):
        probe[i] = 1
        if phi.evaluate(tuple(probe)) != c:
            support.append(i)
        probe[i] = 0
    return support, [i for i in range(n) if i not in set(support)], 1 ^ c


def _disjunction_core(phi):
    n = len(phi.variables)
    if phi.evaluate((0,) * n):
        return None  # constant 1, every assignment is a model
    zero = [0] * n
    core = []
    for i in range(n):
        zero[i] = 1
        if phi.evaluate(tuple(zero)):
            core.append(i)
        zero[i] = 0
    return core


def _conjunction_core(phi):
    n = len(phi.variables)
    if not phi.evaluate((1,) * n):
        return None  # no models at all
    ones = [1] * n
    core = []
    for i in range(n):
        ones[i] = 0
        if not phi.evaluate(tuple(ones)):
            core.append(i)
        ones[i] = 1
    return core


# -- per-clone enumerators

def _enum_affine_levels(phi, order, vec):
    n = len(phi.variables)
    support, fictive, par = _affine_split(phi)
    levels = range(n + 1) if order != ORDER_DEC else range(n, -1, -1)
    for k in levels:
        top = min(k, len(support))
        for j in range(par, top + 1, 2):
            if k - j > len(fictive):
                continue
            for sb in weight_level_assignments(len(support), j):
                for fb in weight_level_assignments(len(fictive), k - j):
                    out = _scatter(n, support, sb)
                    for p, b in zip(fictive, fb):
                        out[p] = b
                    yield tuple(out), k


def _enum_affine_pq(phi, order, vec):
    n = len(phi.variables)
    support, fictive, par = _affine_split(phi)
    sup_set = set(support)

    def successors(bits):
        if order == ORDER_INC:
            for i in fictive:
                if not bits[i]:
                    yield _flip(bits, i)
            absent = [i for i in support if not bits[i]]
            for a in range(len(absent)):
                for b in range(a + 1, len(absent)):
                    yield _flip(_flip(bits, absent[a]), absent[b])
        else:
            for i in fictive:
                if bits[i]:
                    yield _flip(bits, i)
            present = [i for i in support if bits[i]]
            for a in range(len(present)):
                for b in range(a + 1, len(present)):
                    yield _flip(_flip(bits, present[a]), present[b])
        # weight-neutral or weight-crossing swaps inside the support keep
        # the parity and reach equal-popcount models in both directions
        for i in support:
            if bits[i]:
                for j in support:
                    if not bits[j]:
                        yield _flip(_flip(bits, i), j)

    if order == ORDER_INC:
        if par == 0:
            seeds = [(0,) * n]
        elif support:
            best = min(support, key=lambda i: (vec[i], -i))
            seeds = [tuple(1 if i == best else 0 for i in range(n))]
        else:
            seeds = []
        key = _key_inc(vec)
    else:
        if len(support) % 2 == par:
            seeds = [(1,) * n]
        elif support:
            drop = min(support, key=lambda i: (vec[i], i))
            seeds = [tuple(0 if i == drop else 1 for i in range(n))]
        else:
            seeds = []
        key = _key_dec(vec)
    for bits in _best_first(seeds, key, successors):
        yield bits, _dot(bits, vec)


def _enum_disjunction_levels(phi, order, vec):
    n = len(phi.variables)
    core = _disjunction_core(phi)
    levels = range(n + 1) if order != ORDER_DEC else range(n, -1, -1)
    if core is None:
        for k in levels:
            for bits in weight_level_assignments(n, k):
                yield bits, k
        return
    rest = [i for i in range(n) if i not in set(core)]
    for k in levels:
        for j in range(1, min(k, len(core)) + 1):
            if k - j > len(rest):
                continue
            for cb in weight_level_assignments(len(core), j):
                for rb in weight_level_assignments(len(rest), k - j):
                    out = _scatter(n, core, cb)
                    for p, b in zip(rest, rb):
                        out[p] = b
                    yield tuple(out), k


def _enum_conjunction_levels(phi, order, vec):
    n = len(phi.variables)
    core = _conjunction_core(phi)
    if core is None:
        return
    free = [i for i in range(n) if i not in set(core)]
    base = len(core)
    levels = range(base, n + 1) if order != ORDER_DEC else range(n, base - 1, -1)
    for k in levels:
        for fb in weight_level_assignments(len(free), k - base):
            out = _scatter(n, core, [1] * base)
            for p, b in zip(free, fb):
                out[p] = b
            yield tuple(out), k


def _enum_shape_pq(phi, order, vec, shape):
    n = len(phi.variables)
    if order == ORDER_DEC:
        ones = (1,) * n
        seeds = [ones] if phi.evaluate(ones) else []
        for bits in _best_first(seeds, _key_dec(vec), _removal_successors(phi)):
            yield bits, _dot(bits, vec)
        return
    if shape == "V":
        core = _disjunction_core(phi)
        if core is None:
            seeds = [(0,) * n]
        else:
            seeds = [tuple(1 if i == c else 0 for i in range(n)) for c in core]
    else:
        core = _conjunction_core(phi)
        if core is None:
            seeds = []
        else:
            seeds = [tuple(1 if i in set(core) else 0 for i in range(n))]
    for bits in _best_first(seeds, _key_inc(vec), _addition_successors(n)):
        yield bits, _dot(bits, vec)


def _enum_separating_levels(phi, order, vec):
    n = len(phi.variables)
    j = phi.variables.index(separating_variable(phi))
    others = [i for i in range(n) if i != j]
    zero = (0,) * n

    def with_sep(sb, value):
        out = _scatter(n, others, sb)
        out[j] = value
        return tuple(out)

    def run_level(k):
        # assignments with the separating variable high are models for free
        steady_count = comb(n - 1, k - 1)
        test_count = comb(n - 1, k)
        pace = -(-test_count // max(1, steady_count)) + 1
        steady = (with_sep(sb, 1) for sb in weight_level_assignments(n - 1, k - 1))
        tests = (with_sep(sb, 0) for sb in weight_level_assignments(n - 1, k))
        for s in steady:
            for _ in range(pace):
                u = next(tests, None)
                if u is None:
                    break
                if phi.evaluate(u):
                    yield u, k
            yield s, k
        for u in tests:
            if phi.evaluate(u):
                yield u, k

    if order == ORDER_DEC:
        for k in range(n, 0, -1):
            yield from run_level(k)
        if phi.evaluate(zero):
            yield zero, 0
    else:
        if phi.evaluate(zero):
            yield zero, 0
        for k in range(1, n + 1):
            yield from run_level(k)


def _enum_separating_pq(phi, order, vec):
    n = len(phi.variables)
    seeds = [(1,) * n]  # the separating variable is high, so this is a model
    for bits in _best_first(seeds, _key_dec(vec), _removal_successors(phi)):
        yield bits, _dot(bits, vec)


def _enum_selfdual_pairs(phi, order, vec):
    n = len(phi.variables)
    for rest in range(1 << (n - 1)):
        bits = (1,) + _bits_of(rest, n - 1)
        if phi.evaluate(bits):
            yield bits, sum(bits)
        else:
            comp = _complement(bits)
            yield comp, sum(comp)


def _enum_monotone_lex(phi, order, vec):
    n = len(phi.variables)

    def walk(prefix, known_good):
        pad = (1,) * (n - len(prefix))
        if not known_good and not phi.evaluate(prefix + pad):
            return
        if len(prefix) == n:
            yield prefix, sum(prefix)
            return
        yield from walk(prefix + (0,), False)
        yield from walk(prefix + (1,), True)

    yield from walk((), False)


def _enum_monotone_pq(phi, order, vec):
    n = len(phi.variables)
    ones = (1,) * n
    seeds = [ones] if phi.evaluate(ones) else []
    for bits in _best_first(seeds, _key_dec(vec), _removal_successors(phi)):
        yield bits, _dot(bits, vec)


def _enum_deg2_nested(phi, order, vec):
    """Top-down scan for bases whose zero sets pairwise share a low coordinate.

    The upper half is enumerated level by level, pacing the tests for
    the next level against the current level's guaranteed output volume;
    the lower half rides along as complements of tested candidates and
    is replayed from a stack once the top half is done.
    """
    n = len(phi.variables)
    ones = (1,) * n
    zero = (0,) * n
    mid = (n + 1) // 2
    if not phi.evaluate(ones):
        raise RuleViolation("the all-ones assignment must satisfy this fragment")
    low = []
    if phi.evaluate(zero):
        low.append((zero, 0))
    current = [ones]
    for k in range(n, mid, -1):
        bound = comb(n - 1, k - 1)
        if len(current) < bound:
            raise EKRViolation(
                f"only {len(current)} models of weight {k}, expected at least {bound}"
            )
        nxt = []
        cand = weight_level_assignments(n, k - 1)
        pace = -(-comb(n, k - 1) // max(1, bound)) + 1
        comp_weight = n - k + 1

        def probe(c, nxt=nxt, comp_weight=comp_weight):
            if phi.evaluate(c):
                nxt.append(c)
            if comp_weight < mid:
                comp = _complement(c)
                if phi.evaluate(comp):
                    low.append((comp, comp_weight))

        exhausted = False
        for s in current:
            if not exhausted:
                for _ in range(pace):
                    c = next(cand, None)
                    if c is None:
                        exhausted = True
                        break
                    probe(c)
            yield s, k
        for c in cand:
            probe(c)
        current = nxt
    for s in current:
        yield s, mid
    while low:
        yield low.pop()


# -- blunt fallback

def _brute_gen(phi, order, vec, tally):
    n = len(phi.variables)
    tally.count += 1 << n
    mask = truth_table_int(phi)
    if vec is None:
        if order == ORDER_NONE:
            for row in range(1 << n):
                if (mask >> row) & 1:
                    yield _bits_of(row, n), bin(row).count("1")
            return
        levels = range(n + 1) if order == ORDER_INC else range(n, -1, -1)
        for k in levels:
            for bits in weight_level_assignments(n, k):
                row = 0
                for b in bits:
                    row = (row << 1) | b
                if (mask >> row) & 1:
                    yield bits, k
        return
    models = []
    for row in range(1 << n):
        if (mask >> row) & 1:
            bits = _bits_of(row, n)
            models.append((_dot(bits, vec), sum(bits), bits))
    if order == ORDER_DEC:
        models.sort(key=lambda t: (-t[0], -t[1], t[2]))
    else:
        models.sort()
    for w, _, bits in models:
        yield bits, w


# -- subset-sum style enumeration over abstract items

def subset_sum_enumerate(weights):
    """Subsets of {1..n} by nondecreasing total weight, ties by sorted tuple.

    Yields (subset, weight) with subset a sorted tuple of 1-based item
    indices.  The empty set comes first.
    """
    items = tuple(int(w) for w in weights)
    for w in items:
        if w < 0:
            raise MissingWeight("item weights must be non-negative")
    n = len(items)

    def key(t):
        return (sum(items[i - 1] for i in t), t)

    def successors(t):
        start = t[-1] + 1 if t else 1
        for j in range(start, n + 1):
            yield t + (j,)

    for subset in _best_first([()], key, successors):
        yield subset, sum(items[i - 1] for i in subset)


# -- dispatch

_DISPATCH = {
    "L-parity-levels": _enum_affine_levels,
    "L-priority-queue": _enum_affine_pq,
    "V-levels": _enum_disjunction_levels,
    "V-subset-sum": lambda phi, order, vec: _enum_shape_pq(phi, order, vec, "V"),
    "E-levels": _enum_conjunction_levels,
    "E-subset-sum": lambda phi, order, vec: _enum_shape_pq(phi, order, vec, "E"),
    "S0-steady-unsteady": _enum_separating_levels,
    "S0-priority-queue": _enum_separating_pq,
    "D-pairing": _enum_selfdual_pairs,
    "M-lex-dfs": _enum_monotone_lex,
    "M-priority-queue": _enum_monotone_pq,
    "S02-nested-bruteforce": _enum_deg2_nested,
}

_IDENTITY = make_function(1, (0, 1), name="id")


def effective_base(phi):
    """Connectives plus one constant function per constant leaf.

    A formula with no connectives at all behaves like the identity."""
    base = sorted(phi.connectives(), key=lambda f: (f.arity, f.table, f.name or ""))
    base.extend(constant_function(v) for v in sorted(phi.constants()))
    if not base:
        base = [_IDENTITY]
    return base


def normalize_weights(phi, weights):
    """Turn a mapping or aligned sequence into a validated weight tuple."""
    if weights is None:
        return None
    if isinstance(weights, Mapping):
        return weight_vector(weights, phi.variables)
    seq = tuple(weights)
    if len(seq) != len(phi.variables):
        raise MissingWeight(
            f"weight vector has {len(seq)} entries for {len(phi.variables)} variables"
        )
    return weight_vector(dict(zip(phi.variables, seq)), phi.variables)


def stream_with_algorithm(phi, algorithm, order=ORDER_NONE, weights=None):
    """Run a named enumerator directly, skipping the tractability gate.

    The caller vouches that the formula fits the algorithm's fragment;
    optimization entry points use this when their own classification is
    more permissive than full enumeration's.
    """
    vec = normalize_weights(phi, weights)
    tally = EvalTally()
    proxy = _Counted(phi, tally)
    gen = _DISPATCH[algorithm](proxy, order, vec)
    return EnumerationStream(gen, algorithm, order, tally)


def problem_for(order, weighted):
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
    if order == ORDER_NONE and weighted:
        raise ValueError("weighted enumeration needs an explicit weight order")
    return _PROBLEM_BY_ORDER[(order, weighted)]


def classify_formula(phi, problem: ProblemKind) -> Verdict:
    return classify(effective_base(phi), problem)


def _closed_gen(phi, tally):
    tally.count += 1
    if phi.evaluate(()):
        yield (), 0


def enumerate_models(phi, order=ORDER_NONE, weights=None, force_bruteforce=False):
    """Stream the models of phi in the requested weight order.

    weights may be a mapping from variable name to a non-negative int or
    a sequence aligned with phi.variables.  Raises Intractable or
    OpenCase when the connective profile does not certify the request,
    unless force_bruteforce is set (capped at 24 variables).
    """
    vec = normalize_weights(phi, weights)
    problem = problem_for(order, vec is not None)
    tally = EvalTally()
    n = len(phi.variables)
    if n == 0:
        return EnumerationStream(_closed_gen(phi, tally), "closed", order, tally)
    if force_bruteforce:
        if n > BRUTE_FORCE_MAX_VARS:
            raise TooLarge(
                f"brute force is capped at {BRUTE_FORCE_MAX_VARS} variables, got {n}"
            )
        return EnumerationStream(
            _brute_gen(phi, order, vec, tally), "bruteforce", order, tally
        )
    verdict = classify(effective_base(phi), problem)
    if verdict.kind == "open":
        raise OpenCase(
            f"{problem.value} has no known polynomial-delay method for this base"
        )
    if verdict.kind == "np-hard":
        raise Intractable(verdict.tag)
    proxy = _Counted(phi, tally)
    gen = _DISPATCH[verdict.algorithm](proxy, order, vec)
    return EnumerationStream(gen, verdict.algorithm, order, tally)


def brute_force_enumerate(phi, order=ORDER_NONE, weights=None):
    """Reference enumerator: full truth-table scan, any number of models."""
    return enumerate_models(phi, order=order, weights=weights, force_bruteforce=True)

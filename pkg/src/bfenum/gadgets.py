"""Instance transformations that carry hardness or tractability across bases.

Each reduction returns a ReductionTrace: the rewritten instance plus the
numbers a caller needs to interpret it (new variable count, new weight
bound, names of fresh variables).  Everything here is brute-force
verifiable on small inputs and the test suite does exactly that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import isqrt

from .boolfn import (
    BooleanFunction,
    PropertyKind,
    has_property,
    is_separating,
    is_separating_degree,
    make_function,
    threshold_function,
)
from .clones import clone_profile
from .errors import (
    ArityBudget,
    EmptyBase,
    FormulaSyntaxError,
    LengthMismatch,
    MissingEntry,
    PaddingInfeasible,
    RepresentationMissing,
    RuleViolation,
    SizeGuard,
)
from .formula import (
    Apply,
    CnfFormula,
    Const,
    Formula,
    Var,
    balanced_fold,
    format_formula,
    format_node,
    make_cnf,
    node_count,
    replace_connectives,
    substitute,
)

MAX_TREE_LEAVES = 1 << 14

AND2 = make_function(2, (0, 0, 0, 1), name="and")
OR2 = make_function(2, (0, 1, 1, 1), name="or")
EQ2 = make_function(2, (1, 0, 0, 1), name="eq")
IMP2 = make_function(2, (1, 1, 0, 1), name="imp")
# a AND (b IMPLIES c); generates conjunction via andimp(a, a, b)
ANDIMP = make_function(3, (0, 0, 0, 0, 1, 1, 0, 1), name="andimp")
# ternary connective of the hardest self-dual base
D1FN = make_function(3, (0, 0, 1, 0, 1, 0, 1, 1), name="d1")
# unary placeholder, rewritten into a wide threshold tree later
TOPFN = make_function(1, (0, 1), name="top")
MAJ3 = threshold_function(3, 2)


@dataclass(frozen=True)
class ReductionTrace:
    name: str
    data: dict = field(default_factory=dict)
    formula: Formula | None = None
    cnf: CnfFormula | None = None
    weights: dict | None = None
    stages: tuple = ()

    def to_json(self):
        out = {"name": self.name, "data": dict(self.data)}
        if self.formula is not None:
            size = node_count(self.formula.root)
            if size <= 50_000:
                out["formula"] = format_formula(self.formula)
            else:
                out["formula_nodes"] = size
            out["variables"] = list(self.formula.variables)
        if self.stages:
            out["stages"] = [
                format_formula(s) if node_count(s.root) <= 50_000
                else {"nodes": node_count(s.root)}
                for s in self.stages
            ]
        if self.cnf is not None:
            out["cnf"] = {
                "n": self.cnf.n,
                "clauses": [list(c) for c in self.cnf.clauses],
            }
        if self.weights is not None:
            out["weights"] = dict(self.weights)
        return out


def _fresh_name(taken, stem):
    if stem not in taken:
        return stem
    i = 2
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


def _instantiate(rep: Formula, children):
    # plug child nodes into a representation written over x1..xk,
    # keeping shared subtrees shared
    memo = {}

    def go(node):
        if isinstance(node, Var):
            return children[int(node.name[1:]) - 1]
        if isinstance(node, Apply):
            got = memo.get(id(node))
            if got is None:
                got = memo[id(node)] = Apply(node.fn, tuple(go(a) for a in node.args))
            return got
        return node

    return go(rep.root)


def _fold_rep(rep: Formula, items):
    # balanced binary fold where the combiner is a representation
    def build(lo, hi):
        if hi - lo == 1:
            return items[lo]
        mid = lo + (hi - lo + 1) // 2
        return _instantiate(rep, (build(lo, mid), build(mid, hi)))

    return build(0, len(items))


# -- building blocks

def threshold_tree(p, q, depth, variables=None) -> Formula:
    """Complete p-ary tree of a p-out-of-q threshold connective.

    With p^depth leaf variables the tree outputs 0 whenever fewer than
    q^depth inputs are high and 1 whenever more than
    p^depth - (p - q + 1)^depth are high.
    """
    fn = threshold_function(p, q)
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    leaves = p ** depth
    if leaves > MAX_TREE_LEAVES:
        raise SizeGuard(
            f"a depth-{depth} tree would have {leaves} leaves, over the "
            f"{MAX_TREE_LEAVES} cap"
        )
    if variables is None:
        variables = tuple(f"x{i}" for i in range(1, leaves + 1))
    else:
        variables = tuple(variables)
        if len(variables) != leaves:
            raise LengthMismatch(
                f"tree needs {leaves} leaf variables, got {len(variables)}"
            )
    nodes = [Var(v) for v in variables]
    while len(nodes) > 1:
        nodes = [
            Apply(fn, tuple(nodes[i : i + p])) for i in range(0, len(nodes), p)
        ]
    return Formula(nodes[0], variables)


def flip_literals(cnf: CnfFormula) -> CnfFormula:
    """Negate every literal; models map to their complements."""
    return make_cnf(cnf.n, [[-lit for lit in cl] for cl in cnf.clauses])


def verify_representation(rep: Formula, target: BooleanFunction) -> bool:
    m = target.arity
    if len(rep.variables) != m:
        return False
    for row in range(2 ** m):
        bits = tuple((row >> (m - 1 - i)) & 1 for i in range(m))
        if rep.evaluate(bits) != target.table[row]:
            return False
    return True


# -- representation search

def _compositions(total, parts):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


_PROPERTY_PROBES = (
    lambda f: has_property(f, PropertyKind.REPRODUCING_0),
    lambda f: has_property(f, PropertyKind.REPRODUCING_1),
    lambda f: has_property(f, PropertyKind.MONOTONE),
    lambda f: has_property(f, PropertyKind.AFFINE),
    lambda f: has_property(f, PropertyKind.SELF_DUAL),
    lambda f: is_separating(f, 0),
    lambda f: is_separating_degree(f, 0, 2),
    lambda f: is_separating_degree(f, 0, 3),
    lambda f: has_property(f, PropertyKind.DISJUNCTION_SHAPE),
    lambda f: has_property(f, PropertyKind.CONJUNCTION_SHAPE),
)


def find_representation(target: BooleanFunction, base, size_limit=7):
    """Smallest formula over the base matching the target row for row.

    Size counts nodes, leaves included.  Among equally small witnesses
    the one with the lexicographically least rendering wins.  Returns
    None when no formula within the limit exists; a composition-closed
    property separating the base from the target short-circuits to None
    without searching.
    """
    gens = sorted(set(base), key=lambda f: (f.arity, f.table, f.name or ""))
    if not gens:
        raise EmptyBase("a base needs at least one function")
    if target.arity > 3:
        raise ArityBudget("representation search is limited to arity 3 targets")
    if not 1 <= size_limit <= 9:
        raise ArityBudget(f"size limit must be between 1 and 9, got {size_limit}")
    for probe in _PROPERTY_PROBES:
        if all(probe(g) for g in gens) and not probe(target):
            return None

    m = target.arity
    rows = 2 ** m

    def projection(i):
        bit = 1 << (m - i)
        return tuple(1 if r & bit else 0 for r in range(rows))

    # best[table] = (size, serial, node); by_size keeps pass-ordered buckets
    best = {}
    by_size = {s: [] for s in range(1, size_limit + 1)}
    for i in range(1, m + 1):
        node = Var(f"x{i}")
        table = projection(i)
        entry = (1, format_node(node), node)
        if table not in best:
            best[table] = entry
            by_size[1].append((table, node))

    def finish(entry):
        rep = Formula(entry[2], tuple(f"x{i}" for i in range(1, m + 1)))
        if not verify_representation(rep, target):
            raise RuleViolation("representation search produced a mismatch")
        return rep

    if target.table in best:
        return finish(best[target.table])

    for s in range(2, size_limit + 1):
        fresh = {}
        for g in gens:
            if g.arity + 1 > s:
                continue
            for sizes in _compositions(s - 1, g.arity):
                pools = [by_size[q] for q in sizes]
                if any(not pool for pool in pools):
                    continue
                for combo in itertools.product(*pools):
                    table = tuple(
                        g.table[_row_index([c[0][r] for c in combo])]
                        for r in range(rows)
                    )
                    if table in best:
                        continue
                    node = Apply(g, tuple(c[1] for c in combo))
                    serial = format_node(node)
                    held = fresh.get(table)
                    if held is None or serial < held[0]:
                        fresh[table] = (serial, node)
        for table, (serial, node) in fresh.items():
            best[table] = (s, serial, node)
            by_size[s].append((table, node))
        if target.table in best:
            return finish(best[target.table])
    return None


def _row_index(bits):
    idx = 0
    for b in bits:
        idx = (idx << 1) | b
    return idx


def require_representation(target: BooleanFunction, base, size_limit=7) -> Formula:
    rep = find_representation(target, base, size_limit)
    if rep is None:
        raise RepresentationMissing(
            f"no formula for {target!r} over this base within {size_limit} nodes"
        )
    return rep


def cnf_to_bformula(cnf: CnfFormula, reps) -> Formula:
    """Rewrite a positive CNF over a base through or/and representations.

    reps maps "or" and "and" to two-place representations over x1, x2.
    """
    for key in ("or", "and"):
        if key not in reps:
            raise MissingEntry(f"representation table lacks {key!r}")
    if not cnf.clauses:
        raise FormulaSyntaxError("cannot convert a CNF without clauses")
    clause_nodes = []
    for clause in cnf.clauses:
        lits = []
        for lit in clause:
            if lit < 0:
                raise FormulaSyntaxError(
                    "only positive literals can be converted over this base"
                )
            lits.append(Var(f"x{lit}"))
        clause_nodes.append(_fold_rep(reps["or"], lits))
    root = _fold_rep(reps["and"], clause_nodes)
    return Formula(root, cnf.variables())


# -- weight-bound reductions on CNF instances

def invroot_reduction(cnf: CnfFormula, k) -> ReductionTrace:
    """Pad so that the weight bound becomes the root of the variable count.

    A model with at most k ones exists in the input exactly when the
    output has a model with at most isqrt(n') ones, n' the new count.
    """
    if k < 0:
        raise ValueError(f"weight bound must be non-negative, got {k}")
    n = cnf.n
    if k * k >= n:
        ell = min(k, n)
        r = ell * ell - n
        forced = 0
        units = [(-(n + i),) for i in range(1, r + 1)]
    else:
        r = 0
        while (k + r + 1) ** 2 <= n + r + 1:
            r += 1
        forced = 1
        units = [(n + i,) for i in range(1, r + 1)]
    n2 = n + r
    k2 = isqrt(n2)
    out = make_cnf(n2, list(cnf.clauses) + units)
    return ReductionTrace(
        "invroot",
        data={
            "n": n,
            "k": k,
            "n_prime": n2,
            "k_prime": k2,
            "fresh": r,
            "forced_value": forced,
        },
        cnf=out,
    )


def pad_to_power3(cnf: CnfFormula) -> ReductionTrace:
    """Grow the variable count to the next power of three, keeping the
    window [n - isqrt(n), n] aligned with the new window."""
    n = cnf.n
    d = 0
    while 3 ** d < n:
        d += 1
    n2 = 3 ** d
    zeros = isqrt(n2) - isqrt(n)
    ones = n2 - n - zeros
    if zeros < 0 or ones < 0:
        raise PaddingInfeasible(
            f"cannot pad {n} variables to {n2}: would need {ones} forced-high "
            f"and {zeros} forced-low"
        )
    units = [(n + i,) for i in range(1, ones + 1)]
    units += [(-(n + ones + i),) for i in range(1, zeros + 1)]
    out = make_cnf(n2, list(cnf.clauses) + units)
    return ReductionTrace(
        "pad-power3",
        data={
            "n": n,
            "n_prime": n2,
            "depth": d,
            "forced_one": ones,
            "forced_zero": zeros,
        },
        cnf=out,
    )


# -- constant-elimination reductions on formulas

def minones_const1_reduction(phi: Formula, k, conj=None) -> ReductionTrace:
    """Trade the constant-1 marker for a fresh forced variable.

    conj may be a representation of conjunction over x1, x2; by default
    the raw binary AND joins the formula with the forcing variable.
    """
    t = _fresh_name(set(phi.variables), "t")
    variables = phi.variables + (t,)
    core = substitute(phi, 1, Var(t), variables=variables)
    if conj is None:
        root = Apply(AND2, (core.root, Var(t)))
    else:
        root = _instantiate(conj, (core.root, Var(t)))
    out = Formula(root, variables)
    return ReductionTrace(
        "minones-const1",
        data={"k": k, "k_prime": k + 1, "fresh": t},
        formula=out,
    )


def minones_const0_reduction(phi: Formula, k, p=3, q=2) -> ReductionTrace:
    """Trade the constant-0 marker for a threshold tree over fresh variables.

    Any model within the weight bound leaves too few tree inputs high to
    wake the tree, so the tree behaves as the constant it replaces.
    """
    n = len(phi.variables)
    if n == 0:
        raise PaddingInfeasible("need at least one variable to absorb the bound")
    d = 0
    while q ** d < n + 1:
        d += 1
    leaves = p ** d
    taken = set(phi.variables)
    ys = []
    for i in range(1, leaves + 1):
        name = _fresh_name(taken, f"y{i}")
        taken.add(name)
        ys.append(name)
    tree = threshold_tree(p, q, d, variables=ys)
    out = substitute(
        phi,
        0,
        tree,
        extra_connectives=(threshold_function(p, q),),
        variables=phi.variables + tuple(ys),
    )
    k2 = min(n, k)
    return ReductionTrace(
        "minones-const0",
        data={
            "k": k,
            "k_prime": k2,
            "depth": d,
            "fresh": leaves,
            "threshold": [p, q],
        },
        formula=out,
    )


def wminones_fresh_var_reduction(phi: Formula, k) -> ReductionTrace:
    """Weighted variant: the constant-0 marker becomes one heavy variable."""
    n = len(phi.variables)
    f = _fresh_name(set(phi.variables), "f")
    variables = phi.variables + (f,)
    out = substitute(phi, 0, Var(f), variables=variables)
    weights = {v: 1 for v in phi.variables}
    weights[f] = n + 1
    k2 = min(n, k)
    return ReductionTrace(
        "wminones-fresh-var",
        data={"k": k, "k_prime": k2, "fresh": f},
        formula=out,
        weights=weights,
    )


def satstar_reduction(phi: Formula) -> ReductionTrace:
    """Satisfiability as existence of a model other than all-ones.

    Two fresh variables: t is forced high, f selects between the original
    formula (f low) and the all-ones assignment (f high).  The result is
    satisfiable off all-ones exactly when phi is satisfiable, with the
    constant-0 marker of phi read as false.
    """
    taken = set(phi.variables)
    t = _fresh_name(taken, "t")
    taken.add(t)
    f = _fresh_name(taken, "f")
    variables = phi.variables + (t, f)
    core = substitute(phi, 0, Var(f), variables=variables)
    units = [Apply(ANDIMP, (Var(t), Var(f), Var(x))) for x in phi.variables]
    root = balanced_fold(AND2, [core.root] + units)
    folded = Formula(root, variables)
    and_rep = Formula(
        Apply(ANDIMP, (Var("x1"), Var("x1"), Var("x2"))), ("x1", "x2")
    )
    out = replace_connectives(folded, {AND2: and_rep})
    return ReductionTrace(
        "satstar",
        data={"forced": t, "selector": f, "n": len(phi.variables)},
        formula=out,
    )


# -- the full pipeline into the hardest self-dual base

def maxones_star_d1_pipeline(cnf: CnfFormula) -> ReductionTrace:
    """Rewrite a CNF window instance over the single ternary connective d1.

    Needs n = 3^depth variables, n at least 3.  The input has a model of
    weight in [n - isqrt(n), n] exactly when the output formula has a
    model other than all-ones with weight in that window; the selector
    variable is low on corresponding models.
    """
    n = cnf.n
    d = 0
    m = 1
    while m < n:
        m *= 3
        d += 1
    if m != n or n < 3:
        raise PaddingInfeasible(
            f"pipeline needs a power-of-three variable count of at least 3, got {n}"
        )
    xs = cnf.variables()

    # stage 1: clauses over {or, eq} with the constant-0 marker for negation
    and_rep_oreq = Formula(
        Apply(
            EQ2,
            (
                Apply(OR2, (Var("x1"), Var("x2"))),
                Apply(EQ2, (Var("x1"), Var("x2"))),
            ),
        ),
        ("x1", "x2"),
    )
    clause_nodes = []
    for clause in cnf.clauses:
        lits = [
            Var(f"x{lit}") if lit > 0 else Apply(EQ2, (Var(f"x{-lit}"), Const(0)))
            for lit in clause
        ]
        clause_nodes.append(balanced_fold(OR2, lits))
    phi1 = Formula(_fold_rep(and_rep_oreq, clause_nodes), xs)

    # stage 2: selector variable replaces the constant marker
    sel = _fresh_name(set(xs), "f")
    variables = xs + (sel,)
    core = substitute(phi1, 0, Var(sel), variables=variables)
    imp_rep_oreq = Formula(
        Apply(OR2, (Apply(EQ2, (Var("x1"), Var("x2"))), Var("x2"))), ("x1", "x2")
    )
    guards = [_instantiate(imp_rep_oreq, (Var(sel), Var(x))) for x in xs]
    phi2 = Formula(_fold_rep(and_rep_oreq, [core.root] + guards), variables)

    # stage 3: or and eq over {d1, top}; top stands for "enough ones overall"
    def top(node):
        return Apply(TOPFN, (node,))

    def imp_node(a, b):
        return Apply(D1FN, (top(a), b, a))

    or_rep = Formula(
        Apply(
            D1FN,
            (
                Var("x1"),
                Var("x2"),
                Apply(D1FN, (Var("x1"), Var("x2"), top(Var("x1")))),
            ),
        ),
        ("x1", "x2"),
    )
    eq_rep = Formula(
        Apply(
            D1FN,
            (
                imp_node(Var("x1"), Var("x2")),
                imp_node(Var("x2"), Var("x1")),
                top(Var("x1")),
            ),
        ),
        ("x1", "x2"),
    )
    phi3 = replace_connectives(phi2, {OR2: or_rep, EQ2: eq_rep})

    # stage 4: every top placeholder becomes the wide threshold tree
    tree = threshold_tree(3, 2, d, variables=xs)

    drop_memo = {}

    def drop_top(node):
        if isinstance(node, Apply):
            if node.fn == TOPFN:
                return tree.root
            got = drop_memo.get(id(node))
            if got is None:
                got = drop_memo[id(node)] = Apply(
                    node.fn, tuple(drop_top(a) for a in node.args)
                )
            return got
        return node

    phi4 = Formula(drop_top(phi3.root), variables)

    # stage 5: the threshold connective itself becomes d1
    maj_rep = Formula(
        Apply(
            D1FN,
            (Var("x1"), Var("x2"), Apply(D1FN, (Var("x1"), Var("x2"), Var("x3")))),
        ),
        ("x1", "x2", "x3"),
    )
    phi5 = replace_connectives(phi4, {MAJ3: maj_rep})
    leftover = phi5.connectives() - {D1FN}
    if leftover:
        raise RuleViolation(
            f"pipeline left foreign connectives behind: {sorted(f.name or f.bits() for f in leftover)}"
        )
    k2 = n - isqrt(n)
    return ReductionTrace(
        "maxones-star-d1",
        data={
            "n": n,
            "depth": d,
            "k_prime": k2,
            "selector": sel,
            "window_low": k2,
            "window_high": n,
        },
        formula=phi5,
        stages=(phi1, phi2, phi3, phi4, phi5),
    )

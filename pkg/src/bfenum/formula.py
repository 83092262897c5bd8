"""Connective trees over named variables, plus CNF containers.

Assignments are plain tuples of bits aligned with a formula's variable
order, which defaults to first occurrence in the tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .boolfn import BooleanFunction, PropertyKind, has_property, separating_coordinate
from .errors import (
    ArityMismatch,
    BaseMismatch,
    FormulaSyntaxError,
    MissingWeight,
    NotAffine,
    NotBinary,
    NotMonotone,
    NotSeparating,
    TooLarge,
    UnboundVariable,
    UnknownConnective,
    WeightOverflow,
)

MAX_WEIGHT_TOTAL = 2 ** 63 - 1


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    """A constant marker leaf, eliminated by gadget substitutions."""

    value: int


@dataclass(frozen=True)
class Apply:
    fn: BooleanFunction
    args: tuple

    def __post_init__(self):
        if len(self.args) != self.fn.arity:
            raise ArityMismatch(
                f"{self.fn!r} applied to {len(self.args)} arguments"
            )


# Gadget rewrites share subtrees by reference, so every walker below
# memoizes on node identity to stay linear in the stored graph.

def _collect_vars(node, out, seen, visited=None):
    if visited is None:
        visited = set()
    if id(node) in visited:
        return
    visited.add(id(node))
    if isinstance(node, Var):
        if node.name not in seen:
            seen.add(node.name)
            out.append(node.name)
    elif isinstance(node, Apply):
        for child in node.args:
            _collect_vars(child, out, seen, visited)


def _collect_connectives(node, out, visited=None):
    if visited is None:
        visited = set()
    if isinstance(node, Apply) and id(node) not in visited:
        visited.add(id(node))
        out.add(node.fn)
        for child in node.args:
            _collect_connectives(child, out, visited)


def _collect_consts(node, out, visited=None):
    if visited is None:
        visited = set()
    if id(node) in visited:
        return
    visited.add(id(node))
    if isinstance(node, Const):
        out.add(node.value)
    elif isinstance(node, Apply):
        for child in node.args:
            _collect_consts(child, out, visited)


class Formula:
    """A rooted connective tree with a fixed variable order."""

    __slots__ = ("root", "variables", "_index", "_program", "_connectives")

    def __init__(self, root, variables=None):
        occurring = []
        _collect_vars(root, occurring, set())
        if variables is None:
            variables = tuple(occurring)
        else:
            variables = tuple(variables)
            if len(set(variables)) != len(variables):
                raise UnboundVariable("duplicate variable in explicit order")
            missing = [v for v in occurring if v not in set(variables)]
            if missing:
                raise UnboundVariable(
                    f"variables {missing} occur but are not in the given order"
                )
        self.root = root
        self.variables = variables
        self._index = {v: i for i, v in enumerate(variables)}
        self._program = None
        self._connectives = None

    # -- structure

    def connectives(self) -> frozenset[BooleanFunction]:
        if self._connectives is None:
            found = set()
            _collect_connectives(self.root, found)
            self._connectives = frozenset(found)
        return self._connectives

    def constants(self) -> frozenset[int]:
        found = set()
        _collect_consts(self.root, found)
        return frozenset(found)

    def size(self) -> int:
        return node_count(self.root)

    # -- evaluation

    def _compile(self):
        # postorder program for a small stack machine; applications that
        # are referenced more than once compute into a slot on first use
        refs = {}

        def count(node):
            if isinstance(node, Apply):
                refs[id(node)] = refs.get(id(node), 0) + 1
                if refs[id(node)] == 1:
                    for child in node.args:
                        count(child)

        count(self.root)
        prog = []
        slots = {}

        def walk(node):
            if isinstance(node, Var):
                prog.append((0, self._index[node.name], 0))
            elif isinstance(node, Const):
                prog.append((1, node.value, 0))
            elif id(node) in slots:
                prog.append((3, slots[id(node)], 0))
            else:
                for child in node.args:
                    walk(child)
                prog.append((2, node.fn.table, node.fn.arity))
                if refs[id(node)] > 1:
                    slot = len(slots)
                    slots[id(node)] = slot
                    prog.append((4, slot, 0))

        walk(self.root)
        self._program = (prog, len(slots))

    def evaluate(self, bits) -> int:
        if len(bits) != len(self.variables):
            raise UnboundVariable(
                f"assignment has {len(bits)} bits, formula has "
                f"{len(self.variables)} variables"
            )
        if self._program is None:
            self._compile()
        prog, nslots = self._program
        cache = [0] * nslots
        stack = []
        push = stack.append
        for kind, a, b in prog:
            if kind == 0:
                push(bits[a])
            elif kind == 1:
                push(a)
            elif kind == 2:
                idx = 0
                for v in stack[-b:]:
                    idx = (idx << 1) | v
                del stack[-b:]
                push(a[idx])
            elif kind == 3:
                push(cache[a])
            else:
                cache[a] = stack[-1]
        return stack[0]

    def __repr__(self):
        return f"Formula({format_node(self.root)})"


def evaluate(phi: Formula, bits) -> int:
    return phi.evaluate(bits)


# -- parsing and printing

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|[01]|[(),])")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise FormulaSyntaxError(
                f"unexpected character {text[pos:].strip()[0]!r}", pos
            )
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


def _normalize_base(base) -> dict[str, BooleanFunction]:
    if isinstance(base, dict):
        return dict(base)
    named = {}
    for fn in base:
        if fn.name is None:
            raise UnknownConnective("base functions must be named for parsing")
        named[fn.name] = fn
    return named


def parse_formula(text, base, variables=None) -> Formula:
    """Parse one prefix expression like ``imp(x1, imp(x2, x3))``.

    Names found in the base are connectives, every other identifier is a
    variable, and the digits 0 and 1 are constant markers.
    """
    named = _normalize_base(base)
    tokens = _tokenize(text)
    if not tokens:
        raise FormulaSyntaxError("empty formula", 0)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, len(text))

    def take(expected=None):
        nonlocal pos
        tok, at = peek()
        if tok is None or (expected is not None and tok != expected):
            want = expected or "a token"
            raise FormulaSyntaxError(f"expected {want!r}, found {tok!r}", at)
        pos += 1
        return tok, at

    def expr():
        tok, at = take()
        if tok in ("0", "1"):
            return Const(int(tok))
        if tok in ("(", ")", ","):
            raise FormulaSyntaxError(f"unexpected {tok!r}", at)
        if tok in named:
            fn = named[tok]
            take("(")
            args = [expr()]
            while True:
                nxt, _ = peek()
                if nxt == ",":
                    take(",")
                    args.append(expr())
                else:
                    break
            take(")")
            if len(args) != fn.arity:
                raise FormulaSyntaxError(
                    f"{tok} takes {fn.arity} arguments, got {len(args)}", at
                )
            return Apply(fn, tuple(args))
        nxt, _ = peek()
        if nxt == "(":
            raise UnknownConnective(f"unknown connective {tok!r}")
        return Var(tok)

    root = expr()
    tok, at = peek()
    if tok is not None:
        raise FormulaSyntaxError(f"trailing input {tok!r}", at)
    return Formula(root, variables)


def format_node(node) -> str:
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Const):
        return str(node.value)
    parts = ",".join(format_node(a) for a in node.args)
    name = node.fn.name
    if name is None:
        name = f"fn{node.fn.bits()}"
    return f"{name}({parts})"


def format_formula(phi) -> str:
    node = phi.root if isinstance(phi, Formula) else phi
    return format_node(node)


def node_count(node) -> int:
    """Size of the connective tree (shared subtrees count every time)."""
    memo = {}

    def go(node):
        if not isinstance(node, Apply):
            return 1
        got = memo.get(id(node))
        if got is None:
            got = memo[id(node)] = 1 + sum(go(a) for a in node.args)
        return got

    return go(node)


# -- structural transforms

def _rebuild(node, hit, replacement, memo=None):
    if memo is None:
        memo = {}
    got = memo.get(id(node))
    if got is not None:
        return got
    if hit(node):
        out = replacement
    elif isinstance(node, Apply):
        args = tuple(_rebuild(a, hit, replacement, memo) for a in node.args)
        out = node if args == node.args else Apply(node.fn, args)
    else:
        out = node
    memo[id(node)] = out
    return out


def substitute(phi: Formula, target, replacement, extra_connectives=(), variables=None) -> Formula:
    """Replace a variable (by name) or a constant marker (0 or 1).

    The replacement may be a Formula or a bare node.  Its connectives must
    already occur in the formula or be explicitly allowed, otherwise the
    substitution would silently change the base.  Pass variables to pin
    the variable order of the result.
    """
    rep_node = replacement.root if isinstance(replacement, Formula) else replacement
    allowed = set(phi.connectives()) | set(extra_connectives)
    used = set()
    _collect_connectives(rep_node, used)
    stray = used - allowed
    if stray:
        raise BaseMismatch(f"replacement uses connectives outside the base: {sorted(f.name or f.bits() for f in stray)}")
    if isinstance(target, str):
        hit = lambda node: isinstance(node, Var) and node.name == target
    elif target in (0, 1):
        hit = lambda node: isinstance(node, Const) and node.value == target
    else:
        raise ValueError(f"substitution target must be a variable name or 0/1, got {target!r}")
    return Formula(_rebuild(phi.root, hit, rep_node), variables)


def replace_connectives(phi: Formula, table: dict) -> Formula:
    """Rewrite every application of a mapped connective with its
    representation, a Formula over variables x1..xk."""

    reps = {}
    for fn, rep in table.items():
        rep_root = rep.root if isinstance(rep, Formula) else rep
        order = rep.variables if isinstance(rep, Formula) else None
        reps[fn] = (rep_root, order)

    def instantiate(rep_root, children):
        memo = {}

        def go(node):
            if isinstance(node, Var):
                i = int(node.name[1:]) - 1
                return children[i]
            if isinstance(node, Apply):
                got = memo.get(id(node))
                if got is None:
                    got = memo[id(node)] = Apply(
                        node.fn, tuple(go(a) for a in node.args)
                    )
                return got
            return node

        return go(rep_root)

    walk_memo = {}

    def walk(node):
        if not isinstance(node, Apply):
            return node
        got = walk_memo.get(id(node))
        if got is None:
            args = tuple(walk(a) for a in node.args)
            if node.fn in reps:
                rep_root, _ = reps[node.fn]
                got = instantiate(rep_root, args)
            else:
                got = Apply(node.fn, args)
            walk_memo[id(node)] = got
        return got

    return Formula(walk(phi.root), phi.variables)


def balanced_fold(fn: BooleanFunction, operands) -> object:
    """Fold a binary connective over operands with logarithmic depth."""
    if fn.arity != 2:
        raise NotBinary(f"{fn!r} is not binary")
    items = [op.root if isinstance(op, Formula) else op for op in operands]
    if not items:
        raise ValueError("cannot fold zero operands")

    def build(lo, hi):
        if hi - lo == 1:
            return items[lo]
        mid = lo + (hi - lo + 1) // 2
        return Apply(fn, (build(lo, mid), build(mid, hi)))

    return build(0, len(items))


# -- analyses used by the enumerators

def separating_variable(phi: Formula) -> str:
    """A variable x such that every assignment with x = 1 is a model.

    Found by walking one branch: at each application, descend into the
    child at a coordinate fixed to 0 on the whole 0-preimage of the
    connective.  Requires every connective to be 0-separating.
    """
    node = phi.root
    while True:
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Const):
            if node.value == 1:
                # this branch is a tautology, any variable witnesses
                if phi.variables:
                    return phi.variables[0]
                raise NotSeparating("formula has no variables")
            raise NotSeparating("descent reached the constant 0")
        coord = separating_coordinate(node.fn, 0)
        if coord is None:
            raise NotSeparating(f"{node.fn!r} is not 0-separating")
        node = node.args[coord - 1]


def affine_form(phi: Formula) -> tuple[tuple[str, ...], int]:
    """Support variables and offset of an affine formula.

    An assignment is a model exactly when the parity of its support bits,
    xored with the offset, is 1.
    """
    for fn in phi.connectives():
        if not has_property(fn, PropertyKind.AFFINE):
            raise NotAffine(f"{fn!r} is not affine")
    n = len(phi.variables)
    zero = (0,) * n
    c = phi.evaluate(zero)
    support = []
    for i, v in enumerate(phi.variables):
        flipped = zero[:i] + (1,) + zero[i + 1:]
        if phi.evaluate(flipped) != c:
            support.append(v)
    return tuple(support), c


def monotone_extendable(phi: Formula, fixed: dict) -> bool:
    """Can a partial assignment be completed to a model?

    For monotone formulas this is one evaluation with every unfixed
    variable set to 1.
    """
    for fn in phi.connectives():
        if not has_property(fn, PropertyKind.MONOTONE):
            raise NotMonotone(f"{fn!r} is not monotone")
    for v in fixed:
        if v not in phi._index:
            raise UnboundVariable(f"{v!r} is not a variable of the formula")
    bits = tuple(fixed.get(v, 1) for v in phi.variables)
    return phi.evaluate(bits) == 1


# -- weights

def weight_vector(weights, variables) -> tuple[int, ...]:
    """Align a variable->weight map with a variable order, checking totals."""
    vec = []
    for v in variables:
        if v not in weights:
            raise MissingWeight(f"no weight for variable {v!r}")
        w = weights[v]
        if not isinstance(w, int) or w < 0:
            raise WeightOverflow(f"weights must be non-negative integers, got {w!r}")
        vec.append(w)
    if sum(vec) > MAX_WEIGHT_TOTAL:
        raise WeightOverflow("total weight exceeds the 64-bit budget")
    return tuple(vec)


def assignment_weight(bits, weights=None) -> int:
    """Weight of an assignment; unweighted means the number of ones."""
    if weights is None:
        return sum(bits)
    return sum(w for b, w in zip(bits, weights) if b)


# -- whole truth tables (oracle plumbing)

def truth_table_int(phi: Formula) -> int:
    """The formula's full truth table as an integer bit mask.

    Bit r of the result is the value at the assignment whose bits read as
    the binary expansion of r, first variable most significant.  Columns
    are composed bottom-up with big-integer bitwise operations, so no
    per-assignment evaluation happens.
    """
    n = len(phi.variables)
    if n > 24:
        raise TooLarge(f"truth table over {n} variables is too large")
    width = 1 << n
    full = (1 << width) - 1

    var_mask = {}
    for i in range(n):
        block = 1 << (n - 1 - i)
        unit = ((1 << block) - 1) << block
        period = 2 * block
        repeats = width // period
        mask = unit * (((1 << (period * repeats)) - 1) // ((1 << period) - 1))
        var_mask[phi.variables[i]] = mask

    def mask_of(node):
        if isinstance(node, Var):
            return var_mask[node.name]
        if isinstance(node, Const):
            return full if node.value else 0
        child = [mask_of(a) for a in node.args]
        out = 0
        k = node.fn.arity
        for row in range(1 << k):
            if not node.fn.table[row]:
                continue
            acc = full
            for j in range(k):
                m = child[j]
                if not (row >> (k - 1 - j)) & 1:
                    m = full ^ m
                acc &= m
                if not acc:
                    break
            out |= acc
        return out

    return mask_of(phi.root)


# -- CNF containers

@dataclass(frozen=True)
class CnfFormula:
    """Clauses over variables 1..n; a negative literal is a negated index."""

    n: int
    clauses: tuple[tuple[int, ...], ...]

    def variables(self):
        return tuple(f"x{i}" for i in range(1, self.n + 1))


def make_cnf(n, clauses, three=False) -> CnfFormula:
    if not isinstance(n, int) or n < 1:
        raise UnboundVariable(f"need at least one variable, got n={n!r}")
    seen_clauses = []
    for clause in clauses:
        clause = tuple(clause)
        if not clause:
            raise FormulaSyntaxError("empty clause")
        if three and len(clause) > 3:
            raise FormulaSyntaxError(f"clause {clause} has more than 3 literals")
        mentioned = set()
        for lit in clause:
            if not isinstance(lit, int) or lit == 0 or abs(lit) > n:
                raise UnboundVariable(f"bad literal {lit!r} for n={n}")
            if abs(lit) in mentioned:
                raise FormulaSyntaxError(f"clause {clause} mentions {abs(lit)} twice")
            mentioned.add(abs(lit))
        seen_clauses.append(clause)
    return CnfFormula(n, tuple(seen_clauses))


def cnf_evaluate(cnf: CnfFormula, bits) -> int:
    if len(bits) != cnf.n:
        raise UnboundVariable("assignment length does not match variable count")
    for clause in cnf.clauses:
        if not any(
            bits[abs(lit) - 1] == (1 if lit > 0 else 0) for lit in clause
        ):
            return 0
    return 1


def cnf_table_int(cnf: CnfFormula) -> int:
    """Truth table mask of a CNF, same row convention as truth_table_int."""
    n = cnf.n
    if n > 24:
        raise TooLarge(f"truth table over {n} variables is too large")
    width = 1 << n
    full = (1 << width) - 1
    masks = []
    for i in range(n):
        block = 1 << (n - 1 - i)
        unit = ((1 << block) - 1) << block
        period = 2 * block
        repeats = width // period
        masks.append(unit * (((1 << (period * repeats)) - 1) // ((1 << period) - 1)))
    out = full
    for clause in cnf.clauses:
        acc = 0
        for lit in clause:
            m = masks[abs(lit) - 1]
            acc |= m if lit > 0 else (full ^ m)
        out &= acc
    return out

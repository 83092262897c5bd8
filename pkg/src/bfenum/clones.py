"""Base profiling, problem classification, and clone closure.

A profile is the conjunction over the base of the per-function predicates;
each flag certifies that the generated clone sits inside the matching
region of the lattice of closed classes, which is what picks the
enumeration algorithm.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .boolfn import (
    BooleanFunction,
    PropertyKind,
    has_property,
    is_separating,
    is_separating_degree,
)
from .errors import ArityBudget, EmptyBase
from .formula import Apply, Formula, Var

# applying a wider generator to narrower arguments is fine, but far wider
# generators would make the fixpoint explode
_GENERATOR_SLACK = 2
_WORK_BUDGET = 80_000_000


class ProblemKind(enum.Enum):
    ENUM_SAT = "EnumSAT"
    ENUM_SAT_INC = "EnumSAT↑"
    ENUM_SAT_DEC = "EnumSAT↓"
    W_ENUM_SAT_INC = "wEnumSAT↑"
    W_ENUM_SAT_DEC = "wEnumSAT↓"
    MIN_ONES = "MinOnes"
    W_MIN_ONES = "wMinOnes"
    MAX_ONES_STAR = "MaxOnes*"
    W_MAX_ONES_STAR = "wMaxOnes*"


@dataclass(frozen=True)
class CloneProfile:
    all_0reproducing: bool
    all_1reproducing: bool
    all_monotone: bool
    all_affine: bool
    all_selfdual: bool
    all_0separating: bool
    all_0sep_deg2: bool
    all_0sep_deg3: bool
    all_disjunction: bool
    all_conjunction: bool


@dataclass(frozen=True)
class Verdict:
    kind: str  # "tractable" | "np-hard" | "open"
    algorithm: str | None = None
    tag: str | None = None

    @property
    def is_tractable(self):
        return self.kind == "tractable"

    @property
    def clone(self):
        if self.algorithm is None:
            return None
        return self.algorithm.split("-", 1)[0]

    def render(self):
        if self.kind == "tractable":
            return f"Tractable ({self.clone})"
        if self.kind == "np-hard":
            return f"NP-hard ({self.tag})"
        return "Open"


def clone_profile(base) -> CloneProfile:
    fns = list(base)
    if not fns:
        raise EmptyBase("a base needs at least one function")
    return CloneProfile(
        all_0reproducing=all(has_property(f, PropertyKind.REPRODUCING_0) for f in fns),
        all_1reproducing=all(has_property(f, PropertyKind.REPRODUCING_1) for f in fns),
        all_monotone=all(has_property(f, PropertyKind.MONOTONE) for f in fns),
        all_affine=all(has_property(f, PropertyKind.AFFINE) for f in fns),
        all_selfdual=all(has_property(f, PropertyKind.SELF_DUAL) for f in fns),
        all_0separating=all(is_separating(f, 0) for f in fns),
        all_0sep_deg2=all(is_separating_degree(f, 0, 2) for f in fns),
        all_0sep_deg3=all(is_separating_degree(f, 0, 3) for f in fns),
        all_disjunction=all(has_property(f, PropertyKind.DISJUNCTION_SHAPE) for f in fns),
        all_conjunction=all(has_property(f, PropertyKind.CONJUNCTION_SHAPE) for f in fns),
    )


# classifier dispatch, cheapest certified region first
_PRIORITY = ("L", "V", "E", "S0", "D", "M", "S02")

_ALGORITHMS: dict[ProblemKind, dict[str, str]] = {
    ProblemKind.ENUM_SAT: {
        "L": "L-parity-levels",
        "V": "V-levels",
        "E": "E-levels",
        "S0": "S0-steady-unsteady",
        "D": "D-pairing",
        "M": "M-lex-dfs",
        "S02": "S02-nested-bruteforce",
    },
    ProblemKind.ENUM_SAT_INC: {
        "L": "L-parity-levels",
        "V": "V-levels",
        "E": "E-levels",
        "S0": "S0-steady-unsteady",
    },
    ProblemKind.ENUM_SAT_DEC: {
        "L": "L-parity-levels",
        "V": "V-levels",
        "E": "E-levels",
        "S0": "S0-steady-unsteady",
        "M": "M-priority-queue",
        "S02": "S02-nested-bruteforce",
    },
    ProblemKind.W_ENUM_SAT_INC: {
        "L": "L-priority-queue",
        "V": "V-subset-sum",
        "E": "E-subset-sum",
    },
    ProblemKind.W_ENUM_SAT_DEC: {
        "L": "L-priority-queue",
        "V": "V-subset-sum",
        "E": "E-subset-sum",
        "S0": "S0-priority-queue",
        "M": "M-priority-queue",
    },
}
_ALGORITHMS[ProblemKind.MIN_ONES] = _ALGORITHMS[ProblemKind.ENUM_SAT_INC]
_ALGORITHMS[ProblemKind.W_MIN_ONES] = _ALGORITHMS[ProblemKind.W_ENUM_SAT_INC]
_ALGORITHMS[ProblemKind.MAX_ONES_STAR] = _ALGORITHMS[ProblemKind.ENUM_SAT_DEC]
_ALGORITHMS[ProblemKind.W_MAX_ONES_STAR] = dict(
    _ALGORITHMS[ProblemKind.W_ENUM_SAT_DEC], S02="S02-single-zero-scan"
)

_DEC_FAMILY = (
    ProblemKind.ENUM_SAT_DEC,
    ProblemKind.W_ENUM_SAT_DEC,
    ProblemKind.MAX_ONES_STAR,
    ProblemKind.W_MAX_ONES_STAR,
)
_WEIGHTED_INC = (ProblemKind.W_ENUM_SAT_INC, ProblemKind.W_MIN_ONES)


def _flag(profile: CloneProfile, clone: str) -> bool:
    return {
        "L": profile.all_affine,
        "V": profile.all_disjunction,
        "E": profile.all_conjunction,
        "S0": profile.all_0separating,
        "D": profile.all_selfdual,
        "M": profile.all_monotone,
        "S02": profile.all_0sep_deg2,
    }[clone]


def _hard_tag(problem: ProblemKind, p: CloneProfile) -> str:
    outside_all = not (
        p.all_monotone or p.all_affine or p.all_selfdual or p.all_0sep_deg2
    )
    if problem is ProblemKind.ENUM_SAT:
        return "S12"
    if problem in _DEC_FAMILY:
        return "D1" if p.all_selfdual else "S12"
    # increasing family
    if outside_all:
        return "S12"
    if p.all_selfdual:
        return "D2"
    if problem in _WEIGHTED_INC:
        if p.all_monotone and not p.all_0sep_deg2:
            return "S10"
        return "S00"
    if p.all_0sep_deg2:
        return "S00n" if p.all_0sep_deg3 else "D2"
    return "S10"


def classify(base, problem: ProblemKind) -> Verdict:
    """Decide tractability of one enumeration or optimization problem."""
    profile = clone_profile(base)
    table = _ALGORITHMS[problem]
    for clone in _PRIORITY:
        if clone in table and _flag(profile, clone):
            return Verdict("tractable", algorithm=table[clone])
    if problem is ProblemKind.W_ENUM_SAT_DEC and profile.all_0sep_deg2:
        return Verdict("open")
    return Verdict("np-hard", tag=_hard_tag(problem, profile))


def classify_all(base) -> dict[ProblemKind, Verdict]:
    return {problem: classify(base, problem) for problem in ProblemKind}


# -- clone closure

def _projection_table(m, i):
    # arity m, 1-based coordinate i, as a row tuple
    bit = 1 << (m - i)
    return tuple(1 if r & bit else 0 for r in range(2 ** m))


def _closure_impl(base, max_arity, want_witnesses):
    gens = sorted(
        set(base), key=lambda f: (f.arity, f.table, f.name or "")
    )
    if not gens:
        raise EmptyBase("a base needs at least one function")
    if not 1 <= max_arity <= 4:
        raise ArityBudget(f"max_arity must be between 1 and 4, got {max_arity}")
    for g in gens:
        if g.arity > max_arity + _GENERATOR_SLACK:
            raise ArityBudget(
                f"generator arity {g.arity} exceeds max_arity {max_arity} "
                f"by more than {_GENERATOR_SLACK}"
            )

    # per arity: table tuple -> witness node (over variables x1..xm)
    found: dict[int, dict[tuple, object]] = {m: {} for m in range(1, max_arity + 1)}
    for m in range(1, max_arity + 1):
        for i in range(1, m + 1):
            found[m].setdefault(_projection_table(m, i), Var(f"x{i}"))
        for g in gens:
            if g.arity == m:
                node = Apply(g, tuple(Var(f"x{i}") for i in range(1, m + 1)))
                found[m].setdefault(g.table, node)

    steps = 0
    for m in range(1, max_arity + 1):
        complete = 2 ** (2 ** m)
        rows = 2 ** m
        changed = True
        while changed and len(found[m]) < complete:
            changed = False
            # snapshot; additions during the scan join the next pass
            pool = list(found[m].items())
            for g in gens:
                for combo in itertools.product(pool, repeat=g.arity):
                    steps += rows
                    if steps > _WORK_BUDGET:
                        raise ArityBudget("closure work budget exceeded")
                    table = tuple(
                        g.table[
                            _index_of(tuple(child[0][r] for child in combo))
                        ]
                        for r in range(rows)
                    )
                    if table not in found[m]:
                        found[m][table] = Apply(
                            g, tuple(child[1] for child in combo)
                        )
                        changed = True
                if len(found[m]) >= complete:
                    break

    out = {}
    for m in range(1, max_arity + 1):
        for table, witness in found[m].items():
            out[BooleanFunction(m, table)] = Formula(
                witness, tuple(f"x{i}" for i in range(1, m + 1))
            )
    if want_witnesses:
        return out
    return set(out)


def _index_of(bits):
    idx = 0
    for b in bits:
        idx = (idx << 1) | b
    return idx


def clone_closure(base, max_arity) -> set[BooleanFunction]:
    """All functions of arity up to max_arity derivable from the base.

    Projections are always included.  Generators of larger arity may be
    applied (their results are restricted to the arity bound) but are not
    themselves part of the result.
    """
    return _closure_impl(base, max_arity, want_witnesses=False)


def clone_closure_witnessed(base, max_arity) -> dict[BooleanFunction, Formula]:
    """Like clone_closure but maps each member to a defining formula."""
    return _closure_impl(base, max_arity, want_witnesses=True)

"""Command line front end.

Subcommands: classify, enum, solve, gadget, report.  Exit codes: 0 on
success, 2 on unusable input, 3 when the requested problem is NP-hard
for the base, 4 when it is open, 5 when a gadget cannot be built, 1 on
an oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import errors
from .boolfn import make_function
from .clones import ProblemKind, classify, clone_profile
from .enumeration import (
    ORDERS,
    ORDER_NONE,
    brute_force_enumerate,
    effective_base,
    enumerate_models,
)
from .formula import format_formula, make_cnf, parse_formula
from .gadgets import (
    flip_literals,
    invroot_reduction,
    maxones_star_d1_pipeline,
    minones_const0_reduction,
    minones_const1_reduction,
    pad_to_power3,
    require_representation,
    satstar_reduction,
    threshold_tree,
    wminones_fresh_var_reduction,
)
from .optimize import min_ones, max_ones_star
from .report import write_report

EXIT_OK = 0
EXIT_ORACLE = 1
EXIT_USAGE = 2
EXIT_INTRACTABLE = 3
EXIT_OPEN = 4
EXIT_GADGET = 5

_PROFILE_ROWS = (
    ("0-reproducing", "all_0reproducing"),
    ("1-reproducing", "all_1reproducing"),
    ("monotone", "all_monotone"),
    ("affine", "all_affine"),
    ("self-dual", "all_selfdual"),
    ("0-separating", "all_0separating"),
    ("0-separating-deg2", "all_0sep_deg2"),
    ("0-separating-deg3", "all_0sep_deg3"),
    ("disjunction-shape", "all_disjunction"),
    ("conjunction-shape", "all_conjunction"),
)


# -- input files

def load_base(path):
    """Named functions, one per line: <name> <arity> <bits>."""
    fns = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise errors.FormulaSyntaxError(
                    f"{path}:{lineno}: expected '<name> <arity> <bits>'"
                )
            name, arity, bits = parts
            fns[name] = make_function(int(arity), bits, name=name)
    if not fns:
        raise errors.EmptyBase(f"{path}: no functions")
    return fns


def load_weights(path):
    """Variable weights, one per line: <var> <weight>."""
    weights = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise errors.FormulaSyntaxError(
                    f"{path}:{lineno}: expected '<var> <weight>'"
                )
            weights[parts[0]] = int(parts[1])
    return weights


def load_formula(path, base):
    """Optional 'vars: ...' header, then one prefix expression."""
    lines = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].rstrip()
            if line.strip():
                lines.append(line)
    variables = None
    if lines and lines[0].lstrip().startswith("vars:"):
        variables = lines[0].split(":", 1)[1].split()
        lines = lines[1:]
    text = " ".join(lines)
    if not text.strip():
        raise errors.FormulaSyntaxError(f"{path}: no expression found")
    return parse_formula(text, base, variables=variables)


def load_cnf(path):
    """DIMACS-style: optional 'p cnf <n> <m>' header, clauses ending in 0."""
    n = None
    clauses = []
    buf = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) < 4 or parts[1] != "cnf":
                    raise errors.FormulaSyntaxError(f"{path}: bad header {line!r}")
                n = int(parts[2])
                continue
            for tok in line.split():
                lit = int(tok)
                if lit == 0:
                    if buf:
                        clauses.append(tuple(buf))
                        buf = []
                else:
                    buf.append(lit)
    if buf:
        clauses.append(tuple(buf))
    if n is None:
        if not clauses:
            raise errors.FormulaSyntaxError(f"{path}: empty CNF")
        n = max(abs(lit) for cl in clauses for lit in cl)
    return make_cnf(n, clauses)


def _dump_cnf(cnf, out=None):
    out = out if out is not None else sys.stdout
    print(f"p cnf {cnf.n} {len(cnf.clauses)}", file=out)
    for clause in cnf.clauses:
        print(" ".join(str(lit) for lit in clause) + " 0", file=out)


def _base_for(args):
    base = load_base(args.base)
    if getattr(args, "formula", None):
        phi = load_formula(args.formula, base)
        return effective_base(phi), phi
    return sorted(base.values(), key=lambda f: f.name or ""), None


# -- subcommands

def cmd_classify(args):
    base, _ = _base_for(args)
    profile = clone_profile(base)
    for label, attr in _PROFILE_ROWS:
        print(f"{label}: {'yes' if getattr(profile, attr) else 'no'}")
    print()
    for kind in ProblemKind:
        print(f"{kind.value}: {classify(base, kind).render()}")
    return EXIT_OK


def _emit(bits, weight, fmt):
    text = "".join(map(str, bits))
    if fmt == "jsonl":
        print(json.dumps({"bits": text, "weight": weight}))
    else:
        print(f"{text}\t{weight}")


def cmd_enum(args):
    base = load_base(args.base)
    phi = load_formula(args.formula, base)
    weights = load_weights(args.weights) if args.weights else None
    if args.oracle:
        if len(phi.variables) > 16:
            raise errors.TooLarge("the oracle cross-check is capped at 16 variables")
        if args.limit is not None:
            raise errors.FormulaSyntaxError("the oracle needs an unlimited run")
    try:
        stream = enumerate_models(
            phi,
            order=args.order,
            weights=weights,
            force_bruteforce=args.force_bruteforce,
        )
    except errors.Intractable as exc:
        print(f"NP-hard ({exc.tag})", file=sys.stderr)
        return EXIT_INTRACTABLE
    except errors.OpenCase as exc:
        print(f"Open: {exc}", file=sys.stderr)
        return EXIT_OPEN
    seen = []
    for bits, weight in stream:
        _emit(bits, weight, args.format)
        seen.append((bits, weight))
        if args.limit is not None and len(seen) >= args.limit:
            break
    if args.oracle:
        reference = list(brute_force_enumerate(phi, order=args.order, weights=weights))
        got = sorted(b for b, _ in seen)
        want = sorted(b for b, _ in reference)
        if len(set(got)) != len(got) or got != want:
            print("oracle mismatch: model sets differ", file=sys.stderr)
            return EXIT_ORACLE
        if dict(reference) != dict(seen):
            print("oracle mismatch: weights differ", file=sys.stderr)
            return EXIT_ORACLE
    if args.stats:
        print(f"max_delay_evals={stream.max_delay_evals}")
    return EXIT_OK


def cmd_solve(args):
    base = load_base(args.base)
    phi = load_formula(args.formula, base)
    weights = load_weights(args.weights) if args.weights else None
    solver = min_ones if args.problem == "minones" else max_ones_star
    try:
        result = solver(phi, weights, force_bruteforce=args.force_bruteforce)
    except errors.Intractable as exc:
        print(f"INTRACTABLE({exc.tag})")
        return EXIT_INTRACTABLE
    if result.found:
        print("".join(map(str, result.bits)) + f"\t{result.weight}")
    elif result.status == "unsat":
        print("UNSAT")
    else:
        print("NO-NONTRIVIAL")
    if args.stats:
        print(f"evals={result.evals}")
    return EXIT_OK


def cmd_gadget(args):
    if args.gadget == "threshold-tree":
        tree = threshold_tree(args.p, args.q, args.depth)
        print(format_formula(tree))
        return EXIT_OK
    if args.gadget == "flip":
        _dump_cnf(flip_literals(load_cnf(args.cnf)))
        return EXIT_OK
    if args.gadget == "invroot":
        trace = invroot_reduction(load_cnf(args.cnf), args.bound)
    elif args.gadget == "pad3":
        trace = pad_to_power3(load_cnf(args.cnf))
    elif args.gadget == "d1-pipeline":
        trace = maxones_star_d1_pipeline(load_cnf(args.cnf))
    elif args.gadget == "find-rep":
        base = load_base(args.base)
        arity = (len(args.target)).bit_length() - 1
        target = make_function(arity, args.target, name="target")
        rep = require_representation(
            target, base.values(), size_limit=args.size_limit
        )
        print(format_formula(rep))
        return EXIT_OK
    else:
        base = load_base(args.base)
        phi = load_formula(args.formula, base)
        if args.gadget == "satstar":
            trace = satstar_reduction(phi)
        elif args.gadget == "minones-const0":
            trace = minones_const0_reduction(phi, args.bound)
        elif args.gadget == "minones-const1":
            trace = minones_const1_reduction(phi, args.bound)
        else:
            trace = wminones_fresh_var_reduction(phi, args.bound)
    print(json.dumps(trace.to_json(), indent=2, sort_keys=True))
    return EXIT_OK


def cmd_report(args):
    base = load_base(args.base)
    phi = load_formula(args.formula, base)
    weights = load_weights(args.weights) if args.weights else None
    try:
        paths = write_report(
            phi,
            args.out,
            order=args.order,
            weights=weights,
            limit=args.limit,
            force_bruteforce=args.force_bruteforce,
        )
    except errors.Intractable as exc:
        print(f"NP-hard ({exc.tag})", file=sys.stderr)
        return EXIT_INTRACTABLE
    except errors.OpenCase as exc:
        print(f"Open: {exc}", file=sys.stderr)
        return EXIT_OPEN
    for name in sorted(paths):
        print(f"{name}\t{paths[name]}")
    return EXIT_OK


# -- wiring

def build_parser():
    parser = argparse.ArgumentParser(
        prog="bfenum",
        description="Classify and enumerate models of formulas over small bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="profile a base and rate all nine problems")
    p.add_argument("--base", required=True, help="base file: name arity bits")
    p.add_argument("--formula", help="classify this formula's effective base instead")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("enum", help="stream models in a weight order")
    p.add_argument("--base", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--order", choices=ORDERS, default=ORDER_NONE)
    p.add_argument("--weights", help="weights file: var weight")
    p.add_argument("--limit", type=int)
    p.add_argument("--format", choices=("bits", "jsonl"), default="bits")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--force-bruteforce", action="store_true")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against brute force (max 16 variables)")
    p.set_defaults(fn=cmd_enum)

    p = sub.add_parser("solve", help="lightest model or heaviest non-trivial model")
    p.add_argument("--base", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--problem", choices=("minones", "maxones-star"), required=True)
    p.add_argument("--weights")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--force-bruteforce", action="store_true")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("gadget", help="build a reduction and print its trace")
    gsub = p.add_subparsers(dest="gadget", required=True)

    g = gsub.add_parser("threshold-tree")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--depth", type=int, required=True)

    for name in ("flip", "invroot", "pad3", "d1-pipeline"):
        g = gsub.add_parser(name)
        g.add_argument("--cnf", required=True)
        if name == "invroot":
            g.add_argument("--bound", type=int, required=True)

    g = gsub.add_parser("find-rep")
    g.add_argument("--base", required=True)
    g.add_argument("--target", required=True, help="truth table bits, length a power of two")
    g.add_argument("--size-limit", type=int, default=7)

    for name in ("satstar", "minones-const0", "minones-const1", "wminones-fresh"):
        g = gsub.add_parser(name)
        g.add_argument("--base", required=True)
        g.add_argument("--formula", required=True)
        if name != "satstar":
            g.add_argument("--bound", type=int, required=True)

    p.set_defaults(fn=cmd_gadget)

    p = sub.add_parser("report", help="write models.tsv and charts to a directory")
    p.add_argument("--base", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--order", choices=ORDERS, default=ORDER_NONE)
    p.add_argument("--weights")
    p.add_argument("--limit", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--force-bruteforce", action="store_true")
    p.set_defaults(fn=cmd_report)

    return parser


_USAGE_ERRORS = (
    errors.FormulaSyntaxError,
    errors.UnknownConnective,
    errors.UnboundVariable,
    errors.ArityMismatch,
    errors.LengthMismatch,
    errors.ZeroArity,
    errors.TooLarge,
    errors.BadThreshold,
    errors.MissingWeight,
    errors.WeightOverflow,
    errors.EmptyBase,
    errors.NotBinary,
    errors.BaseMismatch,
    errors.ArityBudget,
    ValueError,
    OSError,
)

_GADGET_ERRORS = (
    errors.SizeGuard,
    errors.PaddingInfeasible,
    errors.RepresentationMissing,
    errors.MissingEntry,
    errors.EKRViolation,
    errors.RuleViolation,
    errors.NotSeparating,
    errors.NotAffine,
    errors.NotMonotone,
    errors.NotSelfDual,
    errors.NotDeg2,
)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except errors.Intractable as exc:
        print(f"NP-hard ({exc.tag})", file=sys.stderr)
        return EXIT_INTRACTABLE
    except errors.OpenCase as exc:
        print(f"Open: {exc}", file=sys.stderr)
        return EXIT_OPEN
    except _GADGET_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GADGET
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Model enumeration for formulas over arbitrary small bases.

The package profiles the closure properties of a connective base,
decides which enumeration and optimization problems stay tractable for
it, and runs a dedicated polynomial-delay enumerator for each tractable
slot.  Reduction gadgets for the hard slots live in :mod:`bfenum.gadgets`.
"""

from . import errors
from .boolfn import (
    MAX_ARITY,
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
from .clones import (
    CloneProfile,
    ProblemKind,
    Verdict,
    classify,
    classify_all,
    clone_closure,
    clone_closure_witnessed,
    clone_profile,
)
from .enumeration import (
    BRUTE_FORCE_MAX_VARS,
    ORDERS,
    ORDER_DEC,
    ORDER_INC,
    ORDER_NONE,
    EnumerationStream,
    brute_force_enumerate,
    effective_base,
    enumerate_models,
    normalize_weights,
    problem_for,
    stream_with_algorithm,
    subset_sum_enumerate,
    weight_level_assignments,
)
from .formula import (
    Apply,
    CnfFormula,
    Const,
    Formula,
    Var,
    balanced_fold,
    cnf_evaluate,
    format_formula,
    make_cnf,
    parse_formula,
    replace_connectives,
    substitute,
    truth_table_int,
    weight_vector,
)
from .gadgets import (
    ReductionTrace,
    cnf_to_bformula,
    find_representation,
    flip_literals,
    invroot_reduction,
    maxones_star_d1_pipeline,
    minones_const0_reduction,
    minones_const1_reduction,
    pad_to_power3,
    require_representation,
    satstar_reduction,
    threshold_tree,
    verify_representation,
    wminones_fresh_var_reduction,
)
from .optimize import OptResult, brute_force_opt, max_ones_star, min_ones, w_max_ones_star_s02
from .report import write_report

__version__ = "0.1.0"

__all__ = [
    "MAX_ARITY",
    "BRUTE_FORCE_MAX_VARS",
    "ORDERS",
    "ORDER_NONE",
    "ORDER_INC",
    "ORDER_DEC",
    "errors",
    "BooleanFunction",
    "PropertyKind",
    "make_function",
    "constant_function",
    "eval_function",
    "dual",
    "fictive_coordinates",
    "has_property",
    "separating_coordinate",
    "is_separating",
    "is_separating_degree",
    "is_separating_deg2",
    "threshold_function",
    "CloneProfile",
    "ProblemKind",
    "Verdict",
    "clone_profile",
    "classify",
    "classify_all",
    "clone_closure",
    "clone_closure_witnessed",
    "Var",
    "Const",
    "Apply",
    "Formula",
    "CnfFormula",
    "parse_formula",
    "format_formula",
    "balanced_fold",
    "substitute",
    "replace_connectives",
    "truth_table_int",
    "weight_vector",
    "make_cnf",
    "cnf_evaluate",
    "EnumerationStream",
    "enumerate_models",
    "brute_force_enumerate",
    "stream_with_algorithm",
    "effective_base",
    "normalize_weights",
    "problem_for",
    "subset_sum_enumerate",
    "weight_level_assignments",
    "OptResult",
    "min_ones",
    "max_ones_star",
    "w_max_ones_star_s02",
    "brute_force_opt",
    "ReductionTrace",
    "threshold_tree",
    "flip_literals",
    "verify_representation",
    "find_representation",
    "require_representation",
    "cnf_to_bformula",
    "invroot_reduction",
    "pad_to_power3",
    "minones_const0_reduction",
    "minones_const1_reduction",
    "wminones_fresh_var_reduction",
    "satstar_reduction",
    "maxones_star_d1_pipeline",
    "write_report",
]

from .ast import (
    And,
    Eq,
    ExistsElem,
    ExistsSet,
    ForallElem,
    ForallSet,
    Formula,
    FreeVar,
    Iff,
    Implies,
    Member,
    Not,
    Or,
    RelAtom,
    ast_stats,
    conj,
    disj,
    free_variables,
    is_fo,
    walk,
)
from .evaluate import (
    DEFAULT_BUDGET,
    Evaluator,
    cost_guard,
    count_satisfying,
    estimate_cost,
    evaluate,
    optimize_affine,
)
from .parser import parse_formula
from .printer import print_formula

__all__ = [
    "And", "Eq", "ExistsElem", "ExistsSet", "ForallElem", "ForallSet",
    "Formula", "FreeVar", "Iff", "Implies", "Member", "Not", "Or", "RelAtom",
    "ast_stats", "conj", "disj", "free_variables", "is_fo", "walk",
    "DEFAULT_BUDGET", "Evaluator", "cost_guard", "count_satisfying",
    "estimate_cost", "evaluate", "optimize_affine",
    "parse_formula", "print_formula",
]

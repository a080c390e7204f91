"""2-adic valuations of integer quadratics.

The sequence nu2(f(n)) for f(n) = a*n**2 + b*n + c is either eventually
about as tame as possible (constant, or periodic with a power-of-two
period and a closed form per residue class) or unbounded along one or
two 2-adically convergent families of inputs.  This package classifies
a given f, evaluates the closed forms, builds the valuation tree, and
checks everything against plain brute force.
"""

from .arith import (
    INFINITE,
    DiscFactorization,
    Valuation,
    factor_discriminant,
    inverse_mod_pow2,
    is_square_in_Z2,
    nu,
    nu2,
    nu_product_check,
    nu_rational,
)
from .classify import Case, Classification, classify, constant_valuation, reduce_even
from .closed_form import (
    PeriodTable,
    closed_form_valuation,
    is_bounded,
    max_valuation,
    period_table,
)
from .operators import (
    OperatorDescriptor,
    OperatorKind,
    apply_operators,
    canonical_residue_map,
    canonicalize_to_type_ell_1,
    dilate,
    s_operator,
    table_s_law,
    table_translate_law,
    translate,
)
from .oracle import ValuationSequence, empirical_period, valuation_sequence
from .poly import DomainError, QuadraticPoly
from .tree import (
    NodeStatus,
    TreeNode,
    ValuationTree,
    build_tree,
    infinite_branch_residues,
    is_type_ell_1,
    node_status,
    nodes_by_level,
    walk,
)

__version__ = "0.1.0"

__all__ = [
    "INFINITE",
    "Valuation",
    "DiscFactorization",
    "nu",
    "nu2",
    "nu_rational",
    "nu_product_check",
    "factor_discriminant",
    "is_square_in_Z2",
    "inverse_mod_pow2",
    "DomainError",
    "QuadraticPoly",
    "Case",
    "Classification",
    "classify",
    "reduce_even",
    "constant_valuation",
    "PeriodTable",
    "closed_form_valuation",
    "period_table",
    "max_valuation",
    "is_bounded",
    "NodeStatus",
    "TreeNode",
    "ValuationTree",
    "node_status",
    "build_tree",
    "walk",
    "nodes_by_level",
    "infinite_branch_residues",
    "is_type_ell_1",
    "OperatorKind",
    "OperatorDescriptor",
    "translate",
    "dilate",
    "s_operator",
    "apply_operators",
    "table_translate_law",
    "table_s_law",
    "canonicalize_to_type_ell_1",
    "canonical_residue_map",
    "ValuationSequence",
    "valuation_sequence",
    "empirical_period",
    "__version__",
]

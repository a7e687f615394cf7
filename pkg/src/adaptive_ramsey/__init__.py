"""Exact upper bounds on the triangle Ramsey numbers R_n(3) and Schur numbers."""

from .bounds import (
    AdaptiveBound,
    BoundTableRow,
    KnowledgeBase,
    KnowledgeBaseEntry,
    adaptive_from_anchor,
    apply_assumption,
    best_bounds_table,
    check_optimality_remark,
    closed_form_bound,
    default_kb,
    gg_step,
    load_kb,
    normalize_kb,
    propagate_recursive,
    schur_upper,
)
from .errors import BudgetExceeded, DomainError, FormatError
from .exact_arith import check_euler_recursion, factorial, floor_factorial_e, floor_scaled
from .oracles import (
    EdgeColoring,
    SchurPartition,
    check_schur_ramsey_link,
    exists_good_coloring,
    find_mono_triangle,
    find_schur_violation,
    schur_number,
    verify_witness,
)

__version__ = "0.1.0"

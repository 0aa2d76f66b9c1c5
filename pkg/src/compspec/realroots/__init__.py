from .algebraic import (
    AlgebraicPoint,
    IntervalQ,
    Sign,
    algebraic_value,
    compare,
    isolate_real_roots,
    largest_real_root,
    multiplicity,
    nonnegative_on,
    refine,
    same_point,
    sign_at,
    squarefree_decompose,
)
from .sturm import cauchy_bound, count_real_roots, squarefree_part, sturm_sequence

__all__ = [
    "AlgebraicPoint",
    "IntervalQ",
    "Sign",
    "algebraic_value",
    "cauchy_bound",
    "compare",
    "count_real_roots",
    "isolate_real_roots",
    "largest_real_root",
    "multiplicity",
    "nonnegative_on",
    "refine",
    "same_point",
    "sign_at",
    "squarefree_decompose",
    "squarefree_part",
    "sturm_sequence",
]

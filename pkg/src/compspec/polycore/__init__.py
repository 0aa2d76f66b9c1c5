from .faa import bell_polynomial, bell_table, compose_jet, faa_di_bruno_derivative, poly_jet
from .linear import (
    Affine,
    CubicNeg,
    CubicPos,
    General,
    LinearMap,
    NormalForm,
    Quadratic,
    depress_cubic,
    linear_conjugate,
    normal_form,
    quadratic_invariant,
    reflect,
)
from .parser import parse, tokenize
from .poly import (
    DEFAULT_LIMITS,
    X,
    Limits,
    Poly,
    compose,
    derivative,
    format_poly,
    from_roots,
    iterate,
    poly_divmod,
    poly_gcd,
)

__all__ = [
    "Affine",
    "CubicNeg",
    "CubicPos",
    "DEFAULT_LIMITS",
    "General",
    "Limits",
    "LinearMap",
    "NormalForm",
    "Poly",
    "Quadratic",
    "X",
    "bell_polynomial",
    "bell_table",
    "compose",
    "compose_jet",
    "depress_cubic",
    "derivative",
    "faa_di_bruno_derivative",
    "format_poly",
    "from_roots",
    "iterate",
    "linear_conjugate",
    "normal_form",
    "parse",
    "poly_divmod",
    "poly_gcd",
    "poly_jet",
    "quadratic_invariant",
    "reflect",
    "tokenize",
]

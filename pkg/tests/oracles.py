"""Independent reference computations used by several test modules."""

from fractions import Fraction

import numpy as np
import sympy

from compspec.polycore import Poly

_t = sympy.Symbol("t")


def sympy_poly(p: Poly) -> sympy.Poly:
    return sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0], _t
    )


def grid_root_count(p: Poly, points: int = 200_001) -> int:
    """Distinct real roots of ``p`` by scanning the sign of its square-free
    part (computed by sympy) on a dense grid over a root bound interval."""
    sqf = sympy.sqf_part(sympy_poly(p))
    cs = [float(c) for c in sqf.all_coeffs()]
    if len(cs) <= 1:
        return 0
    bound = 1 + max(abs(c / cs[0]) for c in cs[1:])
    xs = np.linspace(-bound, bound, points)
    vals = np.polyval(cs, xs)
    signs = np.sign(vals)
    # roots of a square-free polynomial are simple: either a sample hits one
    # exactly or the sign flips between neighbouring samples
    zeros = int(np.count_nonzero(signs == 0))
    return zeros + int(np.count_nonzero(signs[1:] * signs[:-1] < 0))


def random_int_poly(rng, max_degree: int = 6, coeff: int = 5) -> Poly:
    while True:
        deg = int(rng.integers(1, max_degree + 1))
        cs = [int(c) for c in rng.integers(-coeff, coeff + 1, size=deg + 1)]
        p = Poly(cs)
        if p.degree >= 1:
            return p


def exact_derivative_values(p: Poly, x: Fraction, n: int) -> list[Fraction]:
    q = sympy_poly(p).as_expr()
    return [Fraction(str(sympy.diff(q, _t, k).subs(_t, sympy.Rational(x.numerator, x.denominator)))) for k in range(n + 1)]


def random_fraction(rng, bound: int = 5, max_den: int = 6) -> Fraction:
    den = int(rng.integers(1, max_den + 1))
    return Fraction(int(rng.integers(-bound * den, bound * den + 1)), den)


def random_symbol(rng, degrees=(1, 2, 3), bound: int = 5) -> Poly:
    while True:
        deg = int(rng.choice(degrees))
        p = Poly([random_fraction(rng, bound) for _ in range(deg + 1)])
        if p.degree == deg and p != Poly.x():
            return p


def random_linear_map(rng):
    from compspec.polycore import LinearMap

    while True:
        a = random_fraction(rng, 4)
        if a != 0:
            return LinearMap(a, random_fraction(rng, 4))

"""Faà di Bruno assembly of higher derivatives of compositions.

All routines here are generic over the scalar type: Fractions give exact
results, floats/mpmath numbers/numpy arrays give numerical ones.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .poly import Poly, derivative


def bell_table(xs: Sequence, n: int) -> list[list]:
    """Partial Bell polynomials ``B[m][k] = B_{m,k}(xs[0], xs[1], ...)``.

    ``xs[i]`` plays the role of the (i+1)-th derivative of the inner
    function. Uses ``B_{m,k} = sum_i C(m-1, i-1) x_i B_{m-i,k-1}``.
    """
    if len(xs) < n:
        raise ValueError(f"need {n} inner derivatives, got {len(xs)}")
    zero = 0 * xs[0] if n else 0
    table = [[zero] * (n + 1) for _ in range(n + 1)]
    table[0][0] = zero + 1
    for m in range(1, n + 1):
        for k in range(1, m + 1):
            acc = zero
            for i in range(1, m - k + 2):
                prev = table[m - i][k - 1]
                acc = acc + comb(m - 1, i - 1) * xs[i - 1] * prev
            table[m][k] = acc
    return table


def bell_polynomial(n: int, k: int, xs: Sequence):
    return bell_table(xs, n)[n][k]


def compose_jet(outer: Sequence, inner: Sequence) -> list:
    """Jet of ``f∘g`` from jets of ``f`` (at ``g(x)``) and ``g`` (at ``x``).

    ``outer = [f(g(x)), f'(g(x)), ..., f^(n)(g(x))]`` and
    ``inner = [g(x), g'(x), ..., g^(n)(x)]``; both must have length n+1.
    """
    n = len(inner) - 1
    if len(outer) < n + 1:
        raise ValueError("outer jet shorter than inner jet")
    table = bell_table(list(inner[1:]), n)
    out = [outer[0]]
    for m in range(1, n + 1):
        acc = 0 * outer[0]
        for j in range(1, m + 1):
            acc = acc + outer[j] * table[m][j]
        out.append(acc)
    return out


def poly_jet(p: Poly, x, n: int) -> list:
    """``[p(x), p'(x), ..., p^(n)(x)]``."""
    out = []
    q = p
    for _ in range(n + 1):
        out.append(q(x))
        q = derivative(q)
    return out


def faa_di_bruno_derivative(f_derivs: Sequence, p: Poly, n: int, x):
    """n-th derivative of ``f∘p`` at ``x`` via partial Bell polynomials.

    ``f_derivs[j-1]`` supplies ``f^(j)`` for ``1 <= j <= n``: either a Poly
    (evaluated at ``p(x)``) or a number taken to be ``f^(j)(p(x))`` already.
    """
    if n < 1:
        raise ValueError("derivative order must be positive")
    if len(f_derivs) < n:
        raise ValueError(f"missing derivative order {len(f_derivs) + 1} of the outer function")
    if isinstance(x, int):
        x = Fraction(x)
    px = p(x)
    outer = [px]
    for j in range(n):
        fj = f_derivs[j]
        outer.append(fj(px) if isinstance(fj, Poly) else fj)
    inner = poly_jet(p, x, n)
    return compose_jet(outer, inner)[n]

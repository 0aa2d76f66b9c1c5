"""Sturm sequences over the integers and root counting.

Polynomials are converted to primitive integer coefficient lists (lowest
power first) by a *positive* scaling, so signs are never disturbed. Each
remainder is stripped of its content before the next division, which keeps
the coefficients from exploding.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from ..polycore import Poly, poly_gcd

IntPoly = list[int]


def to_int_poly(p: Poly) -> IntPoly:
    """Primitive integer list proportional to ``p`` with a positive factor."""
    if p.is_zero():
        return []
    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    cs = [int(c * den) for c in p.coeffs]
    return primitive(cs)


def primitive(cs: IntPoly) -> IntPoly:
    g = 0
    for c in cs:
        g = gcd(g, c)
    if g > 1:
        cs = [c // g for c in cs]
    return cs


def sign_at_rational(cs: Sequence[int], x: Fraction) -> int:
    """Sign of the integer polynomial at ``x`` (homogenised Horner, no Fractions)."""
    if not cs:
        return 0
    n, d = x.numerator, x.denominator
    acc = cs[-1]
    dp = d
    for c in reversed(cs[:-1]):
        acc = acc * n + c * dp
        dp *= d
    return (acc > 0) - (acc < 0)


def sign_at_infinity(cs: Sequence[int], positive: bool) -> int:
    if not cs:
        return 0
    s = 1 if cs[-1] > 0 else -1
    if not positive and (len(cs) - 1) % 2:
        s = -s
    return s


def _neg_prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """``-k * (a mod b)`` for some ``k > 0``, made primitive."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    steps = 0
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        rl = r[-1]
        r = [lb * c for c in r]
        for j in range(db + 1):
            r[k + j] -= rl * b[j]
        while r and r[-1] == 0:
            r.pop()
        steps += 1
    flip = -1 if (lb < 0 and steps % 2) else 1
    return primitive([-flip * c for c in r])


def squarefree_part(p: Poly) -> Poly:
    if p.degree <= 0:
        return p
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def sturm_sequence(p: Poly) -> list[IntPoly]:
    """Sturm chain of the square-free part of ``p`` (integer coefficients)."""
    s = squarefree_part(p)
    first = to_int_poly(s)
    if len(first) <= 1:
        return [first] if first else []
    deriv = primitive([i * c for i, c in enumerate(first)][1:])
    seq = [first, deriv]
    while len(seq[-1]) > 1:
        nxt = _neg_prem(seq[-2], seq[-1])
        if not nxt:
            break
        seq.append(nxt)
    return seq


def _variations(signs: Sequence[int]) -> int:
    out = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            out += 1
        last = s
    return out


def variations_at(seq: Sequence[IntPoly], x: Optional[Fraction], positive: bool = True) -> int:
    """Sign variations of the chain at ``x`` (``None`` means +-infinity)."""
    if x is None:
        return _variations([sign_at_infinity(s, positive) for s in seq])
    return _variations([sign_at_rational(s, x) for s in seq])


def count_in(seq: Sequence[IntPoly], lo: Optional[Fraction], hi: Optional[Fraction]) -> int:
    """Distinct roots in ``[lo, hi]``; ``None`` bounds are infinite."""
    if not seq:
        return 0
    if lo is not None and hi is not None and lo > hi:
        return 0
    v_lo = variations_at(seq, lo, positive=False)
    v_hi = variations_at(seq, hi, positive=True)
    n = v_lo - v_hi
    if lo is not None and sign_at_rational(seq[0], lo) == 0:
        n += 1
    return n


def count_real_roots(p: Poly, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> int:
    """Number of distinct real roots of ``p`` in the closed interval ``[lo, hi]``."""
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    return count_in(sturm_sequence(p), _opt(lo), _opt(hi))


def _opt(x) -> Optional[Fraction]:
    return None if x is None else Fraction(x)


def cauchy_bound(p: Poly) -> Fraction:
    """All complex roots satisfy ``|z| < 1 + max |a_i / a_n|``."""
    if p.degree < 1:
        return Fraction(1)
    lead = abs(p.lead)
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])

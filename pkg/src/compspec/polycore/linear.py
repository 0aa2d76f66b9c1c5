"""Affine conjugation and the low-degree normal forms.

Two symbols are linearly equivalent when ``psi = l^{-1} ∘ phi ∘ l`` for an
affine ``l``; the composition operators are then similar, so every spectral
question can be asked of a canonical representative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .poly import Poly, compose


@dataclass(frozen=True)
class LinearMap:
    """``l(x) = a*x + b`` with ``a != 0``."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0:
            raise ValueError("linear map must have nonzero slope")

    @classmethod
    def identity(cls) -> LinearMap:
        return cls(Fraction(1), Fraction(0))

    def as_poly(self) -> Poly:
        return Poly((self.b, self.a))

    def inverse(self) -> LinearMap:
        return LinearMap(1 / self.a, -self.b / self.a)

    def after(self, inner: LinearMap) -> LinearMap:
        """``self ∘ inner``."""
        return LinearMap(self.a * inner.a, self.a * inner.b + self.b)

    def __call__(self, x):
        return self.a * x + self.b


def linear_conjugate(p: Poly, l: LinearMap) -> Poly:
    """``l^{-1} ∘ p ∘ l``."""
    inner = compose(p, l.as_poly())
    inv = l.inverse()
    return inner * inv.a + inv.b


# -- normal form tags ------------------------------------------------------


@dataclass(frozen=True)
class Affine:
    a: Fraction
    b: Fraction


@dataclass(frozen=True)
class Quadratic:
    c: Fraction


@dataclass(frozen=True)
class CubicPos:
    """Depressed cubic ``lead*x^3 + A*x + B`` with ``lead > 0``.

    ``lead`` is 1 whenever ``1/lead`` is a rational square; otherwise no
    rational rescaling reaches a unit leading coefficient. ``A`` and whether
    ``B`` vanishes do not depend on the remaining scaling freedom.
    """

    A: Fraction
    B: Fraction
    lead: Fraction = Fraction(1)


@dataclass(frozen=True)
class CubicNeg:
    A: Fraction
    B: Fraction
    lead: Fraction = Fraction(-1)


@dataclass(frozen=True)
class General:
    pass


Tag = Union[Affine, Quadratic, CubicPos, CubicNeg, General]


@dataclass(frozen=True)
class NormalForm:
    tag: Tag
    conjugator: LinearMap
    canonical: Poly = field(compare=False)


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def quadratic_invariant(p: Poly) -> Fraction:
    """``c = a0*a2 + a1/2 - a1^2/4``, the parameter of the conjugate ``x^2 + c``."""
    if p.degree != 2:
        raise ValueError("quadratic invariant needs a degree-2 polynomial")
    a0, a1, a2 = p[0], p[1], p[2]
    return a0 * a2 + a1 / 2 - a1 * a1 / 4


def depress_cubic(p: Poly) -> tuple[Poly, LinearMap]:
    """Shift away the quadratic term: returns ``(q, l)`` with ``q = l^{-1}∘p∘l``."""
    if p.degree != 3:
        raise ValueError("expected a cubic")
    h = -p[2] / (3 * p[3])
    l = LinearMap(1, h)
    return linear_conjugate(p, l), l


def normal_form(p: Poly) -> NormalForm:
    d = p.degree
    if d == 1:
        a, b = p[1], p[0]
        if a == 1:
            l = LinearMap.identity() if b == 0 else LinearMap(b, 0)
        else:
            l = LinearMap(1, b / (1 - a))
        q = linear_conjugate(p, l)
        return NormalForm(Affine(q[1], q[0]), l, q)
    if d == 2:
        a1, a2 = p[1], p[2]
        # x^2 + c = l ∘ p ∘ l^{-1} for l(x) = a2*x + a1/2
        l = LinearMap(a2, a1 / 2).inverse()
        q = linear_conjugate(p, l)
        return NormalForm(Quadratic(q[0]), l, q)
    if d == 3:
        q, shift = depress_cubic(p)
        s = _rational_sqrt(1 / abs(q[3]))
        if s is not None:
            scale = LinearMap(s, 0)
            l = shift.after(scale)
            q = linear_conjugate(p, l)
        else:
            l = shift
        tag_cls = CubicPos if q[3] > 0 else CubicNeg
        return NormalForm(tag_cls(q[1], q[0], q[3]), l, q)
    return NormalForm(General(), LinearMap.identity(), p)


def reflect(p: Poly) -> Poly:
    """``x -> -p(-x)``, the conjugate by ``l(x) = -x``."""
    return linear_conjugate(p, LinearMap(-1, 0))

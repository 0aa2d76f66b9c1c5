"""Fixed-point census of a polynomial symbol."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, cmp_to_key, lru_cache

from ..errors import IdentitySymbolError, UnsupportedCaseError
from ..polycore import Poly
from ..realroots import (
    AlgebraicPoint,
    Sign,
    algebraic_value,
    compare,
    isolate_real_roots,
    sign_at,
    squarefree_decompose,
)


class Stability(Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    NEUTRAL_PLUS_ONE = "neutral_plus_one"
    NEUTRAL_MINUS_ONE = "neutral_minus_one"


@dataclass(frozen=True)
class FixedPointRecord:
    point: AlgebraicPoint
    multiplicity: int
    deriv_vs_one: Sign
    deriv_vs_minus_one: Sign
    deriv_vs_zero: Sign
    stability: Stability
    symbol_derivative: Poly = field(compare=False, repr=False)

    @cached_property
    def slope(self) -> AlgebraicPoint:
        """``phi'(a)`` as an exact algebraic number."""
        return algebraic_value(self.symbol_derivative, self.point)

    def __post_init__(self):
        expected = _stability(self.deriv_vs_one, self.deriv_vs_minus_one)
        if expected is not self.stability:
            raise ValueError(f"stability {self.stability} inconsistent with derivative signs")
        if self.multiplicity >= 2 and self.deriv_vs_one is not Sign.ZERO:
            raise ValueError("a multiple fixed point must have derivative 1")


def _stability(vs_one: Sign, vs_minus_one: Sign) -> Stability:
    if vs_one is Sign.ZERO:
        return Stability.NEUTRAL_PLUS_ONE
    if vs_minus_one is Sign.ZERO:
        return Stability.NEUTRAL_MINUS_ONE
    if vs_one is Sign.NEGATIVE and vs_minus_one is Sign.POSITIVE:
        return Stability.ATTRACTING
    return Stability.REPELLING


def displacement(phi: Poly) -> Poly:
    """``phi(x) - x``; its roots are the fixed points."""
    return phi - Poly.x()


def fixed_points(phi: Poly) -> list[FixedPointRecord]:
    """All real fixed points with multiplicities and derivative data, ascending."""
    return list(_fixed_points(phi))


@lru_cache(maxsize=512)
def _fixed_points(phi: Poly) -> tuple[FixedPointRecord, ...]:
    if phi.degree < 1:
        raise UnsupportedCaseError("constant symbols are not composition operators on S(R)")
    g = displacement(phi)
    if g.is_zero():
        raise IdentitySymbolError("phi is the identity; every point is fixed")
    d1 = phi.derivative()
    located: list[tuple[AlgebraicPoint, int]] = []
    for factor, mult in squarefree_decompose(g):
        located.extend((pt, mult) for pt in isolate_real_roots(factor))
    located.sort(key=cmp_to_key(lambda u, v: compare(u[0], v[0])))
    out = []
    for pt, mult in located:
        vs_one = sign_at(d1 - 1, pt)
        vs_minus = sign_at(d1 + 1, pt)
        out.append(
            FixedPointRecord(
                point=pt,
                multiplicity=mult,
                deriv_vs_one=vs_one,
                deriv_vs_minus_one=vs_minus,
                deriv_vs_zero=sign_at(d1, pt),
                stability=_stability(vs_one, vs_minus),
                symbol_derivative=d1,
            )
        )
    return tuple(out)


def has_real_critical_point(phi: Poly) -> bool:
    d1 = phi.derivative()
    return d1.is_zero() or bool(isolate_real_roots(d1))

"""Predicates on symbols: mean ergodicity and the sufficient test for
``C \\ {0}`` lying in the spectrum."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import UnsupportedCaseError
from ..polycore import Poly, compose, reflect
from ..realroots import AlgebraicPoint, Sign, largest_real_root, sign_at
from .fixedpoints import FixedPointRecord, displacement, fixed_points, has_real_critical_point


def is_mean_ergodic(phi: Poly) -> bool:
    """Mean ergodic (equivalently power bounded) iff even degree and no fixed point."""
    if phi.degree <= 1:
        raise UnsupportedCaseError("mean ergodicity criterion needs degree >= 2")
    return phi.degree % 2 == 0 and not fixed_points(phi)


def expansive_taylor_point(phi: Poly) -> Optional[AlgebraicPoint]:
    """A fixed point ``a`` with ``phi'(a) > 1`` and every higher derivative
    ``>= 0`` there, or ``None``.

    Such a point is necessarily the largest fixed point (the Taylor expansion
    at ``a`` dominates ``a + phi'(a)(x - a) > x`` to the right), so only the
    largest one needs testing.
    """
    if phi.degree < 2:
        return None
    a = largest_real_root(displacement(phi))
    if a is None:
        return None
    if sign_at(phi.derivative() - 1, a) is not Sign.POSITIVE:
        return None
    for n in range(2, phi.degree + 1):
        if sign_at(phi.derivative(n), a) is Sign.NEGATIVE:
            return None
    return a


@dataclass(frozen=True)
class CriterionWitness:
    symbol: Poly  # the polynomial at which the test succeeded
    point: AlgebraicPoint
    reflected: bool
    via_square: bool


def simple_fp_witness(phi: Poly) -> Optional[CriterionWitness]:
    """Try ``phi`` and its reflection ``-phi(-x)``."""
    for reflected, candidate in ((False, phi), (True, reflect(phi))):
        a = expansive_taylor_point(candidate)
        if a is not None:
            return CriterionWitness(candidate, a, reflected, False)
    return None


def simple_fp_criterion(phi: Poly) -> bool:
    return simple_fp_witness(phi) is not None


def composition_witness(phi: Poly) -> Optional[CriterionWitness]:
    """For odd degree and negative leading coefficient, the same test on ``phi∘phi``."""
    if phi.degree < 3 or phi.degree % 2 == 0 or phi.lead > 0:
        return None
    square = compose(phi, phi)
    w = simple_fp_witness(square)
    if w is None:
        return None
    return CriterionWitness(w.symbol, w.point, w.reflected, True)


def composition_criterion(phi: Poly) -> bool:
    return composition_witness(phi) is not None


@dataclass(frozen=True)
class SymbolClass:
    degree: int
    leading_sign: int
    parity_of_degree: str  # "even" | "odd"
    fixed_points: tuple[FixedPointRecord, ...]
    has_real_fixed_point: bool
    derivative_has_real_zero: bool
    mean_ergodic: Optional[bool]  # undefined (None) in degree one
    simple_fp_criterion: Optional[bool]


def symbol_class(phi: Poly) -> SymbolClass:
    fps = tuple(fixed_points(phi))
    deg = phi.degree
    return SymbolClass(
        degree=deg,
        leading_sign=1 if phi.lead > 0 else -1,
        parity_of_degree="even" if deg % 2 == 0 else "odd",
        fixed_points=fps,
        has_real_fixed_point=bool(fps),
        derivative_has_real_zero=has_real_critical_point(phi),
        mean_ergodic=(deg % 2 == 0 and not fps) if deg >= 2 else None,
        simple_fp_criterion=simple_fp_criterion(phi) if deg >= 2 else None,
    )

"""Decision engine from a polynomial symbol to its spectrum on S(R)."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from ..classify import (
    composition_witness,
    fixed_points,
    has_real_critical_point,
    simple_fp_witness,
)
from ..errors import IdentitySymbolError, UnsupportedCaseError
from ..polycore import CubicNeg, CubicPos, Poly, iterate, normal_form, quadratic_invariant
from ..realroots import Sign, count_real_roots, sign_at
from .sets import (
    ClosedDiscMinusOrigin,
    ClosedUnitDisc,
    FinitePoints,
    FullPlane,
    Membership,
    OriginOnly,
    PlaneMinusOrigin,
    SetExpr,
    UnitCircle,
    covers,
    power_image,
    union,
)


class Provenance(Enum):
    """Which result certified (part of) a descriptor."""

    IDENTITY = "identity"
    DEGREE_ONE = "degree_one"
    EXAMPLE_1A = "example1a"
    EXAMPLE_1B = "example1b"
    WITHOUT_FIXED_POINTS = "withoutfixedpoints"
    GRAU2A = "grau2a"
    GRAU2B = "grau2b"
    GRAU2C = "grau2c"
    CUBIC_POSITIVE = "cubic_positive"
    ELEMENTARY_A = "elementary_a"
    ELEMENTARY_B = "elementary_b"
    ELEMENTARY_C = "elementary_c"
    NEGATIVE_ODD_A = "negative_odd_a"
    NEGATIVE_ODD_B = "negative_odd_b"
    NEGATIVE_ODD_C = "negative_odd_c"
    NEGATIVE_CUBIC_THREE_FP = "negative_cubic_three_fp"
    POLYNOMIAL_FIXED_POINT = "polynomial_fixed_point"
    SIMPLE_FIXED_POINT = "simplefixedpoint"
    COMPOSITION = "composition"
    SPECTRAL_MAPPING = "spectral_mapping"
    INCREASING = "increasing"
    ANILLO = "anillo"
    ANILLO_COROLLARY = "anillo_corollary"
    ANILLO_2 = "anillo_2"
    CIRCLE_DECREASING = "circle_decreasing"
    INVOLUTION = "involution"


class Status(Enum):
    EXACT = "exact"
    PARTIAL = "partial"


@dataclass(frozen=True)
class SpectrumDescriptor:
    """Either the spectrum itself, or certified bounds ``lower ⊆ σ ⊆ upper``.

    ``upper is None`` means nothing beyond the trivial bound is known.
    """

    status: Status
    set: Optional[SetExpr] = None
    lower: Optional[SetExpr] = None
    upper: Optional[SetExpr] = None
    provenance: tuple[Provenance, ...] = field(default=())

    @classmethod
    def exact(cls, s: SetExpr, *tags: Provenance) -> SpectrumDescriptor:
        return cls(Status.EXACT, set=s, provenance=tuple(tags))

    @classmethod
    def partial(cls, lower: SetExpr, upper: Optional[SetExpr], *tags: Provenance) -> SpectrumDescriptor:
        if upper is not None and not covers(upper, lower):
            raise ValueError("lower bound not contained in upper bound")
        return cls(Status.PARTIAL, lower=lower, upper=upper, provenance=tuple(tags))

    @property
    def is_exact(self) -> bool:
        return self.status is Status.EXACT

    def known_subset(self) -> SetExpr:
        return self.set if self.is_exact else self.lower


def contains(d: SpectrumDescriptor, re, im=0) -> Membership:
    """Membership of ``re + i*im`` (rational parts) in the described set."""
    re, im = Fraction(re), Fraction(im)
    if d.is_exact:
        return Membership.IN if d.set.contains(re, im) else Membership.OUT
    if d.lower.contains(re, im):
        return Membership.IN
    if d.upper is not None and not d.upper.contains(re, im):
        return Membership.OUT
    return Membership.UNKNOWN


def zero_in_spectrum(phi: Poly) -> bool:
    """0 is a spectral value exactly when ``phi'`` has a real zero."""
    return has_real_critical_point(phi)


def _degree_one(phi: Poly) -> SpectrumDescriptor:
    a = phi[1]
    if a == 1:
        return SpectrumDescriptor.exact(UnitCircle(), Provenance.DEGREE_ONE, Provenance.EXAMPLE_1A)
    if a == -1:
        return SpectrumDescriptor.exact(FinitePoints([-1, 1]), Provenance.DEGREE_ONE)
    return SpectrumDescriptor.exact(PlaneMinusOrigin(), Provenance.DEGREE_ONE, Provenance.EXAMPLE_1B)


def _with_origin(s: SetExpr, zero: bool) -> SetExpr:
    return union(s, OriginOnly()) if zero else s


def _punctured_plane_bounds(zero: bool, *tags: Provenance) -> SpectrumDescriptor:
    """``C \\ {0} ⊆ σ``; membership of 0 is decided separately, so both bounds agree."""
    s = _with_origin(PlaneMinusOrigin(), zero)
    if zero:
        tags = tags + (Provenance.ELEMENTARY_C,)
    return SpectrumDescriptor.partial(s, s, *tags)


def _general_bounds(phi: Poly) -> SpectrumDescriptor:
    zero = zero_in_spectrum(phi)
    base = (Provenance.POLYNOMIAL_FIXED_POINT,)
    w = simple_fp_witness(phi)
    if w is not None:
        return _punctured_plane_bounds(zero, *base, Provenance.SIMPLE_FIXED_POINT)
    w = composition_witness(phi)
    if w is not None:
        return _punctured_plane_bounds(zero, *base, Provenance.COMPOSITION)
    tags = list(base)
    outside = []
    for rec in fixed_points(phi):
        if rec.deriv_vs_one is Sign.POSITIVE or rec.deriv_vs_minus_one is Sign.NEGATIVE:
            outside.append(rec.slope)
    parts = [ClosedDiscMinusOrigin()]
    if outside:
        parts.append(FinitePoints(outside))
        tags.append(Provenance.ELEMENTARY_B)
    if zero:
        parts.append(OriginOnly())
        tags.append(Provenance.ELEMENTARY_C)
    upper = None if zero else PlaneMinusOrigin()
    return SpectrumDescriptor.partial(union(*parts), upper, *tags)


def _cubic_negative(phi: Poly, q: Poly, tag: CubicNeg) -> SpectrumDescriptor:
    if tag.B == 0:
        A = tag.A
        if A == -1:
            return SpectrumDescriptor.exact(ClosedDiscMinusOrigin(), Provenance.NEGATIVE_ODD_A)
        if A < 0:
            return SpectrumDescriptor.exact(PlaneMinusOrigin(), Provenance.NEGATIVE_ODD_B)
        return SpectrumDescriptor.exact(FullPlane(), Provenance.NEGATIVE_ODD_C)
    # the negation -q of the depressed form having three distinct real fixed
    # points means q(x) + x has three distinct real roots (scale invariant)
    if count_real_roots(q + Poly.x()) == 3:
        return _punctured_plane_bounds(
            zero_in_spectrum(phi), Provenance.POLYNOMIAL_FIXED_POINT, Provenance.NEGATIVE_CUBIC_THREE_FP
        )
    return _general_bounds(phi)


def spectrum_of(phi: Poly) -> SpectrumDescriptor:
    """Spectrum of ``f -> f∘phi`` on the Schwartz space.

    Exact where the classification is complete (degree one, even degree
    without fixed points, quadratics, cubics with positive leading
    coefficient, odd cubics ``-x^3 + Ax``); certified bounds otherwise.
    """
    if phi.degree < 1:
        raise UnsupportedCaseError("constant symbols are not composition operators on S(R)")
    if phi == Poly.x():
        return SpectrumDescriptor.exact(FinitePoints([1]), Provenance.IDENTITY)
    if phi.degree == 1:
        return _degree_one(phi)
    fps = fixed_points(phi)
    if phi.degree % 2 == 0 and not fps:
        tags = [Provenance.WITHOUT_FIXED_POINTS]
        if phi.degree == 2:
            tags.append(Provenance.GRAU2A)
        return SpectrumDescriptor.exact(OriginOnly(), *tags)
    if phi.degree == 2:
        c = quadratic_invariant(phi)
        if c == Fraction(1, 4):
            return SpectrumDescriptor.exact(ClosedUnitDisc(), Provenance.GRAU2B)
        return SpectrumDescriptor.exact(FullPlane(), Provenance.GRAU2C)
    if phi.degree == 3:
        nf = normal_form(phi)
        if isinstance(nf.tag, CubicPos):
            if any(r.multiplicity == 3 for r in fps):
                return SpectrumDescriptor.exact(ClosedDiscMinusOrigin(), Provenance.CUBIC_POSITIVE)
            if zero_in_spectrum(phi):
                return SpectrumDescriptor.exact(FullPlane(), Provenance.CUBIC_POSITIVE, Provenance.ELEMENTARY_C)
            return SpectrumDescriptor.exact(PlaneMinusOrigin(), Provenance.CUBIC_POSITIVE)
        return _cubic_negative(phi, nf.canonical, nf.tag)
    return _general_bounds(phi)


def spectral_map_iterate(phi: Poly, n: int) -> SpectrumDescriptor:
    """Spectrum of the symbol's n-th iterate from the n-th powers of ``σ``."""
    if n < 1:
        raise ValueError("iterate count must be positive")
    d = spectrum_of(phi)
    tags = d.provenance + (Provenance.SPECTRAL_MAPPING,)
    if d.is_exact:
        return SpectrumDescriptor.exact(power_image(d.set, n), *tags)
    return SpectrumDescriptor.partial(power_image(d.lower, n), None, *tags)


def spectrum_of_iterate_directly(phi: Poly, n: int) -> SpectrumDescriptor:
    return spectrum_of(iterate(phi, n))

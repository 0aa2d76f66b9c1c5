"""Spectral containments for strictly monotone (not necessarily polynomial)
symbols, driven by declared metadata."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import MetadataError
from .engine import Provenance
from .sets import Annulus, ClosedUnitDisc, FinitePoints, SetExpr, UnitCircle, union


@dataclass(frozen=True)
class MonotoneMeta:
    """``fixed_points`` lists ``(location, derivative at the location)``."""

    increasing: bool
    identity: bool = False
    involution: bool = False
    fixed_points: tuple[tuple[Fraction, Fraction], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(
            self,
            "fixed_points",
            tuple((Fraction(x), Fraction(d)) for x, d in self.fixed_points),
        )


def validate(meta: MonotoneMeta) -> None:
    locs = [x for x, _ in meta.fixed_points]
    if len(set(locs)) != len(locs):
        raise MetadataError("repeated fixed point location")
    if meta.identity:
        if not meta.increasing:
            raise MetadataError("the identity is increasing")
        return
    if meta.increasing:
        if meta.involution:
            raise MetadataError("an increasing involution is the identity")
        if any(d < 0 for _, d in meta.fixed_points):
            raise MetadataError("an increasing symbol has nonnegative derivative")
    else:
        if len(meta.fixed_points) != 1:
            raise MetadataError("a strictly decreasing symbol has exactly one fixed point")
        if meta.fixed_points[0][1] > 0:
            raise MetadataError("a decreasing symbol has nonpositive derivative")
        if meta.involution and meta.fixed_points[0][1] != -1:
            raise MetadataError("a differentiable involution has derivative -1 at its fixed point")


def monotone_containments_tagged(meta: MonotoneMeta) -> tuple[SetExpr, tuple[Provenance, ...]]:
    validate(meta)
    if meta.identity:
        return FinitePoints([1]), (Provenance.IDENTITY,)
    parts: list[SetExpr] = []
    tags: list[Provenance] = []
    if meta.increasing:
        parts.append(UnitCircle())
        tags.append(Provenance.INCREASING)
        for _, d in meta.fixed_points:
            if d == 0:
                parts.append(ClosedUnitDisc())
                tags.append(Provenance.ANILLO_COROLLARY)
            elif d < 1:
                parts.append(Annulus(d, 1, False, False))
                tags.append(Provenance.ANILLO)
            elif d > 1:
                parts.append(Annulus(1, d, True, False))
                tags.append(Provenance.ANILLO_2)
    elif meta.involution:
        parts.append(FinitePoints([-1, 1]))
        tags.append(Provenance.INVOLUTION)
    else:
        parts.append(UnitCircle())
        tags.append(Provenance.CIRCLE_DECREASING)
    return union(*parts), tuple(dict.fromkeys(tags))


def monotone_containments(meta: MonotoneMeta) -> SetExpr:
    """Union of the subsets of the spectrum certified by monotonicity."""
    return monotone_containments_tagged(meta)[0]

"""Exact descriptions of the subsets of the complex plane that occur as
(bounds on) spectra, with rational-only membership tests."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Union

from ..polycore import Poly
from ..realroots import AlgebraicPoint, Sign, algebraic_value, sign_at

RealExact = Union[Fraction, AlgebraicPoint]


class Membership(Enum):
    IN = "in"
    OUT = "out"
    UNKNOWN = "unknown"


def _as_real(v) -> RealExact:
    if isinstance(v, AlgebraicPoint):
        return v.as_fraction() if v.is_rational() else v
    return Fraction(v)


def _sign_minus(v: RealExact, q: Fraction) -> Sign:
    """Sign of ``v - q``."""
    if isinstance(v, Fraction):
        return Sign.of(v - q)
    return sign_at(Poly((-q, 1)), v)


def _sign_square_minus(v: RealExact, m: Fraction) -> Sign:
    """Sign of ``v^2 - m``."""
    if isinstance(v, Fraction):
        return Sign.of(v * v - m)
    return sign_at(Poly((-m, 0, 1)), v)


def _same_real(u: RealExact, v: RealExact) -> bool:
    if isinstance(u, Fraction) and isinstance(v, Fraction):
        return u == v
    if isinstance(u, Fraction):
        u, v = v, u
    return u == v


class SetExpr:
    kind: str = ""

    def contains(self, re: Fraction, im: Fraction) -> bool:
        raise NotImplementedError

    def members(self) -> tuple[SetExpr, ...]:
        return (self,)


def _modulus2(re: Fraction, im: Fraction) -> Fraction:
    return re * re + im * im


@dataclass(frozen=True, eq=True)
class OriginOnly(SetExpr):
    kind = "origin"

    def contains(self, re, im):
        return re == 0 and im == 0


@dataclass(frozen=True, eq=True)
class UnitCircle(SetExpr):
    kind = "unit_circle"

    def contains(self, re, im):
        return _modulus2(re, im) == 1


@dataclass(frozen=True, eq=True)
class ClosedUnitDisc(SetExpr):
    kind = "closed_unit_disc"

    def contains(self, re, im):
        return _modulus2(re, im) <= 1


@dataclass(frozen=True, eq=True)
class ClosedDiscMinusOrigin(SetExpr):
    kind = "closed_disc_minus_origin"

    def contains(self, re, im):
        return 0 < _modulus2(re, im) <= 1


@dataclass(frozen=True, eq=True)
class FullPlane(SetExpr):
    kind = "full_plane"

    def contains(self, re, im):
        return True


@dataclass(frozen=True, eq=True)
class PlaneMinusOrigin(SetExpr):
    kind = "plane_minus_origin"

    def contains(self, re, im):
        return _modulus2(re, im) > 0


class FinitePoints(SetExpr):
    """Finitely many real points, compared as a set of numbers."""

    kind = "finite_points"
    __slots__ = ("points",)

    def __init__(self, points: Iterable):
        uniq: list[RealExact] = []
        for p in points:
            p = _as_real(p)
            if not any(_same_real(p, q) for q in uniq):
                uniq.append(p)
        uniq.sort(key=float)
        self.points = tuple(uniq)

    def contains(self, re, im):
        if im != 0:
            return False
        return any(_sign_minus(p, re) is Sign.ZERO for p in self.points)

    def __eq__(self, other):
        if not isinstance(other, FinitePoints):
            return NotImplemented
        return len(self.points) == len(other.points) and all(
            any(_same_real(p, q) for q in other.points) for p in self.points
        )

    __hash__ = None

    def __repr__(self):
        return f"FinitePoints({list(self.points)!r})"


@dataclass(frozen=True, eq=True)
class Annulus(SetExpr):
    """``{r_in <(=) |z| <(=) r_out}``; ``r_in == r_out`` with both ends
    included is a circle."""

    r_in: Fraction
    r_out: Fraction
    include_in: bool
    include_out: bool
    kind = "annulus"

    def __post_init__(self):
        object.__setattr__(self, "r_in", Fraction(self.r_in))
        object.__setattr__(self, "r_out", Fraction(self.r_out))
        if self.r_in < 0 or self.r_in > self.r_out:
            raise ValueError("annulus radii must satisfy 0 <= r_in <= r_out")
        if self.r_in == self.r_out and not (self.include_in and self.include_out):
            raise ValueError("degenerate annulus must include its circle")

    def contains(self, re, im):
        m = _modulus2(re, im)
        lo, hi = self.r_in * self.r_in, self.r_out * self.r_out
        above = m > lo or (self.include_in and m == lo)
        below = m < hi or (self.include_out and m == hi)
        return above and below

    def contains_origin(self) -> bool:
        return self.r_in == 0 and self.include_in


class Union(SetExpr):
    kind = "union"
    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[SetExpr]):
        self.parts = tuple(parts)

    def members(self):
        return self.parts

    def contains(self, re, im):
        return any(p.contains(re, im) for p in self.parts)

    def __eq__(self, other):
        if not isinstance(other, Union):
            return NotImplemented
        return len(self.parts) == len(other.parts) and all(
            any(p == q for q in other.parts) for p in self.parts
        )

    __hash__ = None

    def __repr__(self):
        return f"Union({list(self.parts)!r})"


def _point_in(part: SetExpr, p: RealExact) -> bool:
    """Membership of a real exact point (possibly irrational) in ``part``."""
    if isinstance(p, Fraction):
        return part.contains(p, Fraction(0))
    if isinstance(part, FullPlane):
        return True
    if isinstance(part, OriginOnly):
        return False  # irrational points are nonzero
    if isinstance(part, PlaneMinusOrigin):
        return True
    if isinstance(part, UnitCircle):
        return _sign_square_minus(p, Fraction(1)) is Sign.ZERO
    if isinstance(part, (ClosedUnitDisc, ClosedDiscMinusOrigin)):
        return _sign_square_minus(p, Fraction(1)) <= 0
    if isinstance(part, FinitePoints):
        return any(_same_real(p, q) for q in part.points)
    if isinstance(part, Annulus):
        s_in = _sign_square_minus(p, part.r_in**2)
        s_out = _sign_square_minus(p, part.r_out**2)
        return (s_in > 0 or (part.include_in and s_in == 0)) and (
            s_out < 0 or (part.include_out and s_out == 0)
        )
    if isinstance(part, Union):
        return any(_point_in(q, p) for q in part.parts)
    raise TypeError(part)


def _has_origin(s: SetExpr) -> bool:
    return s.contains(Fraction(0), Fraction(0))


def covers(big: SetExpr, small: SetExpr) -> bool:
    """Conservative inclusion test: True only when ``small ⊆ big`` is certain."""
    if isinstance(small, Union):
        return all(covers(big, p) for p in small.parts)
    if isinstance(big, Union):
        return any(covers(p, small) for p in big.parts)
    if big == small or isinstance(big, FullPlane):
        return True
    if isinstance(small, FinitePoints):
        return all(_point_in(big, p) for p in small.points)
    if isinstance(small, OriginOnly):
        return _has_origin(big)
    one = Fraction(1)
    if isinstance(big, PlaneMinusOrigin):
        return not _has_origin(small)
    if isinstance(big, ClosedUnitDisc):
        if isinstance(small, (UnitCircle, ClosedDiscMinusOrigin)):
            return True
        return isinstance(small, Annulus) and small.r_out <= one
    if isinstance(big, ClosedDiscMinusOrigin):
        if isinstance(small, UnitCircle):
            return True
        return isinstance(small, Annulus) and small.r_out <= one and not small.contains_origin()
    if isinstance(big, UnitCircle):
        return isinstance(small, Annulus) and small.r_in == small.r_out == one
    if isinstance(big, Annulus):
        if isinstance(small, UnitCircle):
            return big.contains(one, Fraction(0))
        if isinstance(small, Annulus):
            lo_ok = small.r_in > big.r_in or (small.r_in == big.r_in and (big.include_in or not small.include_in))
            hi_ok = small.r_out < big.r_out or (
                small.r_out == big.r_out and (big.include_out or not small.include_out)
            )
            return lo_ok and hi_ok
    return False


_ORDER = {
    "full_plane": 0,
    "plane_minus_origin": 1,
    "closed_unit_disc": 2,
    "closed_disc_minus_origin": 3,
    "annulus": 4,
    "unit_circle": 5,
    "origin": 6,
    "finite_points": 7,
}


def union(*sets: SetExpr) -> SetExpr:
    """Normalised union: drops covered parts and merges the ``... ∪ {0}`` pairs."""
    parts: list[SetExpr] = []
    for s in sets:
        parts.extend(s.members())
    points: list[RealExact] = []
    shapes: list[SetExpr] = []
    for p in parts:
        if isinstance(p, FinitePoints):
            points.extend(p.points)
        elif not any(p == q for q in shapes):
            shapes.append(p)
    # zero as a point is the same as the origin shape
    if any(isinstance(p, Fraction) and p == 0 for p in points):
        points = [p for p in points if not (isinstance(p, Fraction) and p == 0)]
        if OriginOnly() not in shapes:
            shapes.append(OriginOnly())
    while True:
        merged = False
        if OriginOnly() in shapes:
            for punctured, filled in (
                (PlaneMinusOrigin(), FullPlane()),
                (ClosedDiscMinusOrigin(), ClosedUnitDisc()),
            ):
                if punctured in shapes:
                    shapes.remove(punctured)
                    shapes.remove(OriginOnly())
                    shapes.append(filled)
                    merged = True
                    break
        shapes.sort(key=lambda t: _ORDER[t.kind])
        kept: list[SetExpr] = []
        for t in shapes:
            if not any(covers(o, t) for o in kept):
                kept = [o for o in kept if not covers(t, o)] + [t]
        shapes = kept
        if _merge_rings(shapes):
            merged = True
        if not merged:
            break
    rest = [p for p in points if not any(_point_in(s, p) for s in shapes)]
    if rest:
        shapes.append(FinitePoints(rest))
    shapes.sort(key=lambda s: _ORDER[s.kind])
    if not shapes:
        return FinitePoints([])
    if len(shapes) == 1:
        return shapes[0]
    return Union(shapes)


def _ring(s: SetExpr):
    if isinstance(s, UnitCircle):
        return Annulus(1, 1, True, True)
    if isinstance(s, Annulus):
        return s
    return None


def _join_rings(a: Annulus, b: Annulus):
    """Union of two annuli when it is again an annulus."""
    if a.r_in > b.r_in or (a.r_in == b.r_in and b.include_in and not a.include_in):
        a, b = b, a
    # a starts first; the union is connected iff b starts inside a's closure
    if b.r_in > a.r_out or (b.r_in == a.r_out and not (a.include_out or b.include_in)):
        return None
    if b.r_out > a.r_out:
        r_out, inc_out = b.r_out, b.include_out
    elif b.r_out < a.r_out:
        r_out, inc_out = a.r_out, a.include_out
    else:
        r_out, inc_out = a.r_out, a.include_out or b.include_out
    inc_in = a.include_in or (a.r_in == b.r_in and b.include_in)
    if a.r_in == r_out == 1 and inc_in and inc_out:
        return UnitCircle()
    return Annulus(a.r_in, r_out, inc_in, inc_out)


def _merge_rings(shapes: list[SetExpr]) -> bool:
    for i in range(len(shapes)):
        for j in range(i + 1, len(shapes)):
            ri, rj = _ring(shapes[i]), _ring(shapes[j])
            if ri is None or rj is None:
                continue
            joined = _join_rings(ri, rj)
            if joined is not None:
                shapes[j] = joined
                del shapes[i]
                return True
    return False


def contains_point(s: SetExpr, re, im=0) -> bool:
    return s.contains(Fraction(re), Fraction(im))


def power_image(s: SetExpr, n: int) -> SetExpr:
    """``{z^n : z in s}``."""
    if n < 1:
        raise ValueError("power must be positive")
    if isinstance(s, Union):
        return union(*(power_image(p, n) for p in s.parts))
    if isinstance(s, FinitePoints):
        out = []
        for p in s.points:
            if isinstance(p, Fraction):
                out.append(p**n)
            else:
                out.append(algebraic_value(Poly.monomial(n), p))
        return FinitePoints(out)
    if isinstance(s, Annulus):
        return Annulus(s.r_in**n, s.r_out**n, s.include_in, s.include_out)
    return s

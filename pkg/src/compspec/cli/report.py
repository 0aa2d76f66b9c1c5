"""JSON reports: exact, lossless and with a stable key order.

Rationals are written as ``"num/den"`` strings. An algebraic point is its
defining polynomial (ascending rational coefficients) plus an isolating
interval, which is degenerate for rational points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from ..classify import FixedPointRecord, Stability, SymbolClass, symbol_class
from ..errors import IdentitySymbolError
from ..polycore import Poly, format_poly
from ..realroots import AlgebraicPoint, IntervalQ, Sign
from ..spectrum import (
    Annulus,
    ClosedDiscMinusOrigin,
    ClosedUnitDisc,
    FinitePoints,
    FullPlane,
    OriginOnly,
    PlaneMinusOrigin,
    Provenance,
    SetExpr,
    SpectrumDescriptor,
    Status,
    Union,
    UnitCircle,
    spectrum_of,
)

_PLAIN = {
    cls.kind: cls
    for cls in (OriginOnly, UnitCircle, ClosedUnitDisc, ClosedDiscMinusOrigin, FullPlane, PlaneMinusOrigin)
}


def rational_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def poly_to_json(p: Poly) -> list[str]:
    return [rational_str(c) for c in p.coeffs]


def poly_from_json(data: list[str]) -> Poly:
    return Poly([parse_rational(c) for c in data])


def point_to_json(p: AlgebraicPoint) -> dict:
    iso = p.isolator
    return {
        "defining_polynomial": poly_to_json(p.defining),
        "interval": [rational_str(iso.lo), rational_str(iso.hi)],
    }


def point_from_json(data: dict) -> AlgebraicPoint:
    lo, hi = (parse_rational(v) for v in data["interval"])
    return AlgebraicPoint(poly_from_json(data["defining_polynomial"]), IntervalQ(lo, hi))


def set_to_json(s: SetExpr):
    """Plain shapes are their kind string; parametrised ones are objects."""
    if type(s) in _PLAIN.values():
        return s.kind
    if isinstance(s, Annulus):
        return {
            "kind": s.kind,
            "r_in": rational_str(s.r_in),
            "r_out": rational_str(s.r_out),
            "include_in": s.include_in,
            "include_out": s.include_out,
        }
    if isinstance(s, FinitePoints):
        pts = [p if isinstance(p, AlgebraicPoint) else AlgebraicPoint.rational(p) for p in s.points]
        return {"kind": s.kind, "points": [point_to_json(p) for p in pts]}
    if isinstance(s, Union):
        return {"kind": s.kind, "parts": [set_to_json(p) for p in s.parts]}
    raise TypeError(f"cannot serialise {s!r}")


def set_from_json(data) -> SetExpr:
    if isinstance(data, str):
        if data not in _PLAIN:
            raise ValueError(f"unknown set kind {data!r}")
        return _PLAIN[data]()
    kind = data["kind"]
    if kind == "annulus":
        return Annulus(
            parse_rational(data["r_in"]), parse_rational(data["r_out"]), data["include_in"], data["include_out"]
        )
    if kind == "finite_points":
        return FinitePoints(point_from_json(p) for p in data["points"])
    if kind == "union":
        return Union(set_from_json(p) for p in data["parts"])
    raise ValueError(f"unknown set kind {kind!r}")


def descriptor_to_json(d: SpectrumDescriptor) -> dict:
    out: dict[str, Any] = {"status": d.status.value}
    if d.is_exact:
        out["set"] = set_to_json(d.set)
    else:
        out["lower"] = set_to_json(d.lower)
        out["upper"] = None if d.upper is None else set_to_json(d.upper)
    out["provenance"] = [t.value for t in d.provenance]
    return out


def descriptor_from_json(data: dict) -> SpectrumDescriptor:
    tags = tuple(Provenance(t) for t in data["provenance"])
    status = Status(data["status"])
    if status is Status.EXACT:
        return SpectrumDescriptor(status, set=set_from_json(data["set"]), provenance=tags)
    upper = data["upper"]
    return SpectrumDescriptor(
        status,
        lower=set_from_json(data["lower"]),
        upper=None if upper is None else set_from_json(upper),
        provenance=tags,
    )


def fixed_point_to_json(rec: FixedPointRecord) -> dict:
    pt = point_to_json(rec.point)
    return {
        "point_interval": pt["interval"],
        "defining_polynomial": pt["defining_polynomial"],
        "multiplicity": rec.multiplicity,
        "derivative_sign": {
            "vs_minus_one": int(rec.deriv_vs_minus_one),
            "vs_zero": int(rec.deriv_vs_zero),
            "vs_one": int(rec.deriv_vs_one),
        },
        "stability": rec.stability.value,
    }


def fixed_point_from_json(data: dict, phi: Poly) -> FixedPointRecord:
    signs = data["derivative_sign"]
    point = point_from_json({"defining_polynomial": data["defining_polynomial"], "interval": data["point_interval"]})
    return FixedPointRecord(
        point=point,
        multiplicity=data["multiplicity"],
        deriv_vs_one=Sign(signs["vs_one"]),
        deriv_vs_minus_one=Sign(signs["vs_minus_one"]),
        deriv_vs_zero=Sign(signs["vs_zero"]),
        stability=Stability(data["stability"]),
        symbol_derivative=phi.derivative(),
    )


def _class_to_json(c: SymbolClass) -> dict:
    return {
        "leading_sign": c.leading_sign,
        "parity_of_degree": c.parity_of_degree,
        "has_real_fixed_point": c.has_real_fixed_point,
        "derivative_has_real_zero": c.derivative_has_real_zero,
        "mean_ergodic": c.mean_ergodic,
        "simple_fp_criterion": c.simple_fp_criterion,
    }


@dataclass(frozen=True)
class Report:
    """Classification of one symbol plus optional diagnostic sections.

    ``symbol_class`` is ``None`` for the identity, where every point is fixed.
    """

    symbol: Poly
    text: str
    symbol_class: Optional[SymbolClass]
    descriptor: SpectrumDescriptor
    sections: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        c = self.symbol_class
        out: dict[str, Any] = {
            "symbol": self.text,
            "coefficients": poly_to_json(self.symbol),
            "degree": self.symbol.degree,
            "symbol_class": None if c is None else _class_to_json(c),
            "fixed_points": None if c is None else [fixed_point_to_json(r) for r in c.fixed_points],
            "spectrum": descriptor_to_json(self.descriptor),
        }
        for key in sorted(self.sections):
            out[key] = self.sections[key]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> Report:
        data = json.loads(text)
        phi = poly_from_json(data["coefficients"])
        cdata = data["symbol_class"]
        if cdata is None:
            sc = None
        else:
            fps = tuple(fixed_point_from_json(r, phi) for r in data["fixed_points"])
            sc = SymbolClass(
                degree=data["degree"],
                leading_sign=cdata["leading_sign"],
                parity_of_degree=cdata["parity_of_degree"],
                fixed_points=fps,
                has_real_fixed_point=cdata["has_real_fixed_point"],
                derivative_has_real_zero=cdata["derivative_has_real_zero"],
                mean_ergodic=cdata["mean_ergodic"],
                simple_fp_criterion=cdata["simple_fp_criterion"],
            )
        core = {"symbol", "coefficients", "degree", "symbol_class", "fixed_points", "spectrum"}
        sections = {k: v for k, v in data.items() if k not in core}
        return cls(phi, data["symbol"], sc, descriptor_from_json(data["spectrum"]), sections)


def build_report(phi: Poly) -> Report:
    try:
        sc = symbol_class(phi)
    except IdentitySymbolError:
        sc = None
    return Report(phi, format_poly(phi), sc, spectrum_of(phi))


_NAMES = {
    "origin": "{0}",
    "unit_circle": "∂D",
    "closed_unit_disc": "D̄",
    "closed_disc_minus_origin": "D̄∖{0}",
    "full_plane": "ℂ",
    "plane_minus_origin": "ℂ∖{0}",
}


def _point_text(p) -> str:
    if isinstance(p, AlgebraicPoint):
        return f"{float(p):.12g}"
    return str(p)


def describe_set(s: Optional[SetExpr]) -> str:
    if s is None:
        return "unknown"
    if s.kind in _NAMES:
        return _NAMES[s.kind]
    if isinstance(s, FinitePoints):
        return "{" + ", ".join(_point_text(p) for p in s.points) + "}"
    if isinstance(s, Annulus):
        lo = "<=" if s.include_in else "<"
        hi = "<=" if s.include_out else "<"
        return f"{{{s.r_in} {lo} |z| {hi} {s.r_out}}}"
    if isinstance(s, Union):
        return " ∪ ".join(describe_set(p) for p in s.parts)
    return repr(s)


def describe_descriptor(d: SpectrumDescriptor) -> str:
    if d.is_exact:
        return f"exact {describe_set(d.set)}"
    return f"partial: {describe_set(d.lower)} ⊆ σ ⊆ {describe_set(d.upper)}"

"""Boundary samples of descriptor sets, for external plotting."""

from __future__ import annotations

import csv
import math

from ..spectrum import (
    Annulus,
    ClosedDiscMinusOrigin,
    ClosedUnitDisc,
    FinitePoints,
    OriginOnly,
    PlaneMinusOrigin,
    SetExpr,
    SpectrumDescriptor,
    Union,
    UnitCircle,
)

SAMPLES_PER_CIRCLE = 256


def _circle(r: float, feature: str) -> list[tuple[str, float, float]]:
    step = 2 * math.pi / SAMPLES_PER_CIRCLE
    return [(feature, r * math.cos(k * step), r * math.sin(k * step)) for k in range(SAMPLES_PER_CIRCLE)]


def boundary_samples(s: SetExpr) -> list[tuple[str, float, float]]:
    """``(feature, re, im)`` rows: circles, isolated points and punctures.

    The full plane has no boundary and yields no rows.
    """
    if isinstance(s, (UnitCircle, ClosedUnitDisc)):
        return _circle(1.0, "circle")
    if isinstance(s, ClosedDiscMinusOrigin):
        return _circle(1.0, "circle") + [("puncture", 0.0, 0.0)]
    if isinstance(s, PlaneMinusOrigin):
        return [("puncture", 0.0, 0.0)]
    if isinstance(s, OriginOnly):
        return [("point", 0.0, 0.0)]
    if isinstance(s, FinitePoints):
        return [("point", float(p), 0.0) for p in s.points]
    if isinstance(s, Annulus):
        rows = _circle(float(s.r_out), "circle")
        if s.r_in > 0 and s.r_in != s.r_out:
            rows = _circle(float(s.r_in), "circle") + rows
        elif s.r_in == 0 and not s.include_in:
            rows.append(("puncture", 0.0, 0.0))
        return rows
    if isinstance(s, Union):
        return [row for part in s.parts for row in boundary_samples(part)]
    return []


def write_plot_data(path, d: SpectrumDescriptor) -> None:
    """CSV ``bound, feature, re, im`` (17 significant digits); ``bound`` is
    ``set`` for an exact descriptor and ``lower``/``upper`` otherwise."""
    parts = [("set", d.set)] if d.is_exact else [("lower", d.lower), ("upper", d.upper)]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["bound", "feature", "re", "im"])
        for name, s in parts:
            if s is None:
                continue
            for feature, re, im in boundary_samples(s):
                w.writerow([name, feature, "%.17g" % re, "%.17g" % im])

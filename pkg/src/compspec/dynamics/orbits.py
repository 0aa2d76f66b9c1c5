"""Floating orbits, escape radii and Cesàro-mean diagnostics."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from ..polycore import Poly
from ..realroots import cauchy_bound, nonnegative_on
from .growth import GridSpec, SampleGrid, bounded_trend, default_grid


def _step(phi: Poly, x: float) -> float:
    if math.isinf(x):
        # the leading term decides the sign at infinity
        s = math.copysign(1.0, x) ** phi.degree * (1 if phi.lead > 0 else -1)
        return math.copysign(math.inf, s)
    with np.errstate(over="ignore", invalid="ignore"):
        y = float(phi(np.float64(x)))
    if math.isnan(y):
        return math.inf
    return y


@dataclass(frozen=True)
class OrbitReport:
    """``values[k] = phi_k(x0)`` for ``k = 0..m`` (overflow becomes ``±inf``)."""

    x0: float
    values: tuple[float, ...]
    escape_index: Optional[int]
    threshold: float

    @property
    def escaped(self) -> bool:
        return self.escape_index is not None


def orbit(phi: Poly, x0: float, m: int, M: float) -> OrbitReport:
    if m < 1:
        raise ValueError("orbit length must be positive")
    vals = [float(x0)]
    for _ in range(m):
        vals.append(_step(phi, vals[-1]))
    esc = next((k for k, v in enumerate(vals) if abs(v) > M), None)
    return OrbitReport(float(x0), tuple(vals), esc, float(M))


def escape_radius(phi: Poly) -> Fraction:
    """An integer ``M >= 1`` with ``|phi(x)| >= 2|x|`` whenever ``|x| >= M``.

    Past ``M`` every orbit at least doubles in modulus at each step, so it is
    strictly increasing in modulus and escapes to infinity. Verified exactly.
    """
    if phi.degree < 2:
        raise ValueError("escape radius needs degree at least 2")
    gap = phi * phi - Poly.monomial(2, 4)
    M = max(1, math.ceil(cauchy_bound(gap)))
    while M > 1 and nonnegative_on(gap, M - 1, None) and nonnegative_on(gap, None, -(M - 1)):
        M -= 1
    return Fraction(M)


@dataclass(frozen=True)
class CesaroRow:
    n: int
    weighted_sup: tuple[float, ...]  # sup |x^alpha T_[n] f(x)| per order alpha
    derivative_sup: float


@dataclass(frozen=True)
class CesaroReport:
    orders: tuple[int, ...]
    rows: tuple[CesaroRow, ...]
    bounded: tuple[bool, ...]  # per weighted order, then the derivative proxy

    def trend(self, j: int) -> float:
        """Last-third maximum over first-third maximum of column ``j``."""
        col = self.column(j)
        k = max(1, len(col) // 3)
        first = max(col[:k])
        return max(col[-k:]) / first if first else (0.0 if not max(col[-k:]) else math.inf)

    def column(self, j: int) -> list[float]:
        if j < len(self.orders):
            return [row.weighted_sup[j] for row in self.rows]
        return [row.derivative_sup for row in self.rows]


def _nodes(grid: Optional[GridSpec], phi: Poly) -> np.ndarray:
    if grid is None:
        grid = default_grid(phi)
    if isinstance(grid, SampleGrid):
        return grid.nodes()
    return np.asarray([float(v) for v in grid])


def cesaro_diagnostic(
    phi: Poly,
    f: Callable[[np.ndarray], np.ndarray],
    grid: Optional[GridSpec] = None,
    n_max: int = 30,
    orders: Sequence[int] = (0, 1, 2),
) -> CesaroReport:
    """Seminorm proxies of ``T_[n] f = (1/n) sum_{k=1}^n f∘phi_k`` on a grid.

    The derivative proxy uses finite differences of the sampled means.
    ``bounded`` flags apply the last-third versus first-third heuristic; they
    are diagnostics, not proofs.
    """
    xs = _nodes(grid, phi)
    ys = xs.copy()
    acc = np.zeros_like(xs)
    rows = []
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, n_max + 1):
            ys = np.array([_step(phi, y) for y in ys])
            vals = np.asarray(f(ys), dtype=float)
            vals[~np.isfinite(ys)] = 0.0
            acc = acc + vals
            mean = acc / n
            weighted = tuple(float(np.max(np.abs(xs**a * mean))) for a in orders)
            deriv = float(np.max(np.abs(np.gradient(mean, xs)))) if len(xs) > 1 else 0.0
            rows.append(CesaroRow(n, weighted, deriv))
    report = CesaroReport(tuple(orders), tuple(rows), ())
    flags = tuple(bounded_trend(report.column(j)) for j in range(len(orders) + 1))
    return CesaroReport(tuple(orders), tuple(rows), flags)


def write_orbit_csv(path, reports: Sequence[OrbitReport]) -> None:
    """Rows ``(m, x0, phi_m(x0))`` with 17 significant digits."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "x", "value"])
        for rep in reports:
            for k, v in enumerate(rep.values):
                w.writerow([k, "%.17g" % rep.x0, "%.17g" % v])

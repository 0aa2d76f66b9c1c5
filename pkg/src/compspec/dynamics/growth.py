"""Growth of derivatives of iterates and the search for bounds of the form
``|phi_m^(n)(x)| <= C r^m (1 + |phi_m(x)|)^q``.

Derivatives of ``phi_m`` are never read off the expanded iterate, whose
coefficients explode; instead the jet ``(phi_m, phi_m', ..., phi_m^(n))`` at
each sample is pushed forward one step at a time with Faà di Bruno. Samples
escape doubly exponentially, so values are carried as mpmath floats: double
precision mantissas with an exponent range wide enough that ratios of huge
quantities stay finite.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath
import numpy as np

from ..errors import CertificateNotFound
from ..polycore import Poly, compose_jet, poly_jet
from ..realroots import cauchy_bound

Q_CAP = 16
M_MAX = 12
GRID_POINTS = 401


@dataclass(frozen=True)
class SampleGrid:
    """``points`` equally spaced nodes on ``[lo, hi]``."""

    lo: float
    hi: float
    points: int = GRID_POINTS

    def __post_init__(self):
        if not self.lo < self.hi or self.points < 2:
            raise ValueError("grid needs lo < hi and at least two points")

    def nodes(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)


GridSpec = Union[SampleGrid, Sequence]


def default_grid(phi: Poly) -> SampleGrid:
    """401 nodes on ``[-L, L]``, ``L = max(4, 2 * root bound of phi(x) - x)``."""
    disp = phi - Poly.x()
    bound = float(cauchy_bound(disp)) if disp.degree >= 1 else 1.0
    half = max(4.0, 2.0 * bound)
    return SampleGrid(-half, half, GRID_POINTS)


def _sample_points(grid: Optional[GridSpec], phi: Poly) -> list:
    if grid is None:
        grid = default_grid(phi)
    if isinstance(grid, SampleGrid):
        return [float(v) for v in grid.nodes()]
    return list(grid)


def iterate_jets(phi: Poly, x, m: int, n: int) -> list[list]:
    """Jets ``[phi_k(x), phi_k'(x), ..., phi_k^(n)(x)]`` for ``k = 0..m``.

    Generic over the scalar: Fractions give exact values, mpmath numbers or
    object arrays of them give floating ones.
    """
    one = x * 0 + 1
    jet = [x] + [one] + [x * 0] * (n - 1) if n >= 1 else [x]
    out = [jet]
    for _ in range(m):
        outer = poly_jet(phi, jet[0], n)
        jet = compose_jet(outer, jet) if n >= 1 else outer[:1]
        out.append(jet)
    return out


def exact_iterate_derivatives(phi: Poly, x, m: int, n: int = 1, max_bits: int = 200_000) -> list[Fraction]:
    """``phi_k^(n)(x)`` for ``k = 1..`` exactly, stopping early (shorter list)
    once values outgrow ``max_bits``."""
    x = Fraction(x)
    jet = [x, Fraction(1)] + [Fraction(0)] * (n - 1)
    out: list[Fraction] = []
    for _ in range(m):
        jet = compose_jet(poly_jet(phi, jet[0], n), jet)
        if any(v.numerator.bit_length() + v.denominator.bit_length() > max_bits for v in jet):
            break
        out.append(jet[n])
    return out


def product_formula_holds(phi: Poly, x, m: int) -> bool:
    """Exact check of ``phi_m'(x) = 2^m prod_{j<m} phi_j(x)`` for ``phi = x^2 + c``."""
    if phi.degree != 2 or phi[2] != 1 or phi[1] != 0:
        raise ValueError("the product formula is stated for x^2 + c")
    x = Fraction(x)
    deriv = exact_iterate_derivatives(phi, x, m, 1)
    if len(deriv) < m:
        raise ValueError("values too large for exact evaluation")
    values = [x]
    for _ in range(m - 1):
        values.append(phi(values[-1]))
    prod = Fraction(1)
    for v in values:
        prod *= v
    return deriv[m - 1] == 2**m * prod


@dataclass(frozen=True)
class GrowthTable:
    """``values[k][i] = phi_{k+1}(x_i)`` and ``derivs[k][i] = phi_{k+1}^(n)(x_i)``."""

    points: tuple
    n: int
    values: tuple
    derivs: tuple

    @property
    def m_max(self) -> int:
        return len(self.values)


def growth_table(phi: Poly, n: int, m_max: int = M_MAX, grid: Optional[GridSpec] = None) -> GrowthTable:
    if n < 1:
        raise ValueError("derivative order must be at least 1")
    pts = _sample_points(grid, phi)
    xs = np.array([mpmath.mpf(float(p)) for p in pts], dtype=object)
    jets = iterate_jets(phi, xs, m_max, n)[1:]
    return GrowthTable(
        tuple(pts),
        n,
        tuple(tuple(j[0]) for j in jets),
        tuple(tuple(j[n]) for j in jets),
    )


@dataclass(frozen=True)
class GrowthWitness:
    m: int
    x: object
    ratio: float
    derivative: object  # exact Fraction when affordable, else float


@dataclass(frozen=True)
class GrowthCertificate:
    r: Fraction
    C: float
    q: int
    n: int
    m_max: int
    grid: object
    ratio_by_m: tuple = field(default=(), compare=False)
    condition_ii: bool = True


def _ratios(table: GrowthTable, r: Fraction, q: int) -> list[list]:
    rr = mpmath.mpf(r.numerator) / r.denominator
    out = []
    for k in range(table.m_max):
        scale = rr ** (k + 1)
        out.append([abs(d) / (scale * (1 + abs(v)) ** q) for v, d in zip(table.values[k], table.derivs[k])])
    return out


def bounded_trend(seq: Sequence) -> bool:
    """Last-third maximum at most twice the first-third maximum."""
    k = max(1, len(seq) // 3)
    return max(seq[-k:]) <= 2 * max(seq[:k])


def _growing_samples(ratios: list[list]) -> list[int]:
    """Samples whose own ratio sequence fails :func:`bounded_trend`.

    A per-``m`` maximum can be dominated early by samples that never grow
    while a single sample (say a repelling fixed point) grows geometrically
    below it, so the trend is also checked pointwise.
    """
    return [i for i in range(len(ratios[0])) if not bounded_trend([row[i] for row in ratios])]


def _condition_ii(table: GrowthTable, q: int) -> bool:
    for k in range(table.m_max):
        for x, v in zip(table.points, table.values[k]):
            if abs(float(x)) > (1 + abs(v)) ** q:
                return False
    return True


def _witnesses(phi: Poly, table: GrowthTable, ratios: list[list], limit: int = 5) -> list[GrowthWitness]:
    k0 = table.m_max - max(1, table.m_max // 3)
    flat = [(ratios[k][i], k + 1, i) for k in range(k0, table.m_max) for i in range(len(table.points))]
    flat.sort(key=lambda t: t[0], reverse=True)
    out = []
    for ratio, m, i in flat[:limit]:
        x = table.points[i]
        exact = exact_iterate_derivatives(phi, x, m, table.n)
        deriv = exact[m - 1] if len(exact) == m else float(table.derivs[m - 1][i])
        out.append(GrowthWitness(m, x, float(ratio), deriv))
    return out


def growth_certificate(
    phi: Poly,
    n: int = 1,
    r=2,
    m_max: int = M_MAX,
    grid: Optional[GridSpec] = None,
    q_cap: int = Q_CAP,
) -> GrowthCertificate:
    """Smallest ``q <= q_cap`` for which the sampled ratio
    ``|phi_m^(n)(x)| / (r^m (1 + |phi_m(x)|)^q)`` shows no growth in ``m``,
    neither in its maximum over samples nor at any single sample.

    ``C`` is the largest sampled ratio at that ``q``. The bound
    ``|x| <= (1 + |phi_m(x)|)^q`` is required on the same samples. Raises
    :class:`CertificateNotFound` with the worst late samples otherwise.
    """
    r = Fraction(r)
    if r < 1:
        raise ValueError("r must be at least 1")
    table = growth_table(phi, n, m_max, grid)
    spec = grid if grid is not None else default_grid(phi)
    last = None
    for q in range(1, q_cap + 1):
        ratios = _ratios(table, r, q)
        per_m = [max(row) for row in ratios]
        last = ratios
        if bounded_trend(per_m) and not _growing_samples(ratios) and _condition_ii(table, q):
            return GrowthCertificate(
                r, float(max(per_m)), q, n, m_max, spec, tuple(float(v) for v in per_m), True
            )
    raise CertificateNotFound(
        f"ratio keeps growing in m for every q <= {q_cap}",
        witnesses=_witnesses(phi, table, last),
    )


def write_growth_csv(path, table: GrowthTable) -> None:
    """Rows ``(m, x, phi_m(x), phi_m^(n)(x))`` with 17 significant digits."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "x", "value", "derivative"])
        for k in range(table.m_max):
            for x, v, d in zip(table.points, table.values[k], table.derivs[k]):
                w.writerow([k + 1, "%.17g" % float(x), "%.17g" % float(v), "%.17g" % float(d)])

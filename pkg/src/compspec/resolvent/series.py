"""Resolvent series ``f = -sum_k lambda^(-k-1) g∘phi_k`` on a grid, and the
residual of ``f∘phi - lambda f = g`` computed by spline interpolation."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

import numpy as np
from scipy.interpolate import CubicSpline

from ..dynamics import SampleGrid, escape_radius
from ..errors import CompSpecError, DivergenceError, GridError
from ..polycore import Poly
from ..spectrum import Membership, contains, spectrum_of
from .testfunctions import SchwartzTestFunction

TERM_CAP = 200
DIVERGENCE_FACTOR = 10.0
DIVERGENCE_WINDOW = 10


@dataclass(frozen=True)
class GridFunction:
    """Complex samples on a strictly increasing real grid."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be one-dimensional of equal length")
        if len(grid) < 2 or np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be strictly increasing with at least two nodes")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))

    def write_csv(self, path) -> None:
        """Columns ``x, re, im`` with 17 significant digits."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "re", "im"])
            for x, v in zip(self.grid, self.values):
                w.writerow(["%.17g" % x, "%.17g" % v.real, "%.17g" % v.imag])


GridLike = Union[SampleGrid, Sequence[float], np.ndarray]


def grid_nodes(grid: GridLike) -> np.ndarray:
    if isinstance(grid, SampleGrid):
        return grid.nodes()
    return np.asarray(grid, dtype=float)


def float_step(phi: Poly, ys: np.ndarray) -> np.ndarray:
    """``phi`` on a float array; overflow and ``inf - inf`` both become ``inf``.

    Only ``|phi_k(x)|`` matters downstream, so the sign at infinity is dropped.
    """
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.asarray(phi(ys), dtype=float)
    out[~np.isfinite(out)] = np.inf
    return out


def _g_on(g: SchwartzTestFunction, ys: np.ndarray) -> np.ndarray:
    vals = np.zeros_like(ys)
    ok = np.isfinite(ys)
    vals[ok] = g(ys[ok])
    return vals


def _escape_tail(g: SchwartzTestFunction, r: float, mod: float, first: int) -> float:
    """Bound for ``sum_{j >= first} |lambda|^(-j-1) |g(phi_j)|`` when
    ``|phi_first| >= r`` and ``r`` is past the escape radius, so that
    ``|phi_{first+i}| >= 2^i r``."""
    total = 0.0
    for i in range(64):
        env = g.envelope(r * 2.0**i) if math.isfinite(r * 2.0**i) else 0.0
        if env == 0.0:
            break
        total += env * mod ** (-(first + i + 1))
    return total


@dataclass(frozen=True)
class ResolventResult:
    """``f`` on the grid with truncation index ``m_star`` (last term kept).

    Unpacks as ``f, m_star``.
    """

    f: GridFunction
    m_star: int
    inside_spectrum: bool
    membership: Membership
    partial_norms: tuple = field(default=(), repr=False)
    rigorous_tail: bool = True

    def __iter__(self) -> Iterator:
        return iter((self.f, self.m_star))


def _membership(phi: Poly, lam: complex) -> Membership:
    try:
        return contains(spectrum_of(phi), Fraction(lam.real), Fraction(lam.imag))
    except CompSpecError:
        return Membership.UNKNOWN


def resolvent_apply(
    phi: Poly,
    lam: complex,
    g: SchwartzTestFunction,
    grid: GridLike,
    tol: float = 1e-10,
    truncate_at: Optional[int] = None,
) -> ResolventResult:
    """Sum the forward series until its tail is provably below ``tol``.

    Two tail bounds are used: the geometric one ``sup|g| |lambda|^(-m-2) /
    (1 - 1/|lambda|)`` when ``|lambda| > 1``, and an escape bound once every
    orbit is past the escape radius, where the envelope of ``g`` makes the
    remaining terms negligible. ``truncate_at`` forces a fixed number of
    terms instead. The run is allowed inside the spectrum but flagged there.
    """
    lam = complex(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    xs = grid_nodes(grid)
    membership = _membership(phi, lam)
    mod = abs(lam)
    radius = float(escape_radius(phi)) if phi.degree >= 2 else None
    sup_g = g.sup()
    ys = xs.copy()
    acc = np.zeros(len(xs), dtype=complex)
    norms: list[float] = []
    small_run = 0
    rigorous = True
    cap = TERM_CAP if truncate_at is None else truncate_at
    for k in range(cap + 1):
        term = _g_on(g, ys)
        acc = acc - lam ** (-k - 1) * term
        norms.append(float(np.max(np.abs(acc))))
        w = DIVERGENCE_WINDOW
        if k >= w and norms[k - w] > 0 and norms[k] > DIVERGENCE_FACTOR * norms[k - w]:
            raise DivergenceError(
                f"partial sums grew by more than {DIVERGENCE_FACTOR:g}x over {w} terms",
                evidence=norms,
            )
        ys = float_step(phi, ys)
        if truncate_at is not None:
            continue
        if mod > 1 and sup_g * mod ** (-k - 2) / (1 - 1 / mod) < tol:
            break
        if radius is not None:
            r_min = float(np.min(np.abs(ys)))
            if r_min >= radius and _escape_tail(g, r_min, mod, k + 1) < tol:
                break
        elif mod <= 1:
            # degree one inside the disc: no tail bound, stop on small terms
            small_run = small_run + 1 if float(np.max(np.abs(term))) * mod ** (-k - 1) < tol * 1e-3 else 0
            if small_run >= 5:
                rigorous = False
                break
    else:
        if truncate_at is None:
            raise DivergenceError(f"tail bound not reached within {TERM_CAP} terms", evidence=norms)
    m_star = k
    inside = membership is not Membership.OUT
    return ResolventResult(GridFunction(xs, acc), m_star, inside, membership, tuple(norms), rigorous)


def _spline(grid: np.ndarray, values: np.ndarray):
    re = CubicSpline(grid, values.real)
    im = CubicSpline(grid, values.imag)
    return lambda y: re(y) + 1j * im(y)


def interpolation_error(f: GridFunction, lo: float, hi: float) -> float:
    """Estimated spline error on ``[lo, hi]``.

    A spline through every other node is compared with ``f`` at the skipped
    nodes; the discrepancy scales like ``h^4``, so halving ``h`` divides it
    by 16.
    """
    coarse = _spline(f.grid[::2], f.values[::2])
    skipped = f.grid[1::2]
    mask = (skipped >= lo) & (skipped <= hi)
    if not np.any(mask):
        return 0.0
    return float(np.max(np.abs(coarse(skipped[mask]) - f.values[1::2][mask]))) / 16


def residual(phi: Poly, lam: complex, f: GridFunction, g: SchwartzTestFunction, tol: float = 1e-8) -> float:
    """``max |f(phi(x)) - lambda f(x) - g(x)|`` over the grid of ``f``.

    ``f(phi(x))`` comes from cubic splines through the real and imaginary
    parts. Where ``phi(x)`` leaves the grid ``f`` is taken as 0, which needs
    ``|f| < tol`` at that edge. Raises :class:`GridError` when either
    requirement fails.
    """
    lam = complex(lam)
    xs = f.grid
    lo, hi = xs[0], xs[-1]
    ys = float_step(phi, xs)
    inside = (ys >= lo) & (ys <= hi)
    if np.any(ys > hi) and abs(f.values[-1]) >= tol:
        raise GridError(f"phi leaves the grid on the right but |f({hi:g})| = {abs(f.values[-1]):.3g}")
    if np.any(ys < lo) and abs(f.values[0]) >= tol:
        raise GridError(f"phi leaves the grid on the left but |f({lo:g})| = {abs(f.values[0]):.3g}")
    f_phi = np.zeros(len(xs), dtype=complex)
    if np.any(inside):
        err = interpolation_error(f, float(np.min(ys[inside])), float(np.max(ys[inside])))
        if err > tol:
            raise GridError(f"grid too coarse: interpolation error about {err:.3g} exceeds {tol:g}")
        f_phi[inside] = _spline(xs, f.values)(ys[inside])
    res = f_phi - lam * f.values - g(xs)
    return float(np.max(np.abs(res)))

"""Concrete enactment of why ``0 < |lambda| <= 1`` lies in the spectrum when
the symbol has a real fixed point.

Take ``a`` the largest fixed point of the working map ``F`` (``phi``, its
reflection, or ``phi∘phi``), so that ``F(x) > x`` for ``x > a``. Pull a point
``x0`` slightly right of ``a`` back along the inverse branch of ``F`` near
``a``, put a plateau ``g`` on ``(x1, x0)`` equal to 1 on ``J0``, and pull the
centre ``y0`` of ``J0`` back too. Any solution of ``f∘phi - lambda f = g``
must be the forward series at the ``y_m``, which forces
``f(y_m) = -lambda^(-s m - 1)`` with ``s`` the number of steps of ``phi`` in
one step of ``F``, while ``f(a) = 0``. For ``|lambda| <= 1`` the forced values
cannot tend to ``f(a)``, so no continuous ``f`` exists.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from ..classify import fixed_points
from ..dynamics import escape_radius
from ..errors import BracketError, CompSpecError, HypothesisError
from ..polycore import Poly, compose, reflect
from ..realroots import refine
from .series import float_step
from .testfunctions import Plateau

M_MAX = 12
UNIT_SLACK = 1e-12
_SERIES_CAP = 400


def _bisect(fun, target: float, lo: float, hi: float) -> float:
    flo = fun(lo) - target
    fhi = fun(hi) - target
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change of phi(x) - {target!r} on [{lo!r}, {hi!r}]")
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # adjacent floats: keep the endpoint with the smaller defect
            return lo if abs(fun(lo) - target) <= abs(fun(hi) - target) else hi
        fm = fun(mid) - target
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid


def _cauchy_float(phi: Poly, target: float) -> float:
    cs = list(phi.float_coeffs)
    cs[0] -= target
    return 1.0 + max(abs(c) for c in cs[:-1]) / abs(cs[-1])


def inverse_orbit(phi: Poly, x0: float, m: int, bracket: Optional[tuple[float, float]] = None) -> list[float]:
    """``x_1, ..., x_m`` with ``phi(x_k) = x_{k-1}``, each by bisection to
    adjacent floats inside ``bracket``.

    Without a bracket each step searches ``[-B, B]`` with ``B`` the Cauchy
    bound of ``phi - x_{k-1}``, which finds a preimage whenever ``phi`` has odd
    degree. Raises :class:`BracketError` when there is no sign change.
    """
    if m < 1:
        raise ValueError("orbit length must be positive")
    fun = lambda t: float(phi(float(t)))  # noqa: E731
    out = []
    prev = float(x0)
    for _ in range(m):
        if bracket is None:
            b = _cauchy_float(phi, prev)
            lo, hi = -b, b
        else:
            lo, hi = bracket
        prev = _bisect(fun, prev, float(lo), float(hi))
        out.append(prev)
    return out


@dataclass(frozen=True)
class WitnessReport:
    lam: complex
    case: str  # "a", "b_i" or "b_ii"
    steps: int  # phi-steps per step of the working map
    fixed_point: float
    delta: float
    x: tuple  # x_0, x_1, ..., x_{m+1}, all in the coordinates of phi
    J0: tuple
    y: tuple  # y_0, ..., y_m
    y_offsets: tuple  # y_m - a in working coordinates, positive and decreasing
    candidate_values: tuple  # f(y_m) from the forward series
    expected_values: tuple  # -lambda^(-steps*m - 1)
    value_at_fixed_point: complex
    recurrence_residuals: tuple  # f(phi(y_m)) - lambda f(y_m) - g(y_m)
    plateau_at_y: tuple  # g(y_m), exactly 0 or 1
    inverse_orbit_residuals: tuple  # |F(x_k) - x_{k-1}| and |F(y_m) - y_{m-1}|
    divergence_flag: bool
    digits: int = 16  # working precision of the pull-backs

    @property
    def test_function(self) -> Plateau:
        return _plateau(self.x[0], self.x[1], self.J0)

    def max_value_error(self) -> float:
        """Relative gap between computed and forced values."""
        return max(abs(c - e) / abs(e) for c, e in zip(self.candidate_values, self.expected_values))

    def to_json(self) -> str:
        def cx(z: complex) -> list[float]:
            return [z.real, z.imag]

        return json.dumps(
            {
                "lambda": cx(self.lam),
                "case": self.case,
                "steps": self.steps,
                "fixed_point": self.fixed_point,
                "delta": self.delta,
                "x": list(self.x),
                "J0": list(self.J0),
                "y": list(self.y),
                "y_offsets": list(self.y_offsets),
                "candidate_values": [cx(v) for v in self.candidate_values],
                "expected_values": [cx(v) for v in self.expected_values],
                "value_at_fixed_point": cx(self.value_at_fixed_point),
                "recurrence_residuals": [cx(v) for v in self.recurrence_residuals],
                "plateau_at_y": list(self.plateau_at_y),
                "inverse_orbit_residuals": list(self.inverse_orbit_residuals),
                "divergence_flag": self.divergence_flag,
                "digits": self.digits,
            },
            indent=2,
        )


def _plateau(x0: float, x1: float, J0: tuple) -> Plateau:
    lo, hi = sorted((x0, x1))
    return Plateau(lo, min(J0), max(J0), hi)


def _pick_delta(work: Poly, phi: Optional[Poly], a: float) -> float:
    """Largest ``delta = 2^-j`` with ``work`` increasing and above the diagonal
    on ``(a, a + delta]``, and, for the two-step map, ``phi < a`` there."""
    dwork = work.derivative()
    delta = 1.0
    while delta >= 1e-6:
        t = a + delta * np.linspace(1e-3, 1.0, 257)
        ok = np.all(dwork(t) > 0) and np.all(work(t) > t)
        if phi is not None:
            ok = ok and np.all(phi(t) < a)
        if ok:
            return delta
        delta /= 2
    raise HypothesisError(
        f"no interval (a, a + delta] with delta >= 1e-6 where the working map increases past a = {a!r}"
    )


def _working_map(phi: Poly) -> tuple[str, Poly, int, int]:
    """Case label, working map, phi-steps per working step, and the sign
    that maps working coordinates back to those of ``phi``."""
    if phi.lead > 0:
        return "a", phi, 1, 1
    if phi.degree % 2 == 0:
        return "b_i", reflect(phi), 1, -1
    return "b_ii", compose(phi, phi), 2, 1


def _mp_evaluator(p: Poly):
    """Horner with exact coefficients at the current mpmath precision."""
    cs = [mpmath.mpf(c.numerator) / c.denominator for c in p.coeffs]

    def ev(x):
        acc = mpmath.mpf(0)
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    return ev


def _mp_bisect(fun, target, lo, hi):
    flo = fun(lo) - target
    if (flo > 0) == (fun(hi) - target > 0):
        raise BracketError(f"no sign change of F(x) - {mpmath.nstr(target, 17)} on the inverse branch")
    while True:
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            return mid
        fm = fun(mid) - target
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid


def _working_digits(work: Poly, a: float, m_max: int) -> int:
    # x_k - a shrinks like F'(a)^-k, so that many extra digits keep the
    # pulled-back points distinct
    mult = abs(float(work.derivative()(a)))
    return 30 + math.ceil((m_max + 2) * math.log10(max(mult, 1.0)))


def _series_at(lam: complex, g: Plateau, orbit: list[float]) -> complex:
    vals = g(np.asarray(orbit, dtype=float))
    return complex(-sum(lam ** (-k - 1) * v for k, v in enumerate(vals)))


def _escape_tail(phi: Poly, start: float, radius: float) -> list[float]:
    """``phi_1(start), phi_2(start), ...`` up to the first point past ``radius``."""
    out = []
    y = np.array([start])
    for _ in range(_SERIES_CAP):
        y = float_step(phi, y)
        out.append(float(y[0]))
        if abs(out[-1]) >= radius:
            return out
    raise CompSpecError(f"forward orbit did not escape within {_SERIES_CAP} steps")


def spectral_witness(phi: Poly, lam: complex, m_max: int = M_MAX) -> WitnessReport:
    """Construct the points and forced values for ``0 < |lambda| <= 1``.

    Pull-backs are computed with mpmath at a precision set by the multiplier
    at ``a``. The series at ``y_m`` follows the constructed orbit
    ``y_m -> y_{m-1} -> ... -> y_0`` (with the intermediate ``phi(y_j)`` in the
    two-step case) and then the floating forward orbit of ``y_0``, which
    escapes. Raises :class:`HypothesisError` for degree below two, for
    symbols without real fixed points, and when no usable ``delta`` exists.
    """
    lam = complex(lam)
    if not 0 < abs(lam) <= 1 + UNIT_SLACK:
        raise ValueError("the witness is built for 0 < |lambda| <= 1")
    if phi.degree < 2:
        raise HypothesisError("the witness needs degree at least two")
    if not fixed_points(phi):
        raise HypothesisError("the symbol has no real fixed point")
    case, work, steps, sign = _working_map(phi)
    top = fixed_points(work)[-1].point
    a = float(top)
    delta = _pick_delta(work, phi if steps == 2 else None, a)
    digits = _working_digits(work, a, m_max)

    with mpmath.workdps(digits):
        iv = refine(top, Fraction(1, 10**digits))
        a_mp = mpmath.mpf(iv.midpoint.numerator) / iv.midpoint.denominator
        F = _mp_evaluator(work)
        phi_mp = _mp_evaluator(phi)
        lo, hi = a_mp, a_mp + delta

        def pull_back(start, count):
            pts = [start]
            for _ in range(count):
                pts.append(_mp_bisect(F, pts[-1], lo, hi))
            return pts

        xw = pull_back(a_mp + mpmath.mpf(delta) / 2, m_max + 1)
        width = xw[0] - xw[1]
        J0w = (xw[1] + width / 4, xw[0] - width / 4)
        yw = pull_back((J0w[0] + J0w[1]) / 2, m_max)
        inv_res = [float(abs(F(p[k]) - p[k - 1])) for p in (xw, yw) for k in range(1, len(p))]
        offsets = tuple(float(y - a_mp) for y in yw)
        # the constructed phi-orbit of y_m, up to y_0, in the coordinates of phi
        chains = []
        for m in range(m_max + 1):
            chain = []
            for j in range(m, 0, -1):
                chain.append(sign * yw[j])
                if steps == 2:
                    chain.append(phi_mp(yw[j]))
            chain.append(sign * yw[0])
            chains.append(chain)
        images = [phi_mp(c[0]) for c in chains]
        chains = [[float(v) for v in c] for c in chains]
        images = [float(v) for v in images]

    xs = tuple(float(sign * v) for v in xw)
    J0 = tuple(sorted(float(sign * v) for v in J0w))
    fp = sign * a
    g = _plateau(xs[0], xs[1], J0)
    radius = max(float(escape_radius(phi)), abs(xs[0]) + 1, abs(fp) + 1)
    tail = _escape_tail(phi, chains[0][0], radius)

    vals, recurrence = [], []
    for chain, image in zip(chains, images):
        orbit = chain + tail
        f_y = _series_at(lam, g, orbit)
        f_image = _series_at(lam, g, [image] + orbit[2:])
        vals.append(f_y)
        recurrence.append(f_image - lam * f_y - float(g(np.array([orbit[0]]))[0]))
    plateau = g(np.array([c[0] for c in chains]))
    expected = tuple(-(lam ** (-steps * m - 1)) for m in range(m_max + 1))
    # every term of the series at a is a power of lambda times g(a) = 0
    if float(g(np.array([fp]))[0]) != 0.0:
        raise CompSpecError("plateau support reaches the fixed point")
    return WitnessReport(
        lam=lam,
        case=case,
        steps=steps,
        fixed_point=fp,
        delta=delta,
        x=xs,
        J0=J0,
        y=tuple(c[0] for c in chains),
        y_offsets=offsets,
        candidate_values=tuple(vals),
        expected_values=expected,
        value_at_fixed_point=0j,
        recurrence_residuals=tuple(recurrence),
        plateau_at_y=tuple(float(v) for v in plateau),
        inverse_orbit_residuals=tuple(inv_res),
        divergence_flag=abs(lam) <= 1 + UNIT_SLACK,
        digits=digits,
    )

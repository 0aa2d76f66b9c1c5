"""Exact search for an iterate whose orbits square at every step.

For an even-degree symbol without fixed points some iterate ``psi`` has
``min |psi| = a > 1`` and ``|psi(u)| >= K u^2`` whenever ``|u| >= a``. Since
every value ``psi_m(t)`` with ``m >= 1`` lies on one of those two rays, the
bound ``|psi_{m+1}(t)| >= K psi_m(t)^2`` follows for all real ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..classify import fixed_points
from ..errors import CertificateNotFound, HypothesisError, ResourceLimitError
from ..polycore import Poly, iterate
from ..realroots import count_real_roots, isolate_real_roots, nonnegative_on, refine

N_CAP = 8
_SCREEN = [Fraction(k, 8) for k in range(-32, 33)]


@dataclass(frozen=True)
class SquaringCertificate:
    N: int
    a: Fraction
    K: Fraction
    psi: Poly

    def ray_gap(self) -> Poly:
        """``psi(u) - K u^2``, nonnegative for ``|u| >= a``."""
        return self.psi - Poly.monomial(2, self.K)


def _min_lower_bound(psi: Poly) -> Fraction:
    """A rational ``a`` with ``psi >= a`` everywhere, equal to the minimum
    when the minimum sits at a rational critical point.

    ``psi`` has even degree and positive leading coefficient.
    """
    candidates = []
    for c in isolate_real_roots(psi.derivative()):
        if c.is_rational():
            candidates.append(psi(c.as_fraction()))
        else:
            iv = refine(c, Fraction(1, 2**40))
            candidates.append(min(psi(iv.lo), psi(iv.hi), psi(iv.midpoint)))
    guess = a = min(candidates)
    delta = Fraction(1, 2**30)
    while not nonnegative_on(psi - a):
        # sampled values sit above the true minimum; back off geometrically
        a = guess - delta if guess - delta > 1 else (a + 1) / 2
        delta *= 4
    return a


def _check_hypotheses(phi: Poly) -> None:
    if phi.degree < 2 or phi.degree % 2:
        raise HypothesisError("the squaring lemma needs a symbol of even degree")
    if fixed_points(phi):
        raise HypothesisError("the squaring lemma needs a symbol without real fixed points")


def certify_rays(psi: Poly, a: Fraction, K: Fraction) -> bool:
    """``psi(u) >= K u^2`` on ``u >= a`` and on ``u <= -a``, exactly."""
    gap = psi - Poly.monomial(2, K)
    return nonnegative_on(gap, a, None) and nonnegative_on(gap, None, -a)


def find_squaring_iterate(phi: Poly, K=1, cap: int = N_CAP) -> SquaringCertificate:
    """Smallest ``N <= cap`` such that ``psi = phi_N`` squares its orbits with constant ``K``."""
    K = Fraction(K)
    if K <= 0:
        raise ValueError("K must be positive")
    _check_hypotheses(phi)
    tried = 0
    for n in range(1, cap + 1):
        try:
            psi = iterate(phi, n)
        except ResourceLimitError as exc:
            raise CertificateNotFound(
                f"iterate {n} exceeds the exact budget; largest N tried was {tried}",
                witnesses=[(tried, str(exc))],
            ) from exc
        tried = n
        # phi(x) > x everywhere, so psi has no fixed points either, and
        # min psi > 1 rules out zeros; cheap exact samples screen first
        if any(psi(t) <= 1 for t in _SCREEN):
            continue
        if count_real_roots(psi - 1):
            continue
        a = _min_lower_bound(psi)
        if a <= 1:
            continue
        # a shorter dyadic bound reads better; it is still below min psi
        short = Fraction(math.floor(a * 2**24), 2**24)
        for cand in (short, a) if 1 < short < a else (a,):
            if certify_rays(psi, cand, K):
                return SquaringCertificate(n, cand, K, psi)
    raise CertificateNotFound(f"no squaring iterate up to N = {tried}", witnesses=[(tried, None)])


@dataclass(frozen=True)
class LowerBoundCheck:
    m: int
    bound: float
    worst_value: float
    worst_point: float
    holds: bool


def iterate_lower_bounds(cert: SquaringCertificate, points: Sequence[float], m_max: int = 5) -> list[LowerBoundCheck]:
    """Floating check of ``|psi_m(t)| > a^(2^(m-1))`` for ``m = 1..m_max``."""
    pts = np.asarray([float(t) for t in points])
    vals = pts.copy()
    a = float(cert.a)
    out = []
    with np.errstate(over="ignore", invalid="ignore"):
        for m in range(1, m_max + 1):
            vals = np.asarray(cert.psi(vals), dtype=float)
            vals[np.isnan(vals)] = np.inf
            bound = a ** (2 ** (m - 1))
            mags = np.abs(vals)
            i = int(np.argmin(mags))
            out.append(LowerBoundCheck(m, bound, float(mags[i]), float(pts[i]), bool(np.all(mags > bound))))
    return out

"""Real algebraic numbers as (square-free polynomial, isolating interval)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional

from ..polycore import Poly, poly_gcd
from .sturm import (
    IntPoly,
    cauchy_bound,
    count_in,
    sign_at_rational,
    squarefree_part,
    sturm_sequence,
    to_int_poly,
)


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, value) -> Sign:
        return cls((value > 0) - (value < 0))


@dataclass(frozen=True)
class IntervalQ:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


class AlgebraicPoint:
    """A real root of ``defining`` located by ``isolator``.

    Either ``isolator`` is degenerate ``[r, r]`` and the point is the
    rational ``r``, or ``defining`` is nonzero at both endpoints and has
    exactly one root strictly inside. Instances are immutable; refinement
    returns a new point. Equality compares the numbers, not the encodings.
    """

    __slots__ = ("_defining", "_isolator")

    def __init__(self, defining: Poly, isolator: IntervalQ):
        self._defining = defining
        self._isolator = isolator

    @classmethod
    def rational(cls, r) -> AlgebraicPoint:
        r = Fraction(r)
        return cls(Poly((-r, 1)), IntervalQ(r, r))

    @property
    def defining(self) -> Poly:
        return self._defining

    @property
    def isolator(self) -> IntervalQ:
        return self._isolator

    def is_rational(self) -> bool:
        return self._isolator.lo == self._isolator.hi

    def as_fraction(self) -> Optional[Fraction]:
        return self._isolator.lo if self.is_rational() else None

    def _int_defining(self) -> IntPoly:
        return to_int_poly(self._defining)

    def bisect(self) -> AlgebraicPoint:
        """Halve the isolating interval once."""
        if self.is_rational():
            return self
        iso = self._isolator
        cs = self._int_defining()
        m = iso.midpoint
        sm = sign_at_rational(cs, m)
        if sm == 0:
            return AlgebraicPoint(self._defining, IntervalQ(m, m))
        if sm == sign_at_rational(cs, iso.lo):
            return AlgebraicPoint(self._defining, IntervalQ(m, iso.hi))
        return AlgebraicPoint(self._defining, IntervalQ(iso.lo, m))

    def refined(self, eps) -> AlgebraicPoint:
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        if self.is_rational() or self._isolator.width < eps:
            return self
        iso = self._isolator
        cs = self._int_defining()
        lo, hi = iso.lo, iso.hi
        s_lo = sign_at_rational(cs, lo)
        while hi - lo >= eps:
            m = (lo + hi) / 2
            sm = sign_at_rational(cs, m)
            if sm == 0:
                return AlgebraicPoint(self._defining, IntervalQ(m, m))
            if sm == s_lo:
                lo = m
            else:
                hi = m
        return AlgebraicPoint(self._defining, IntervalQ(lo, hi))

    def __float__(self) -> float:
        if self.is_rational():
            return float(self._isolator.lo)
        scale = max(abs(self._isolator.lo), abs(self._isolator.hi), Fraction(1))
        p = self.refined(scale * Fraction(1, 2**60))
        return float(p._isolator.midpoint)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlgebraicPoint.rational(other)
        if not isinstance(other, AlgebraicPoint):
            return NotImplemented
        return same_point(self, other)

    __hash__ = None

    def __repr__(self) -> str:
        if self.is_rational():
            return f"AlgebraicPoint({self._isolator.lo})"
        return f"AlgebraicPoint(root of {self._defining} in {self._isolator})"


def same_point(a: AlgebraicPoint, b: AlgebraicPoint) -> bool:
    ra, rb = a.as_fraction(), b.as_fraction()
    if ra is not None and rb is not None:
        return ra == rb
    if ra is not None:
        a, b, ra, rb = b, a, rb, ra
    if rb is not None:
        return a.isolator.lo < rb < a.isolator.hi and a.defining(rb) == 0
    lo = max(a.isolator.lo, b.isolator.lo)
    hi = min(a.isolator.hi, b.isolator.hi)
    if lo > hi:
        return False
    g = poly_gcd(a.defining, b.defining)
    if g.degree < 1:
        return False
    # g divides a.defining, whose only root in a's isolator is a itself
    return count_in(sturm_sequence(g), lo, hi) >= 1


def compare(a: AlgebraicPoint, b: AlgebraicPoint) -> int:
    """Sign of ``a - b``."""
    if same_point(a, b):
        return 0
    while True:
        if a.isolator.hi < b.isolator.lo:
            return -1
        if b.isolator.hi < a.isolator.lo:
            return 1
        a, b = a.bisect(), b.bisect()


def refine(a: AlgebraicPoint, eps) -> IntervalQ:
    """Sub-interval of the isolator, narrower than ``eps``, holding the root."""
    return a.refined(eps).isolator


def _divisors(n: int, limit: int) -> Optional[list[int]]:
    n = abs(n)
    if n > limit:
        return None
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            if k * k != n:
                out.append(n // k)
        k += 1
    return out


def rational_roots(p: Poly, limit: int = 10**8) -> Optional[list[Fraction]]:
    """All rational roots via the rational root test, or ``None`` when the
    end coefficients are too large to factor by trial division."""
    cs = to_int_poly(p)
    roots: list[Fraction] = []
    while len(cs) > 1 and cs[0] == 0:
        cs = cs[1:]
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(cs) <= 1:
        return roots
    num = _divisors(cs[0], limit)
    den = _divisors(cs[-1], limit)
    if num is None or den is None:
        return None
    seen = set()
    for u in num:
        for v in den:
            for cand in (Fraction(u, v), Fraction(-u, v)):
                if cand not in seen:
                    seen.add(cand)
                    if sign_at_rational(cs, cand) == 0:
                        roots.append(cand)
    return sorted(roots)


def _isolate_squarefree(s: Poly) -> list[AlgebraicPoint]:
    seq = sturm_sequence(s)
    cs = seq[0]
    bound = cauchy_bound(s)
    out: list[AlgebraicPoint] = []
    # depth-first, left half first, so roots come out ascending
    stack = [(-bound, bound, count_in(seq, -bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n < 0:
            out.append(AlgebraicPoint.rational(lo))
            continue
        if n == 1:
            out.append(AlgebraicPoint(s, IntervalQ(lo, hi)))
            continue
        m = (lo + hi) / 2
        if sign_at_rational(cs, m) == 0:
            eps = (hi - lo) / 4
            while True:
                left, right = m - eps, m + eps
                if (
                    sign_at_rational(cs, left) != 0
                    and sign_at_rational(cs, right) != 0
                    and count_in(seq, left, right) == 1
                ):
                    break
                eps /= 2
            n_left = count_in(seq, lo, left)
            stack.append((right, hi, n - n_left - 1))
            stack.append((m, m, -1))  # exact rational root
            stack.append((lo, left, n_left))
            continue
        n_left = count_in(seq, lo, m)
        stack.append((m, hi, n - n_left))
        stack.append((lo, m, n_left))
    return out


def isolate_real_roots(p: Poly) -> list[AlgebraicPoint]:
    """One isolating interval per distinct real root, ascending.

    Rational roots are returned as exact degenerate points; the remaining
    roots are isolated for the cofactor left after dividing them out.
    """
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    s = squarefree_part(p)
    if s.degree < 1:
        return []
    rats = rational_roots(s)
    if rats is None:
        return _isolate_squarefree(s)
    rest = s
    for r in rats:
        rest = rest // Poly((-r, 1))
    points = [AlgebraicPoint.rational(r) for r in rats]
    if rest.degree >= 1:
        for a in _isolate_squarefree(rest.monic()):
            # keep every isolator clear of the rational roots of s
            while any(a.isolator.lo <= r <= a.isolator.hi for r in rats):
                a = a.bisect()
            points.append(a)
        points.sort(key=cmp_to_key(compare))
    return points


def largest_real_root(p: Poly) -> Optional[AlgebraicPoint]:
    """Isolate only the largest real root of ``p`` (``None`` if there is none).

    Sturm bisection alone; the returned isolator may enclose a rational root
    without being degenerate.
    """
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    s = squarefree_part(p)
    if s.degree < 1:
        return None
    seq = sturm_sequence(s)
    cs = seq[0]
    hi = cauchy_bound(s)
    lo = -hi
    if count_in(seq, lo, hi) == 0:
        return None
    # invariant: the largest root lies in (lo, hi) and s(hi) != 0
    while True:
        if sign_at_rational(cs, lo) != 0 and count_in(seq, lo, hi) == 1:
            return AlgebraicPoint(s, IntervalQ(lo, hi))
        m = (lo + hi) / 2
        above = count_in(seq, m, hi)
        if sign_at_rational(cs, m) == 0:
            if above == 1:
                return AlgebraicPoint.rational(m)
            lo = m
        elif above >= 1:
            lo = m
        else:
            hi = m


def squarefree_decompose(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic, pairwise coprime, square-free factors.

    ``p == p.lead * prod(f**m for f, m in result)``.
    """
    if p.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    if p.degree < 1:
        return []
    f = p.monic()
    df = f.derivative()
    a0 = poly_gcd(f, df)
    b = f // a0
    c = df // a0
    d = c - b.derivative()
    out: list[tuple[Poly, int]] = []
    i = 1
    while b.degree >= 1:
        a = poly_gcd(b, d)
        if a.degree >= 1:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def multiplicity(p: Poly, a: AlgebraicPoint) -> int:
    for factor, m in squarefree_decompose(p):
        if sign_at(factor, a) is Sign.ZERO:
            return m
    return 0


_ENCLOSURE_ROUNDS = 12
# relative slack covering float rounding in the Taylor shift (about n^2 ulps)
_ENCLOSURE_SLACK = 1e-12


def _enclose(coeffs, lo: Fraction, hi: Fraction) -> tuple[float, float]:
    """Enclosure of the polynomial's range on ``[lo, hi]``.

    Centred form in floats, widened by a bound on the rounding error;
    ``(-inf, inf)`` when floats overflow.
    """
    mid = (lo + hi) / 2
    m = float(mid)
    r = float((hi - lo) / 2) * (1 + 2.0**-50) + abs(m) * 2.0**-51
    cs = [float(c) for c in coeffs]
    scale = 0.0
    for c in reversed(cs):
        scale = scale * (abs(m) + r) + abs(c)
    # Taylor coefficients at m by repeated synthetic division
    taylor = []
    work = cs[:]
    while work:
        acc = 0.0
        quotient = []
        for c in reversed(work):
            acc = acc * m + c
            quotient.append(acc)
        taylor.append(quotient.pop())
        work = quotient[::-1]
    spread = 0.0
    for t in reversed(taylor[1:]):
        spread = (spread + abs(t)) * r
    slack = _ENCLOSURE_SLACK * scale + 1e-300
    low, high = taylor[0] - spread - slack, taylor[0] + spread + slack
    if not (math.isfinite(low) and math.isfinite(high)):
        return -math.inf, math.inf
    return low, high


def sign_at(q: Poly, a: AlgebraicPoint) -> Sign:
    """Exact sign of ``q`` at the algebraic point ``a``."""
    if q.is_zero():
        return Sign.ZERO
    r = a.as_fraction()
    if r is not None:
        return Sign.of(q(r))
    # cheap exclusion first: an interval enclosure of q away from zero
    # settles the sign without any gcd work
    probe = a
    for _ in range(_ENCLOSURE_ROUNDS):
        r = probe.as_fraction()
        if r is not None:
            return Sign.of(q(r))
        lo, hi = _enclose(q.coeffs, probe.isolator.lo, probe.isolator.hi)
        if lo > 0:
            return Sign.POSITIVE
        if hi < 0:
            return Sign.NEGATIVE
        probe = probe.bisect()
    a = probe
    g = poly_gcd(a.defining, q)
    if g.degree >= 1 and count_in(sturm_sequence(g), a.isolator.lo, a.isolator.hi) >= 1:
        return Sign.ZERO
    seq = sturm_sequence(q)
    qi = to_int_poly(q)
    while True:
        r = a.as_fraction()
        if r is not None:
            return Sign.of(q(r))
        lo, hi = a.isolator.lo, a.isolator.hi
        if count_in(seq, lo, hi) == 0:
            return Sign(sign_at_rational(qi, lo))
        a = a.bisect()


def nonnegative_on(p: Poly, lo=None, hi=None) -> bool:
    """Whether ``p >= 0`` on ``[lo, hi]`` (``None`` = unbounded), exactly."""
    if p.is_zero():
        return True
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    if lo is not None and hi is not None and lo == hi:
        return p(lo) >= 0
    # p can only change sign across a root of odd multiplicity
    odd = Poly((1,))
    for f, m in squarefree_decompose(p):
        if m % 2:
            odd = odd * f
    if odd.degree >= 1:
        inside = count_in(sturm_sequence(odd), lo, hi)
        for e in (lo, hi):
            if e is not None and odd(e) == 0:
                inside -= 1
        if inside > 0:
            return False
    return p(_interior_nonroot(p, lo, hi)) > 0


def _interior_nonroot(p: Poly, lo, hi) -> Fraction:
    bound = cauchy_bound(p)
    if lo is None and hi is None:
        return bound
    if lo is None:
        return min(hi, -bound) - 1
    if hi is None:
        return max(lo, bound) + 1
    k = 2
    x = (lo + hi) / 2
    while p(x) == 0:
        k += 1
        x = lo + (hi - lo) / k
    return x


def _interval_eval(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of ``p`` over ``[lo, hi]`` by interval Horner."""
    a = b = p.lead
    for c in reversed(p.coeffs[:-1]):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


def _root_power_sums(f: Poly, count: int) -> list[Fraction]:
    """``[sum z^k for k < count]`` over the complex roots of ``f`` (Newton)."""
    f = f.monic()
    d = f.degree
    c = [f[d - i] for i in range(d + 1)]  # c[0] = 1, c[i] is the x^{d-i} coefficient
    s = [Fraction(d)]
    for k in range(1, count):
        acc = Fraction(0)
        for i in range(1, min(k, d) + 1):
            if i < k:
                acc += c[i] * s[k - i]
            else:
                acc += k * c[i]
        s.append(-acc)
    return s


def _charpoly_of_multiplication(q: Poly, f: Poly) -> Poly:
    """Characteristic polynomial of ``h -> q*h mod f`` on ``Q[x]/(f)``.

    Its roots are the values ``q(z)`` over the roots ``z`` of ``f``. The
    traces of the powers of ``q`` come from power sums of the roots of ``f``;
    Newton's identities turn them into coefficients.
    """
    d = f.degree
    sums = _root_power_sums(f, d)
    traces = []
    h = Poly((1,))
    qm = q % f
    for _ in range(d):
        h = (h * qm) % f
        traces.append(sum((h[j] * sums[j] for j in range(d)), Fraction(0)))
    e = [Fraction(1)]
    for k in range(1, d + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            term = e[k - i] * traces[i - 1]
            acc += term if i % 2 else -term
        e.append(acc / k)
    return Poly([(-1) ** k * e[k] for k in range(d, -1, -1)])


def algebraic_value(q: Poly, a: AlgebraicPoint) -> AlgebraicPoint:
    """The real number ``q(a)`` as an algebraic point of its own."""
    r = a.as_fraction()
    if r is not None:
        return AlgebraicPoint.rational(q(r))
    if q.degree < 1:
        return AlgebraicPoint.rational(q[0])
    cp = _charpoly_of_multiplication(q, a.defining)
    candidates = isolate_real_roots(cp)
    while True:
        r = a.as_fraction()
        if r is not None:
            return AlgebraicPoint.rational(q(r))
        elo, ehi = _interval_eval(q, a.isolator.lo, a.isolator.hi)
        hits = [c for c in candidates if c.isolator.lo <= ehi and elo <= c.isolator.hi]
        if len(hits) == 1:
            return hits[0]
        a = a.bisect()
        candidates = [c.bisect() for c in candidates]

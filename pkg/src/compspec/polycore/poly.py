"""Univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

from ..errors import ResourceLimitError


@dataclass(frozen=True)
class Limits:
    """Budget for exact computations.

    Iterating even a quadratic doubles the degree and roughly doubles the
    coefficient size at every step, so compositions check both bounds and
    raise instead of silently degrading.
    """

    max_degree: int = 4096
    max_bits: int = 10**6


DEFAULT_LIMITS = Limits()


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, float):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class Poly:
    """Immutable polynomial ``sum(coeffs[i] * x**i)`` over the rationals.

    Coefficients are stored lowest power first with trailing zeros removed,
    so the zero polynomial has an empty coefficient tuple and degree -1.
    """

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    # -- constructors --------------------------------------------------
    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> Poly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> Poly:
        return cls([0] * k + [c])

    # -- basic properties ---------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    def __getitem__(self, i: int) -> Fraction:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == Poly.constant(other)._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    @cached_property
    def bits(self) -> int:
        """Total numerator plus denominator bit length over all coefficients."""
        return sum(c.numerator.bit_length() + c.denominator.bit_length() for c in self._coeffs)

    @cached_property
    def float_coeffs(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self._coeffs)

    # -- evaluation ----------------------------------------------------
    def __call__(self, x):
        """Evaluate at ``x``.

        Exact for ints and Fractions; any other numeric type (float, complex,
        numpy arrays, mpmath numbers) is evaluated with float coefficients.
        """
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self._coeffs):
                acc = acc * x + c
            return acc
        cs = self.float_coeffs
        if not cs:
            return 0.0 * x
        acc = cs[-1] + 0.0 * x
        for c in reversed(cs[:-1]):
            acc = acc * x + c
        return acc

    # -- arithmetic ----------------------------------------------------
    def __neg__(self) -> Poly:
        return Poly(-c for c in self._coeffs)

    def __add__(self, other) -> Poly:
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self), len(other))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> Poly:
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self), len(other))
        return Poly(self[i] - other[i] for i in range(n))

    def __rsub__(self, other) -> Poly:
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self._coeffs)
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Poly()
        if len(self) * len(other) <= 64:
            out = [Fraction(0)] * (len(self) + len(other) - 1)
            for i, a in enumerate(self._coeffs):
                if a:
                    for j, b in enumerate(other._coeffs):
                        out[i + j] += a * b
            return Poly(out)
        na, da = _integerize(self._coeffs)
        nb, db = _integerize(other._coeffs)
        den = da * db
        return Poly(Fraction(c, den) for c in _int_mul(na, nb))

    __rmul__ = __mul__

    def __truediv__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return Poly(c / other for c in self._coeffs)
        return NotImplemented

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if self.degree > 0 and self.degree * k > DEFAULT_LIMITS.max_degree:
            raise ResourceLimitError(
                f"degree {self.degree * k} exceeds cap {DEFAULT_LIMITS.max_degree}"
            )
        result = Poly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        return poly_divmod(self, other)

    def __mod__(self, other: Poly) -> Poly:
        return poly_divmod(self, other)[1]

    def __floordiv__(self, other: Poly) -> Poly:
        return poly_divmod(self, other)[0]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self / self.lead

    def derivative(self, k: int = 1) -> Poly:
        return derivative(self, k)

    def compose(self, inner: Poly, limits: Limits = DEFAULT_LIMITS) -> Poly:
        return compose(self, inner, limits)


def _integerize(cs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in cs:
        den = lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in cs], den


def _kronecker(a: list[int], b: list[int]) -> list[int]:
    """Product of two lists of nonnegative ints via one big-integer multiply."""
    bound = max(a).bit_length() + max(b).bit_length() + min(len(a), len(b)).bit_length()
    nbytes = bound // 8 + 1
    pack_a = b"".join(c.to_bytes(nbytes, "little") for c in a)
    pack_b = b"".join(c.to_bytes(nbytes, "little") for c in b)
    prod = int.from_bytes(pack_a, "little") * int.from_bytes(pack_b, "little")
    n = len(a) + len(b) - 1
    raw = prod.to_bytes(n * nbytes, "little")
    return [int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") for i in range(n)]


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    """Signed integer polynomial product, split into nonnegative parts."""
    ap = [max(c, 0) for c in a]
    am = [max(-c, 0) for c in a]
    bp = [max(c, 0) for c in b]
    bm = [max(-c, 0) for c in b]
    n = len(a) + len(b) - 1
    out = [0] * n
    for x, y, sign in ((ap, bp, 1), (am, bm, 1), (ap, bm, -1), (am, bp, -1)):
        if any(x) and any(y):
            for i, c in enumerate(_kronecker(x, y)):
                out[i] += sign * c
    return out


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.constant(value)
    return NotImplemented


X = Poly.x()


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db = b.degree
    lead = b.lead
    if a.degree < db:
        return Poly(), a
    quot = [Fraction(0)] * (a.degree - db + 1)
    for k in range(a.degree - db, -1, -1):
        c = rem[k + db] / lead
        quot[k] = c
        if c:
            for j in range(db + 1):
                rem[k + j] -= c * b.coeffs[j]
    return Poly(quot), Poly(rem[:db])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero only when both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def derivative(p: Poly, k: int = 1) -> Poly:
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    cs = list(p.coeffs)
    for _ in range(k):
        cs = [i * c for i, c in enumerate(cs)][1:]
    return Poly(cs)


def compose(p: Poly, q: Poly, limits: Limits = DEFAULT_LIMITS) -> Poly:
    """Return ``p(q(x))`` exactly, enforcing ``limits``."""
    if p.degree >= 1 and q.degree >= 1 and p.degree * q.degree > limits.max_degree:
        raise ResourceLimitError(
            f"composition degree {p.degree * q.degree} exceeds cap {limits.max_degree}"
        )
    result = Poly()
    for c in reversed(p.coeffs):
        result = result * q + c
        if result.bits > limits.max_bits:
            raise ResourceLimitError(
                f"coefficient size {result.bits} bits exceeds cap {limits.max_bits}"
            )
    return result


def iterate(p: Poly, n: int, limits: Limits = DEFAULT_LIMITS) -> Poly:
    """n-th iterate ``p∘…∘p``; ``iterate(p, 0)`` is the identity ``x``."""
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    if p.degree >= 2 and p.degree**n > limits.max_degree:
        raise ResourceLimitError(
            f"iterate degree {p.degree}^{n} exceeds cap {limits.max_degree}"
        )
    result = X
    for _ in range(n):
        result = compose(p, result, limits)
    return result


def format_poly(p: Poly, var: str = "x") -> str:
    """Canonical text form: descending powers, lowest-terms rationals."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def from_roots(roots: Sequence, lead=1) -> Poly:
    """``lead * prod(x - r)``; handy for building test symbols."""
    out = Poly.constant(lead)
    for r in roots:
        out = out * Poly((-_frac(r), 1))
    return out

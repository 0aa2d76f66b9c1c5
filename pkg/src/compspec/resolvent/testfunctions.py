"""Schwartz test functions with derivatives up to order four.

Gaussian and Hermite kinds use ``d/du [H_k(u) e^{-u^2}] = -H_{k+1}(u) e^{-u^2}``.
The bump ``exp(-1/((x-a)(b-x)))`` is differentiated in closed form as well:
the exponent splits into partial fractions, and Faà di Bruno assembles the jet
of the exponential. The plateau, used where a function must equal 1 on an
interval, is built from logistic steps and handled the same way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import hermite as H
from scipy.special import expit

from ..polycore import compose_jet

MAX_ORDER = 4


def _as_array(x):
    return np.asarray(x, dtype=float)


def _finite(x: np.ndarray, values: np.ndarray) -> np.ndarray:
    # every kind decays at infinity
    return np.where(np.isfinite(x), values, 0.0)


class SchwartzTestFunction:
    """Base class: ``g(x)`` on arrays and ``derivative(x, d)``."""

    kind = "abstract"

    def __call__(self, x):
        return self.derivative(x, 0)

    def derivative(self, x, d: int):
        raise NotImplementedError

    def sup(self) -> float:
        """``max |g|`` over the real line."""
        raise NotImplementedError

    def envelope(self, r: float) -> float:
        """An upper bound for ``|g(y)|`` over ``|y| >= r``."""
        raise NotImplementedError

    def spec(self) -> str:
        raise NotImplementedError


def _check_order(d: int) -> None:
    if not 0 <= d <= MAX_ORDER:
        raise ValueError(f"derivative order must be between 0 and {MAX_ORDER}")


@dataclass(frozen=True)
class HermiteGaussian(SchwartzTestFunction):
    """``H_k(u) exp(-u^2)`` with ``u = (x - center)/width`` (physicists' ``H_k``)."""

    order: int = 0
    center: float = 0.0
    width: float = 1.0
    kind = "hermite"

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError("width must be positive")
        if self.order < 0:
            raise ValueError("Hermite order must be nonnegative")

    def derivative(self, x, d: int):
        _check_order(d)
        x = _as_array(x)
        with np.errstate(over="ignore", invalid="ignore"):
            u = (x - self.center) / self.width
            coef = np.zeros(self.order + d + 1)
            coef[-1] = 1.0
            vals = (-1) ** d * H.hermval(u, coef) * np.exp(-u * u) / self.width**d
        return _finite(x, vals)

    def _radius(self) -> float:
        # beyond every zero of H_{k+1}, |H_k e^{-u^2}| is decreasing in |u|
        return math.sqrt(2 * self.order + 3) if self.order else 0.0

    def sup(self) -> float:
        u = np.linspace(-self._radius() - 1, self._radius() + 1, 4001)
        return float(np.max(np.abs(H.hermval(u, [0] * self.order + [1]) * np.exp(-u * u))))

    def envelope(self, r: float) -> float:
        u = max(0.0, (r - abs(self.center)) / self.width)
        if u <= self._radius():
            return self.sup()
        return float(abs(H.hermval(u, [0] * self.order + [1])) * math.exp(-u * u))

    def spec(self) -> str:
        if self.order == 0:
            return f"gaussian({self.center:g},{self.width:g})"
        return f"hermite:{self.order}"


class Gaussian(HermiteGaussian):
    """``exp(-((x - center)/width)^2)``."""

    kind = "gaussian"

    def __init__(self, center: float = 0.0, width: float = 1.0):
        super().__init__(0, center, width)

    def __repr__(self):
        return f"Gaussian(center={self.center!r}, width={self.width!r})"


def _bump_exponent_jet(x: np.ndarray, a: float, b: float, n: int) -> list[np.ndarray]:
    """Derivatives ``h, h', ..., h^(n)`` of ``h = -1/((x-a)(b-x))`` inside ``(a, b)``."""
    out = []
    for j in range(n + 1):
        fact = math.factorial(j)
        out.append(-((-1) ** j * fact / (x - a) ** (j + 1) + fact / (b - x) ** (j + 1)) / (b - a))
    return out


@dataclass(frozen=True)
class Bump(SchwartzTestFunction):
    """``exp(-1/((x-a)(b-x)))`` on ``(a, b)``, scaled to 1 at the midpoint."""

    a: float = 0.0
    b: float = 1.0
    kind = "bump"

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("bump support needs a < b")

    def derivative(self, x, d: int):
        _check_order(d)
        x = _as_array(x)
        out = np.zeros_like(x)
        inside = (x > self.a) & (x < self.b)
        if np.any(inside):
            xi = x[inside]
            shift = 4.0 / (self.b - self.a) ** 2
            h = _bump_exponent_jet(xi, self.a, self.b, d)
            e = np.exp(h[0] + shift)
            out[inside] = compose_jet([e] * (d + 1), h)[d] if d else e
        return out

    def sup(self) -> float:
        return 1.0

    def envelope(self, r: float) -> float:
        return 0.0 if r >= max(abs(self.a), abs(self.b)) else 1.0

    def spec(self) -> str:
        return f"bump:{self.a:g},{self.b:g}"


def _logistic_polys(n: int) -> list[Polynomial]:
    """``P_k`` with ``L^(k) = P_k(L)`` for ``L(v) = 1/(1 + e^v)``, using ``L' = -L(1-L)``."""
    polys = [Polynomial([0, 1])]
    for _ in range(n):
        polys.append(polys[-1].deriv() * Polynomial([0, -1, 1]))
    return polys


def _smooth_step_jet(t: np.ndarray, n: int) -> list[np.ndarray]:
    """Jet in ``t`` of the step equal to 0 for ``t <= 0`` and 1 for ``t >= 1``.

    Inside ``(0, 1)`` the step is ``L(u)`` with ``u = 1/t - 1/(1-t)``. It is
    evaluated on ``t <= 1/2`` only, through ``s(t) = 1 - s(1 - t)``, since
    ``1 - L`` loses all precision as ``L`` approaches 1.
    """
    jet = [np.where(t >= 1, 1.0, 0.0)] + [np.zeros_like(t) for _ in range(n)]
    mid = (t > 0) & (t < 1)
    if np.any(mid):
        upper = t[mid] > 0.5
        tm = np.where(upper, 1 - t[mid], t[mid])
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            u = [
                (-1) ** j * math.factorial(j) / tm ** (j + 1) - math.factorial(j) / (1 - tm) ** (j + 1)
                for j in range(n + 1)
            ]
            L = expit(-u[0])
            outer = [P(L) for P in _logistic_polys(n)]
            vals = compose_jet(outer, u) if n else outer[:1]
        for j in range(n + 1):
            # near the ends huge derivatives of u meet vanishing powers of L
            v = np.nan_to_num(vals[j], nan=0.0, posinf=0.0, neginf=0.0)
            if j == 0:
                v = np.where(upper, 1 - v, v)
            else:
                v = np.where(upper, (-1) ** (j + 1) * v, v)
            jet[j][mid] = v
    return jet


@dataclass(frozen=True)
class Plateau(SchwartzTestFunction):
    """Smooth, equal to 1 on ``[b, c]`` and to 0 outside ``(a, d)``."""

    a: float
    b: float
    c: float
    d: float
    kind = "plateau"

    def __post_init__(self):
        if not (self.a < self.b <= self.c < self.d):
            raise ValueError("plateau needs a < b <= c < d")

    def derivative(self, x, d: int):
        _check_order(d)
        x = _as_array(x)
        xf = np.where(np.isfinite(x), x, self.d + 1)
        wl, wr = self.b - self.a, self.d - self.c
        left = _smooth_step_jet((xf - self.a) / wl, d)
        right = _smooth_step_jet((self.d - xf) / wr, d)
        # Leibniz rule, with the chain-rule factors of the two affine maps
        out = np.zeros_like(xf)
        for j in range(d + 1):
            out = out + math.comb(d, j) * left[j] / wl**j * right[d - j] * (-1 / wr) ** (d - j)
        return out

    def sup(self) -> float:
        return 1.0

    def envelope(self, r: float) -> float:
        return 0.0 if r >= max(abs(self.a), abs(self.d)) else 1.0

    def spec(self) -> str:
        return f"plateau:{self.a:g},{self.b:g},{self.c:g},{self.d:g}"


def evaluate_test_function(g: SchwartzTestFunction, x: float, d: int = 0) -> float:
    return float(g.derivative(np.array([float(x)]), d)[0])


def parse_test_function(text: str) -> SchwartzTestFunction:
    """``gaussian``, ``gaussian:c,w``, ``hermite:k`` or ``bump:a,b``."""
    name, _, args = text.strip().partition(":")
    vals = [float(v) for v in args.split(",")] if args else []
    name = name.lower()
    if name == "gaussian":
        return Gaussian(*vals)
    if name == "hermite":
        if len(vals) != 1 or vals[0] != int(vals[0]):
            raise ValueError("hermite needs one integer order, e.g. hermite:2")
        return HermiteGaussian(int(vals[0]))
    if name == "bump":
        if len(vals) != 2:
            raise ValueError("bump needs its support, e.g. bump:0,1")
        return Bump(*vals)
    raise ValueError(f"unknown test function {text!r}")

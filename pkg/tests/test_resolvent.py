import csv
import json
import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from compspec.dynamics import SampleGrid
from compspec.errors import BracketError, DivergenceError, GridError, HypothesisError
from compspec.polycore import parse
from compspec.resolvent import (
    Bump,
    Gaussian,
    GridFunction,
    HermiteGaussian,
    Plateau,
    evaluate_test_function,
    inverse_orbit,
    parse_test_function,
    residual,
    resolvent_apply,
    spectral_witness,
)
from compspec.spectrum import Membership

X = sympy.Symbol("x")
GRID = SampleGrid(-10, 10, 801)
FINE = SampleGrid(-10, 10, 1601)


def sympy_oracle(g, near=None):
    """The same test function written out symbolically."""
    if isinstance(g, Bump):
        a, b = sympy.Rational(str(g.a)), sympy.Rational(str(g.b))
        return sympy.exp(-1 / ((X - a) * (b - X)) + 4 / (b - a) ** 2)
    if isinstance(g, HermiteGaussian):
        u = (X - sympy.Rational(str(g.center))) / sympy.Rational(str(g.width))
        return sympy.hermite(g.order, u) * sympy.exp(-(u**2))
    step = lambda t: sympy.exp(-1 / t) / (sympy.exp(-1 / t) + sympy.exp(-1 / (1 - t)))  # noqa: E731
    # the logistic form of the step is only valid inside its transition
    a, b, c, d = (sympy.Rational(str(v)) for v in (g.a, g.b, g.c, g.d))
    if near < g.b:
        return step((X - a) / (b - a))
    if near > g.c:
        return step((d - X) / (d - c))
    return sympy.Integer(1)


class TestTestFunctions:
    def test_examples(self):
        assert evaluate_test_function(Gaussian(0, 1), 0) == 1
        assert evaluate_test_function(Gaussian(0, 1), 0, 2) == pytest.approx(-2, abs=1e-15)
        assert evaluate_test_function(Bump(0, 1), 0.5) == pytest.approx(1, abs=1e-15)

    @pytest.mark.parametrize(
        "g,points",
        [
            (Gaussian(0.5, 2.0), [-1.3, 0.0, 0.5, 2.7]),
            (HermiteGaussian(3), [-1.1, 0.2, 1.9]),
            (Bump(0, 1), [0.05, 0.3, 0.5, 0.9]),
            (Bump(-2, 3), [-1.5, 0.5, 2.5]),
        ],
    )
    def test_derivatives_match_symbolic(self, g, points):
        expr = sympy_oracle(g)
        for d in range(5):
            dexpr = sympy.diff(expr, X, d)
            for x in points:
                exact = float(dexpr.subs(X, sympy.Rational(str(x))))
                got = evaluate_test_function(g, x, d)
                assert got == pytest.approx(exact, rel=1e-10, abs=1e-12)

    def test_plateau_derivatives_where_the_steps_are_nearly_flat(self):
        # points close to the ends of each transition exercise the reflection
        g = Plateau(0, 1, 2, 3.5)
        for x in (0.02, 0.3, 0.8, 0.97, 1.5, 2.2, 3.4):
            expr = sympy_oracle(g, x)
            for d in range(5):
                exact = float(sympy.diff(expr, X, d).subs(X, sympy.Rational(str(x))))
                assert evaluate_test_function(g, x, d) == pytest.approx(exact, rel=1e-10, abs=1e-12)

    def test_plateau_shape(self):
        g = Plateau(0, 1, 2, 3)
        vals = g(np.array([-1.0, 0.0, 1.0, 1.5, 2.0, 3.0, 9.0, np.inf]))
        assert list(vals) == [0, 0, 1, 1, 1, 0, 0, 0]
        assert g(np.array([0.5]))[0] == pytest.approx(0.5)

    @pytest.mark.parametrize("g", [Gaussian(), Gaussian(1, 0.5), HermiteGaussian(2), Bump(-1, 2)])
    def test_envelope_bounds_tail(self, g):
        for r in (0.0, 0.5, 1.5, 3.0, 6.0):
            ys = np.concatenate([np.linspace(r, r + 20, 4001), -np.linspace(r, r + 20, 4001)])
            assert np.max(np.abs(g(ys))) <= g.envelope(r) * (1 + 1e-12)
        assert np.max(np.abs(g(np.linspace(-30, 30, 20001)))) <= g.sup() * (1 + 1e-9)

    def test_vanishes_at_infinity(self):
        for g in (Gaussian(), HermiteGaussian(4), Bump(0, 1)):
            assert list(g(np.array([np.inf, -np.inf]))) == [0, 0]

    def test_parse(self):
        assert parse_test_function("gaussian") == Gaussian()
        assert parse_test_function("gaussian:1,2") == Gaussian(1, 2)
        assert parse_test_function("hermite:2") == HermiteGaussian(2)
        assert parse_test_function("bump:0,1") == Bump(0, 1)
        for bad in ("hermite:1.5", "bump:1", "cosine"):
            with pytest.raises(ValueError):
                parse_test_function(bad)

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            Gaussian(0, 0)
        with pytest.raises(ValueError):
            Bump(1, 1)
        with pytest.raises(ValueError):
            Plateau(0, 2, 1, 3)
        with pytest.raises(ValueError):
            evaluate_test_function(Gaussian(), 0, 5)


class TestGridFunction:
    def test_validation(self):
        with pytest.raises(ValueError):
            GridFunction([0, 0, 1], [0, 0, 0])
        with pytest.raises(ValueError):
            GridFunction([0, 1], [0])

    def test_csv(self, tmp_path):
        f = GridFunction([0.0, 0.1], [1 + 2j, complex(0, -0.5)])
        path = tmp_path / "f.csv"
        f.write_csv(path)
        rows = list(csv.reader(open(path)))
        assert rows == [["x", "re", "im"], ["0", "1", "2"], ["0.10000000000000001", "0", "-0.5"]]


def direct_sum(phi_float, lam, g, xs, terms):
    """``-sum_{k < terms} lambda^(-k-1) g(phi_k(x))`` by plain iteration."""
    out = np.zeros(len(xs), dtype=complex)
    ys = xs.copy()
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(terms):
            vals = np.where(np.isfinite(ys), g(np.where(np.isfinite(ys), ys, 0.0)), 0.0)
            out -= lam ** (-k - 1) * vals
            ys = phi_float(ys)
    return out


class TestResolventSeries:
    @pytest.mark.parametrize("lam", [1, 1j, 5])
    def test_symbol_with_trivial_spectrum(self, lam):
        phi = parse("x^2 + 2")
        res = resolvent_apply(phi, lam, Gaussian(), GRID)
        assert res.m_star <= 8 and not res.inside_spectrum
        assert residual(phi, lam, res.f, Gaussian()) < 1e-8

    @pytest.mark.parametrize("lam", [1, 5])
    def test_fine_grid_reaches_1e9(self, lam):
        phi = parse("x^2 + 2")
        f, m_star = resolvent_apply(phi, lam, Gaussian(), FINE)
        assert m_star <= 8 and residual(phi, lam, f, Gaussian()) < 1e-9

    def test_translation_outside_circle(self):
        phi = parse("x + 1")
        res = resolvent_apply(phi, 2, Gaussian(), GRID)
        assert res.membership is Membership.OUT and res.rigorous_tail
        assert residual(phi, 2, res.f, Gaussian()) < 1e-8

    def test_matches_direct_summation(self):
        phi = parse("x^2 + 2")
        xs = GRID.nodes()
        f, m_star = resolvent_apply(phi, 1j, Gaussian(), xs)
        ref = direct_sum(lambda y: y * y + 2, 1j, Gaussian(), xs, 6)
        assert np.max(np.abs(f.values - ref)) < 1e-10

    def test_zero_function_residual_is_g(self):
        phi = parse("x^2 + 2")
        zero = GridFunction(GRID.nodes(), np.zeros(801))
        assert residual(phi, 1, zero, Gaussian()) == pytest.approx(1.0)
        # g vanishes on the whole grid
        assert residual(phi, 1, zero, Bump(100, 101)) == 0.0

    def test_truncated_residual_is_next_term(self):
        # f_m∘phi - lambda f_m - g = -lambda^(-m-1) g∘phi_{m+1} exactly
        phi = parse("x^2 + 1/2")
        xs = FINE.nodes()
        lam = 2.0
        for m in range(3):
            f, _ = resolvent_apply(phi, lam, Gaussian(), xs, truncate_at=m)
            ys = xs.copy()
            for _ in range(m + 1):
                ys = ys * ys + 0.5
            expected = np.max(np.abs(lam ** (-m - 1) * np.exp(-(ys**2))))
            assert residual(phi, lam, f, Gaussian(), tol=1e-6) == pytest.approx(expected, abs=1e-7)

    def test_truncation_monotone(self):
        phi = parse("x^2 + 2")
        got = []
        for m in range(6):
            f, _ = resolvent_apply(phi, 1, Gaussian(), FINE, truncate_at=m)
            got.append(residual(phi, 1, f, Gaussian()))
        assert all(b <= a + 1e-12 for a, b in zip(got, got[1:]))

    @settings(max_examples=12, deadline=None)
    @given(
        st.sampled_from(["gaussian", "hermite:1", "bump:-1,1"]),
        st.floats(1.0, 3.0),
        st.floats(0, 2 * math.pi),
        st.sampled_from(["x^2 + 1", "x^2 + 2", "x^2 + x + 1", "x + 1"]),
    )
    def test_resolvent_identity_off_spectrum(self, gspec, mod, arg, expr):
        phi = parse(expr)
        lam = complex(mod * math.cos(arg), mod * math.sin(arg))
        if expr == "x + 1" and mod < 1.2:
            lam = lam * 1.2 / mod  # keep clear of the unit circle
        g = parse_test_function(gspec)
        res = resolvent_apply(phi, lam, g, FINE)
        assert res.membership is Membership.OUT
        tol = 1e-5
        assert residual(phi, lam, res.f, g, tol=tol) <= 10 * tol

    def test_inside_spectrum_is_flagged(self):
        # the forward series still converges pointwise for a translation
        res = resolvent_apply(parse("x + 1"), 1, Gaussian(), GRID)
        assert res.inside_spectrum and res.membership is Membership.IN
        assert not res.rigorous_tail

    def test_divergence_detected(self):
        with pytest.raises(DivergenceError) as info:
            resolvent_apply(parse("x^2 + 1/4"), 0.5, Gaussian(), GRID)
        ev = info.value.evidence
        assert len(ev) > 10 and ev[-1] > 10 * ev[-11]

    def test_rejects_zero_lambda(self):
        with pytest.raises(ValueError):
            resolvent_apply(parse("x^2 + 2"), 0, Gaussian(), GRID)

    def test_coarse_grid_rejected(self):
        phi = parse("x^2 + 1/4")
        f, _ = resolvent_apply(phi, 2, Gaussian(), GRID)
        with pytest.raises(GridError, match="coarse"):
            residual(phi, 2, f, Gaussian())

    def test_leaving_grid_needs_small_edge_values(self):
        phi = parse("x^2 + 2")
        f, _ = resolvent_apply(phi, 1, Gaussian(), SampleGrid(-1, 1, 201))
        with pytest.raises(GridError, match="leaves the grid"):
            residual(phi, 1, f, Gaussian())


class TestInverseOrbit:
    def test_translation(self):
        assert inverse_orbit(parse("x + 1"), 0, 3) == [-1, -2, -3]

    def test_square_roots_toward_one(self):
        xs = inverse_orbit(parse("x^2"), 2, 5, (1, 4))
        assert xs == pytest.approx([2 ** (2.0**-k) for k in range(1, 6)], rel=1e-15)

    def test_closed_form_inverse(self):
        phi = parse("x^2 + 1/4")
        xs = inverse_orbit(phi, 0.45, 6, (0.25, 0.5))
        prev, ref = 0.45, []
        for _ in range(6):
            prev = math.sqrt(prev - 0.25)
            ref.append(prev)
        # below the fixed point 1/2 the inverse branch moves away from it
        assert xs == pytest.approx(ref, rel=1e-15)
        assert all(b < a for a, b in zip([0.45] + xs, xs))

    def test_residuals(self):
        phi = parse("x^3 - 2x + 1/3")
        x0 = 5.0
        xs = inverse_orbit(phi, x0, 8)
        for prev, cur in zip([x0] + xs, xs):
            assert abs(float(phi(cur)) - prev) < 1e-12

    def test_bracket_without_sign_change(self):
        with pytest.raises(BracketError):
            inverse_orbit(parse("x^2"), 2, 3, (2, 3))
        with pytest.raises(BracketError):
            inverse_orbit(parse("x^2 + 1"), 0, 1)


class TestSpectralWitness:
    @pytest.mark.parametrize("lam", [1, 0.5, 0.5j])
    def test_forced_values(self, lam):
        w = spectral_witness(parse("x^2 + 1/4"), lam)
        assert w.case == "a" and w.fixed_point == 0.5 and w.divergence_flag
        for m, v in enumerate(w.candidate_values):
            assert abs(v) == pytest.approx(abs(lam) ** (-m - 1), rel=1e-15)
        assert w.max_value_error() < 1e-15
        assert max(w.inverse_orbit_residuals) < 1e-12

    def test_unit_lambda_keeps_modulus_one(self):
        w = spectral_witness(parse("x^2 + 1/4"), 1)
        assert all(abs(v) == 1 for v in w.candidate_values)
        assert w.value_at_fixed_point == 0

    def test_points_approach_fixed_point(self):
        w = spectral_witness(parse("x^2 + 1/4"), 0.5)
        assert all(a > b > 0 for a, b in zip(w.y_offsets, w.y_offsets[1:]))
        assert all(a > b > w.fixed_point for a, b in zip(w.x, w.x[1:]))
        assert all(w.x[k + 1] < w.y[k] < w.x[k] for k in range(len(w.y)))

    def test_recurrence_and_plateau_values(self):
        w = spectral_witness(parse("x^2 - 2"), 0.5j)
        assert w.plateau_at_y == (1.0,) + (0.0,) * 12
        assert max(abs(r) for r in w.recurrence_residuals) < 1e-12

    def test_matches_floating_forward_orbit(self):
        # for a neutral fixed point forward iteration of y_m is accurate enough
        # to land back in J_0, giving an independent evaluation of the series
        phi = parse("x^2 + 1/4")
        lam = 0.5j
        w = spectral_witness(phi, lam)
        g = w.test_function
        ys = np.array(w.y)
        ref = direct_sum(lambda y: y * y + 0.25, lam, g, ys, 40)
        assert np.max(np.abs(ref - np.array(w.candidate_values))) == 0

    @pytest.mark.parametrize(
        "expr,case,steps",
        [("-x^2 + 1", "b_i", 1), ("-x^3", "b_ii", 2), ("-x^3 + x - 1", "b_ii", 2), ("-x^5 + 3x", "b_ii", 2)],
    )
    def test_reversed_orientation(self, expr, case, steps):
        lam = 0.5
        w = spectral_witness(parse(expr), lam)
        assert (w.case, w.steps) == (case, steps)
        for m, v in enumerate(w.candidate_values):
            assert v == pytest.approx(-(lam ** (-steps * m - 1)), rel=1e-15)
        assert max(abs(r) for r in w.recurrence_residuals) < 1e-9

    def test_reflected_points_in_original_coordinates(self):
        phi = parse("-x^2 + 1")
        w = spectral_witness(phi, 1)
        assert float(phi(w.fixed_point)) == pytest.approx(w.fixed_point)
        assert w.fixed_point == pytest.approx(-(1 + math.sqrt(5)) / 2)
        assert all(abs(float(phi(w.y[k])) - w.y[k - 1]) < 1e-12 for k in range(1, len(w.y)))

    def test_errors(self):
        with pytest.raises(HypothesisError, match="no real fixed point"):
            spectral_witness(parse("x^2 + 2"), 0.5)
        with pytest.raises(HypothesisError):
            spectral_witness(parse("2x"), 0.5)
        with pytest.raises(ValueError):
            spectral_witness(parse("x^2"), 2)

    def test_json(self):
        w = spectral_witness(parse("x^2 + 1/4"), 0.5)
        data = json.loads(w.to_json())
        assert data["lambda"] == [0.5, 0.0] and data["divergence_flag"] is True
        assert data["candidate_values"][2] == [-8.0, 0.0]
        assert len(data["y"]) == 13

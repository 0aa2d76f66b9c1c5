from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings

from compspec.classify import fixed_points, is_mean_ergodic
from compspec.errors import MetadataError, UnsupportedCaseError
from compspec.polycore import LinearMap, Poly, iterate, linear_conjugate, parse
from compspec.spectrum import (
    Annulus,
    ClosedDiscMinusOrigin,
    ClosedUnitDisc,
    FinitePoints,
    FullPlane,
    Membership,
    MonotoneMeta,
    OriginOnly,
    PlaneMinusOrigin,
    Provenance as P,
    SpectrumDescriptor,
    Status,
    UnitCircle,
    contains,
    covers,
    monotone_containments,
    monotone_containments_tagged,
    power_image,
    spectral_map_iterate,
    spectrum_of,
    union,
    zero_in_spectrum,
)

from conftest import polys
from oracles import random_linear_map, random_symbol

GOLDEN = [
    ("x + 1", UnitCircle(), {P.DEGREE_ONE, P.EXAMPLE_1A}),
    ("2x", PlaneMinusOrigin(), {P.DEGREE_ONE, P.EXAMPLE_1B}),
    ("-x", FinitePoints([-1, 1]), {P.DEGREE_ONE}),
    ("x^2 + 1", OriginOnly(), {P.WITHOUT_FIXED_POINTS, P.GRAU2A}),
    ("x^2 + x", ClosedUnitDisc(), {P.GRAU2B}),
    ("x^2", FullPlane(), {P.GRAU2C}),
    ("x^2 + 1/4", ClosedUnitDisc(), {P.GRAU2B}),
    ("x + x^3", ClosedDiscMinusOrigin(), {P.CUBIC_POSITIVE}),
    ("x^3", FullPlane(), {P.CUBIC_POSITIVE, P.ELEMENTARY_C}),
    ("-x^3 - x", ClosedDiscMinusOrigin(), {P.NEGATIVE_ODD_A}),
    ("-x^3 - 2x", PlaneMinusOrigin(), {P.NEGATIVE_ODD_B}),
    ("-x^3", FullPlane(), {P.NEGATIVE_ODD_C}),
]


class TestSpectrumOf:
    @pytest.mark.parametrize("expr,expected,tags", GOLDEN)
    def test_golden(self, expr, expected, tags):
        d = spectrum_of(parse(expr))
        assert d.status is Status.EXACT
        assert d.set == expected
        assert set(d.provenance) == tags

    def test_negative_cubic_with_constant_term(self):
        d = spectrum_of(parse("-x^3 + x - 1"))
        assert d.status is Status.PARTIAL
        assert covers(d.lower, ClosedDiscMinusOrigin())
        # the negation has three distinct real fixed points, giving the
        # punctured plane; phi' = 1 - 3x^2 vanishes, so the origin joins too
        assert d.lower == FullPlane() and d.upper == FullPlane()
        assert P.NEGATIVE_CUBIC_THREE_FP in d.provenance

    def test_negative_cubic_unresolved(self):
        # -x^3 - x + 1: depressed form has a single real fixed point for the negation
        d = spectrum_of(parse("-x^3 - x + 1"))
        assert d.status is Status.PARTIAL
        assert covers(d.lower, ClosedDiscMinusOrigin())
        assert P.NEGATIVE_CUBIC_THREE_FP not in d.provenance

    def test_identity_and_constants(self):
        d = spectrum_of(Poly.x())
        assert d.is_exact and d.set == FinitePoints([1]) and d.provenance == (P.IDENTITY,)
        with pytest.raises(UnsupportedCaseError):
            spectrum_of(Poly.constant(3))

    def test_even_degree_without_fixed_points(self):
        d = spectrum_of(parse("x^4 + 1"))
        assert d.is_exact and d.set == OriginOnly()
        assert d.provenance == (P.WITHOUT_FIXED_POINTS,)

    def test_quartic_upgraded_by_simple_fixed_point(self):
        # x^4 - 2: largest fixed point has phi' > 1 and all higher derivatives >= 0 there
        d = spectrum_of(parse("x^4 - 2"))
        assert d.status is Status.PARTIAL
        assert d.lower == FullPlane() == d.upper
        assert P.SIMPLE_FIXED_POINT in d.provenance

    def test_quintic_without_critical_point(self):
        d = spectrum_of(parse("x^5 + x"))
        # fixed point only at 0 with phi'(0) = 1, multiplicity 5
        assert d.status is Status.PARTIAL
        assert covers(d.lower, ClosedDiscMinusOrigin())
        assert contains(d, 0) is Membership.OUT

    def test_expanding_slopes_enter_lower_bound(self):
        # degree 5, negative lead: criteria may fail, but repelling slopes are certified
        phi = parse("-x^5 + 3x")
        d = spectrum_of(phi)
        for rec in fixed_points(phi):
            assert covers(d.known_subset(), FinitePoints([rec.slope]))

    def test_partial_rejects_inconsistent_bounds(self):
        with pytest.raises(ValueError):
            SpectrumDescriptor.partial(FullPlane(), ClosedUnitDisc())


class TestContains:
    def test_examples(self):
        assert contains(SpectrumDescriptor.exact(ClosedUnitDisc()), 1) is Membership.IN
        assert contains(SpectrumDescriptor.exact(OriginOnly()), F(1, 2)) is Membership.OUT
        assert contains(SpectrumDescriptor.exact(ClosedDiscMinusOrigin()), 0) is Membership.OUT

    def test_complex_points(self):
        d = SpectrumDescriptor.exact(UnitCircle())
        assert contains(d, F(3, 5), F(4, 5)) is Membership.IN
        assert contains(d, F(3, 5), F(3, 5)) is Membership.OUT

    def test_partial_three_valued(self):
        d = SpectrumDescriptor.partial(ClosedDiscMinusOrigin(), PlaneMinusOrigin())
        assert contains(d, F(1, 2)) is Membership.IN
        assert contains(d, 0) is Membership.OUT
        assert contains(d, 3) is Membership.UNKNOWN
        d = SpectrumDescriptor.partial(ClosedDiscMinusOrigin(), None)
        assert contains(d, 0) is Membership.UNKNOWN

    @settings(max_examples=60, deadline=None)
    @given(polys(3, min_degree=1))
    def test_exact_never_unknown(self, p):
        if p == Poly.x():
            return
        d = spectrum_of(p)
        if d.is_exact:
            for lam in (F(0), F(1, 2), F(1), F(-1), F(7, 3)):
                assert contains(d, lam) is not Membership.UNKNOWN


class TestZeroInSpectrum:
    def test_examples(self):
        assert zero_in_spectrum(parse("x^2 + 1/4"))
        assert not zero_in_spectrum(parse("x + x^3"))
        assert not zero_in_spectrum(parse("2x"))


class TestSpectralMapping:
    def test_examples(self):
        assert spectral_map_iterate(parse("x + 1"), 3).set == UnitCircle()
        assert spectral_map_iterate(parse("x^2 + 1"), 2).set == OriginOnly()
        d = spectral_map_iterate(parse("-x"), 2)
        assert d.set == FinitePoints([1])
        assert d.set == spectrum_of(iterate(parse("-x"), 2)).set

    def test_partial_input(self):
        d = spectral_map_iterate(parse("-x^3 - x + 1"), 2)
        assert d.status is Status.PARTIAL and d.upper is None
        assert P.SPECTRAL_MAPPING in d.provenance

    def test_power_image_shapes(self):
        assert power_image(Annulus(F(1, 2), 1, True, False), 2) == Annulus(F(1, 4), 1, True, False)
        assert power_image(FinitePoints([-2, 3]), 2) == FinitePoints([4, 9])
        assert power_image(ClosedDiscMinusOrigin(), 5) == ClosedDiscMinusOrigin()

    def test_irrational_point_powers(self):
        pts = [r.slope for r in fixed_points(parse("x^2 - 1"))]  # 1 ± sqrt 5
        img = power_image(FinitePoints(pts), 2)
        vals = sorted(float(p) for p in img.points)
        assert np.allclose(vals, sorted([(1 - 5**0.5) ** 2, (1 + 5**0.5) ** 2]))

    def test_degree_one_matches_direct_iterate(self, rng):
        from oracles import random_fraction

        for _ in range(60):
            a = random_fraction(rng, 3)
            if a == 0:
                continue
            phi = Poly((random_fraction(rng, 3), a))
            if phi == Poly.x():
                continue
            for n in (1, 2, 3):
                direct = iterate(phi, n)
                if direct == Poly.x():
                    assert spectral_map_iterate(phi, n).set == FinitePoints([1])
                    continue
                assert spectral_map_iterate(phi, n).set == spectrum_of(direct).set


class TestProperties:
    def test_conjugation_invariance(self, rng):
        for _ in range(40):
            phi = random_symbol(rng)
            d = spectrum_of(phi)
            for _ in range(3):
                ell = random_linear_map(rng)
                e = spectrum_of(linear_conjugate(phi, ell))
                assert (e.status, e.set, e.lower, e.upper) == (d.status, d.set, d.lower, d.upper)

    def test_elementary_consistency(self, rng):
        symbols = [parse(e) for e, _, _ in GOLDEN] + [random_symbol(rng) for _ in range(60)]
        for phi in symbols:
            d = spectrum_of(phi)
            recs = fixed_points(phi) if phi.degree >= 1 else []
            if recs:
                assert contains(d, 1) is Membership.IN
            for rec in recs:
                if rec.slope.is_rational():
                    assert contains(d, rec.slope.as_fraction()) is Membership.IN
            assert (contains(d, 0) is Membership.IN) == zero_in_spectrum(phi)

    def test_mean_ergodic_iff_origin_only(self, rng):
        for _ in range(80):
            phi = random_symbol(rng, degrees=(2, 3, 4))
            d = spectrum_of(phi)
            assert is_mean_ergodic(phi) == (d.is_exact and d.set == OriginOnly())

    @pytest.mark.parametrize(
        "delta,expected",
        [(F(-1, 10**6), FullPlane()), (F(0), ClosedUnitDisc()), (F(1, 10**6), OriginOnly())],
    )
    def test_quadratic_boundary(self, delta, expected):
        phi = Poly((F(1, 4) + delta, 0, 1))
        assert spectrum_of(phi).set == expected

    @settings(max_examples=40, deadline=None)
    @given(polys(3, min_degree=2))
    def test_conjugation_invariance_hypothesis(self, p):
        d = spectrum_of(p)
        e = spectrum_of(linear_conjugate(p, LinearMap(F(-3, 2), F(1, 3))))
        assert (e.status, e.set, e.lower, e.upper) == (d.status, d.set, d.lower, d.upper)

    @settings(max_examples=40, deadline=None)
    @given(polys(4, min_degree=2))
    def test_partial_bounds_nested(self, p):
        d = spectrum_of(p)
        if not d.is_exact:
            assert covers(d.lower, ClosedDiscMinusOrigin())
            if d.upper is not None:
                assert covers(d.upper, d.lower)


class TestSets:
    def test_union_normalisation(self):
        assert union(PlaneMinusOrigin(), OriginOnly()) == FullPlane()
        assert union(ClosedDiscMinusOrigin(), OriginOnly()) == ClosedUnitDisc()
        assert union(UnitCircle(), ClosedUnitDisc()) == ClosedUnitDisc()
        assert union(UnitCircle(), Annulus(F(1, 2), 1, False, False)) == Annulus(F(1, 2), 1, False, True)
        assert union(FinitePoints([F(1, 2)]), ClosedUnitDisc()) == ClosedUnitDisc()
        assert union(FinitePoints([0])) == OriginOnly()

    def test_annulus_membership(self):
        a = Annulus(1, 3, True, False)
        assert a.contains(F(1), F(0)) and not a.contains(F(3), F(0))
        assert a.contains(F(0), F(2)) and not a.contains(F(1, 2), F(0))

    def test_annulus_validation(self):
        with pytest.raises(ValueError):
            Annulus(2, 1, True, True)

    def test_covers(self):
        assert covers(FullPlane(), UnitCircle())
        assert covers(ClosedUnitDisc(), Annulus(F(1, 2), 1, False, True))
        assert not covers(ClosedDiscMinusOrigin(), OriginOnly())
        assert not covers(UnitCircle(), FinitePoints([2]))

    @settings(max_examples=80, deadline=None)
    @given(polys(0, min_degree=0), polys(0, min_degree=0))
    def test_union_membership_agrees(self, a, b):
        x, y = a[0], b[0]
        parts = [UnitCircle(), Annulus(F(1, 3), F(1, 2), True, False), FinitePoints([F(2)])]
        u = union(*parts)
        assert u.contains(x, y) == any(s.contains(x, y) for s in parts)


class TestMonotone:
    def test_examples(self):
        s = monotone_containments(MonotoneMeta(True, fixed_points=[(0, F(1, 2))]))
        assert s == Annulus(F(1, 2), 1, False, True)
        assert monotone_containments(MonotoneMeta(True, fixed_points=[(0, 0)])) == ClosedUnitDisc()
        assert monotone_containments(
            MonotoneMeta(False, involution=True, fixed_points=[(0, -1)])
        ) == FinitePoints([-1, 1])

    def test_repelling_and_decreasing(self):
        s, tags = monotone_containments_tagged(MonotoneMeta(True, fixed_points=[(0, 3)]))
        assert s == Annulus(1, 3, True, False)
        assert tags == (P.INCREASING, P.ANILLO_2)
        s, tags = monotone_containments_tagged(MonotoneMeta(False, fixed_points=[(0, -2)]))
        assert s == UnitCircle() and tags == (P.CIRCLE_DECREASING,)

    def test_no_fixed_point_increasing(self):
        assert monotone_containments(MonotoneMeta(True)) == UnitCircle()

    @pytest.mark.parametrize(
        "meta",
        [
            MonotoneMeta(False, fixed_points=[(0, -1), (1, -2)]),
            MonotoneMeta(False),
            MonotoneMeta(True, involution=True),
            MonotoneMeta(True, fixed_points=[(0, F(1, 2)), (0, 2)]),
            MonotoneMeta(False, fixed_points=[(0, 2)]),
            MonotoneMeta(False, involution=True, fixed_points=[(0, F(-1, 2))]),
            MonotoneMeta(False, identity=True),
        ],
    )
    def test_inconsistent_metadata(self, meta):
        with pytest.raises(MetadataError):
            monotone_containments(meta)

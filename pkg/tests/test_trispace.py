"""Tests for the triangle parameter space: reduction, rebasing, weights."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricurves.lattice import QPolygon
from tricurves.trispace import (
    Degenerate,
    GroupElement,
    SlopePair,
    SlopeTriangle,
    WppWeights,
    edge_rebasings,
    minimal_triangle,
    slopes_of_wpp,
    to_fundamental_domain,
    wpp_of_slopes,
)


def reduce_class(p):
    """Fundamental-domain representative, with all degenerate orbits merged."""
    rep, _ = to_fundamental_domain(p)
    if isinstance(rep, Degenerate):
        return "degenerate"
    return (rep.s, rep.t)


class TestSlopePair:
    def test_uv(self):
        p = SlopePair(Fraction(9, 4), Fraction(7, 2))
        assert (p.u, p.v) == (Fraction(4, 9), Fraction(2, 7))

    def test_equal_slopes_rejected(self):
        with pytest.raises(ValueError):
            SlopePair(2, 2)

    def test_zero_slope_rejected(self):
        with pytest.raises(ValueError):
            SlopePair(0, 1)

    def test_domain_membership(self):
        assert SlopePair(3, 4).in_fundamental_domain()
        assert not SlopePair(Fraction(1, 2), 3).in_fundamental_domain()


class TestReduction:
    def test_interior_point_fixed(self):
        rep, elem = to_fundamental_domain(SlopePair(3, 4))
        assert rep == SlopePair(3, 4)
        assert elem == GroupElement(False, False, 0)

    def test_boundary_point_fixed(self):
        rep, _ = to_fundamental_domain(SlopePair(Fraction(3, 2), 3))
        assert rep == SlopePair(Fraction(3, 2), 3)

    def test_shear_orbit(self):
        # (u,v) = (1/3,1/4) shifted by 2 gives (u,v) = (7/3,9/4).
        rep, elem = to_fundamental_domain(
            SlopePair(Fraction(3, 7), Fraction(4, 9)))
        assert rep == SlopePair(3, 4)
        assert elem.shift == -2

    def test_infinite_slope_orbit(self):
        rep, _ = to_fundamental_domain(SlopePair(1, 2))
        assert isinstance(rep, Degenerate)
        assert "infinite" in rep.reason

    def test_mixed_region_orbit(self):
        rep, _ = to_fundamental_domain(
            SlopePair(Fraction(1, 10), Fraction(1, 2)))
        assert isinstance(rep, Degenerate)

    def test_mixed_sign_input_rejected(self):
        with pytest.raises(ValueError):
            to_fundamental_domain(SlopePair(-1, 2))


uv_st = st.builds(Fraction, st.integers(1, 60), st.integers(1, 12))


class TestReductionProperties:
    @given(uv_st, uv_st)
    @settings(max_examples=300, deadline=None)
    def test_idempotent(self, s, t):
        if s == t:
            return
        rep, _ = to_fundamental_domain(SlopePair(s, t))
        if isinstance(rep, Degenerate):
            return
        assert rep.in_fundamental_domain()
        again, elem = to_fundamental_domain(rep)
        assert again == rep
        assert elem == GroupElement(False, False, 0)

    @given(uv_st, uv_st, st.booleans(), st.booleans(), st.integers(-4, 4))
    @settings(max_examples=300, deadline=None)
    def test_constant_on_orbits(self, s, t, swap, negate, shift):
        if s == t:
            return
        p = SlopePair(s, t)
        u, v = GroupElement(swap, negate, shift).apply(p.u, p.v)
        if u == 0 or v == 0 or u == v:
            return
        q = SlopePair(1 / u, 1 / v)
        if (q.s > 0) != (q.t > 0):
            return
        assert reduce_class(p) == reduce_class(q)

    @given(uv_st, uv_st)
    @settings(max_examples=200, deadline=None)
    def test_group_element_witnesses(self, s, t):
        if s == t:
            return
        p = SlopePair(s, t)
        rep, elem = to_fundamental_domain(p)
        u, v = elem.apply(p.u, p.v)
        if isinstance(rep, Degenerate):
            if "infinite" in rep.reason:
                assert v == 0
            return
        assert (u, v) == (rep.u, rep.v)


class TestRebasing:
    def test_integer_triangle(self):
        r = edge_rebasings(SlopePair(3, 4))
        assert r["base"] == SlopePair(3, 4)
        assert r["right"] == SlopePair(1, 4)
        assert isinstance(r["left"], Degenerate)

    def test_base_identity_on_domain(self):
        for p in (SlopePair(3, 4), SlopePair(Fraction(9, 4), Fraction(7, 2)),
                  SlopePair(Fraction(5, 3), Fraction(10, 3))):
            assert edge_rebasings(p)["base"] == p

    def test_three_presentations_of_p7_9_10(self):
        # The three rebasings of (9/4, 7/2) give one representative per
        # choice of horizontal edge weight of P(7,9,10); they are pairwise
        # distinct.
        r = edge_rebasings(SlopePair(Fraction(9, 4), Fraction(7, 2)))
        got = {(v.s, v.t) for v in r.values()}
        assert got == {
            (Fraction(9, 4), Fraction(7, 2)),
            (Fraction(10, 3), Fraction(9, 2)),
            (Fraction(7, 3), Fraction(10, 3)),
        }

    def test_left_rebase_family(self):
        # Rebasing the left edge of (5/2, t) gives (5/3, 2 + 1/(t-3)).
        for n in range(2, 7):
            t = 3 + Fraction(1, n)
            got = edge_rebasings(SlopePair(Fraction(5, 2), t))["left"]
            assert got == SlopePair(Fraction(5, 3), 2 + 1 / (t - 3))

    def test_integer_t_symmetry(self):
        # For t = K integral and K/2 <= s < K the right rebasing is the
        # triangle with slopes (K - s, K), up to lattice equivalence.
        rng = random.Random(7)
        for _ in range(60):
            K = rng.randrange(3, 9)
            num = rng.randrange(1, 60)
            den = rng.randrange(1, 12)
            s = Fraction(num, den)
            if not (Fraction(K, 2) <= s < K) or s == K:
                continue
            got = edge_rebasings(SlopePair(s, K))["right"]
            want = SlopePair(K - s, K)
            if isinstance(got, Degenerate):
                assert reduce_class(want) == "degenerate"
            else:
                assert reduce_class(got) == reduce_class(want)

    def test_rebasing_lands_in_same_wpp(self):
        # All non-degenerate rebasings of a weighted-projective-plane
        # triangle describe the same plane.
        p = SlopePair(Fraction(9, 4), Fraction(7, 2))
        weights = wpp_of_slopes(p).sorted()
        for q in edge_rebasings(p).values():
            assert wpp_of_slopes(q).sorted() == weights


class TestWpp:
    def test_p8_15_43(self):
        w = wpp_of_slopes(SlopePair(Fraction(8, 5), Fraction(15, 4)))
        assert w.sorted() == (8, 15, 43)

    def test_p5_33_49(self):
        w = wpp_of_slopes(SlopePair(Fraction(5, 3), Fraction(33, 10)))
        assert w.sorted() == (5, 33, 49)

    def test_quotient_returns_none(self):
        assert wpp_of_slopes(SlopePair(2, 4)) is None

    def test_slopes_of_p3_5_7(self):
        reps = [r for r in slopes_of_wpp(WppWeights(3, 5, 7))
                if not isinstance(r, Degenerate)]
        assert SlopePair(Fraction(3, 2), 5) in reps

    def test_slopes_of_p7_9_10(self):
        reps = {(r.s, r.t) for r in slopes_of_wpp(WppWeights(7, 9, 10))
                if not isinstance(r, Degenerate)}
        assert reps == {
            (Fraction(9, 4), Fraction(7, 2)),
            (Fraction(10, 3), Fraction(9, 2)),
            (Fraction(7, 3), Fraction(10, 3)),
        }

    def test_non_coprime_rejected(self):
        with pytest.raises(ValueError):
            slopes_of_wpp(WppWeights(2, 4, 5))

    def test_invalid_weights_rejected(self):
        with pytest.raises(ValueError):
            WppWeights(0, 1, 2)
        with pytest.raises(ValueError):
            WppWeights(2, 4, 6)

    def test_round_trip_random_coprime_triples(self):
        rng = random.Random(20240817)
        checked = 0
        while checked < 200:
            triple = sorted(rng.randrange(1, 60) for _ in range(3))
            a, b, c = triple
            if (math.gcd(a, b) != 1 or math.gcd(a, c) != 1
                    or math.gcd(b, c) != 1):
                continue
            checked += 1
            w = WppWeights(a, b, c)
            reps = [r for r in slopes_of_wpp(w)
                    if not isinstance(r, Degenerate)]
            for rep in reps:
                back = wpp_of_slopes(rep)
                assert back is not None and back.sorted() == (a, b, c)


class TestMinimalTriangle:
    def test_unit_segment(self):
        tri = minimal_triangle([(0, 0), (0, 1)], SlopePair(2, 4))
        assert tri.vertices == (
            (Fraction(-1, 2), Fraction(0)),
            (Fraction(0), Fraction(0)),
            (Fraction(1, 2), Fraction(2)),
        )
        assert tri.area() == Fraction(1, 2)

    def test_newton_triangle_support(self):
        pts = [(0, 0), (1, 0), (1, 1), (2, 3)]
        tri = minimal_triangle(pts, SlopePair(Fraction(3, 2), 3))
        assert tri.vertices == (
            (Fraction(0), Fraction(0)),
            (Fraction(1), Fraction(0)),
            (Fraction(2), Fraction(3)),
        )

    def test_accepts_polygon(self):
        poly = QPolygon([(0, 0), (1, 0), (2, 3)])
        tri = minimal_triangle(poly, SlopePair(Fraction(3, 2), 3))
        assert tri.area() == Fraction(3, 2)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            minimal_triangle([], SlopePair(1, 2))

    @given(st.lists(st.tuples(st.integers(-8, 8), st.integers(-8, 8)),
                    min_size=1, max_size=8),
           uv_st, uv_st)
    @settings(max_examples=250, deadline=None)
    def test_containment_and_tightness(self, pts, s, t):
        if not (0 < s < t):
            return
        p = SlopePair(s, t)
        tri = minimal_triangle(pts, p)
        poly = tri.polygon()
        u, v = p.u, p.v
        for x, y in pts:
            assert poly.contains((x, y))
        # each support line is tight
        alphas = [x - y * u for x, y in pts]
        betas = [x - y * v for x, y in pts]
        bl, br, apex = tri.vertices
        assert min(alphas) == bl[0] - bl[1] * u
        assert max(betas) == br[0] - br[1] * v
        assert min(y for _, y in pts) == bl[1]


class TestSlopeTriangle:
    def test_from_slopes(self):
        tri = SlopeTriangle.from_slopes(SlopePair(3, 4))
        assert tri.vertices[2] == (Fraction(4), Fraction(12))
        assert tri.area() == 6

    def test_from_vertices(self):
        tri = SlopeTriangle.from_vertices((0, 0), (1, 0), (2, 3))
        assert tri.slopes == SlopePair(Fraction(3, 2), 3)
        assert tri.vertex_integral == (True, True, True)

    def test_non_horizontal_base_rejected(self):
        with pytest.raises(ValueError):
            SlopeTriangle.from_vertices((0, 0), (1, 1), (2, 3))

import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from windbound.curve import (
    ClosedCurve,
    DegenerateCurveError,
    Interval,
    Partition,
    concat,
    interpolate,
    p_variation,
    uniform_partition,
)
from windbound.families import regular_polygon_vertices
from windbound.geom import GeometryError, Point
from windbound.winding import winding_at

from conftest import pt
from oracles import brute_force_pvar, on_curve, random_integer_polygon, random_off_curve_point

small = st.integers(-6, 6)


@st.composite
def polygons(draw, min_size=3, max_size=9):
    verts = draw(st.lists(st.tuples(small, small), min_size=min_size, max_size=max_size))
    # drop consecutive repeats, including the wrap-around
    out = []
    for v in verts:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[-1] == out[0]:
        out.pop()
    assume(len(out) >= 3)
    return ClosedCurve(out)


p_values = st.sampled_from([1.0, 1.1, 1.3, 1.5, 1.7, 1.9, 1.99])


class TestClosedCurve:
    def test_rejects_zero_length_edge(self):
        with pytest.raises(GeometryError):
            ClosedCurve([(0, 0), (1, 0), (1, 0), (0, 1)])

    def test_rejects_closing_repeat(self):
        with pytest.raises(GeometryError):
            ClosedCurve([(0, 0), (1, 0), (0, 1), (0, 0)])

    def test_needs_three_vertices(self):
        with pytest.raises(DegenerateCurveError):
            ClosedCurve([(0, 0), (1, 0)])

    def test_int_coords(self):
        c = ClosedCurve([(F(1, 2), 0), (1, F(1, 3)), (0, 1)])
        ic = c.int_coords
        assert ic.denom == 6
        assert ic.xs == (3, 6, 0) and ic.ys == (0, 2, 6)


class TestInterpolate:
    def test_identity(self, square):
        assert interpolate(square, Partition.full(square)) == square

    def test_two_point_square_is_degenerate(self, square):
        with pytest.raises(DegenerateCurveError):
            interpolate(square, Partition((0, 2, 4), 4))

    def test_hexagon_alternate_vertices(self):
        hexagon = ClosedCurve(regular_polygon_vertices(6))
        tri = interpolate(hexagon, Partition((0, 2, 4, 6), 6))
        assert tri.vertices == (hexagon[0], hexagon[2], hexagon[4])

    def test_collapses_repeats(self):
        c = ClosedCurve([(0, 0), (1, 0), (0, 0), (0, 1), (1, 1)])
        # picks 0, 2, 3, 4 -> (0,0), (0,0), (0,1), (1,1) -> repeat collapsed
        out = interpolate(c, Partition((0, 2, 3, 4, 5), 5))
        assert out.vertices == (pt(0, 0), pt(0, 1), pt(1, 1))

    def test_bad_partition(self, square):
        with pytest.raises(ValueError):
            Partition((0, 2, 2, 4), 4)
        with pytest.raises(ValueError):
            Partition((1, 4), 4)


class TestUniformPartition:
    def test_full(self, square):
        assert uniform_partition(4, square).indices == (0, 1, 2, 3, 4)

    def test_square_midpoint(self, square):
        assert uniform_partition(2, square).indices == (0, 2, 4)

    def test_hexagon_thirds(self, hexagon):
        assert uniform_partition(3, hexagon).indices == (0, 2, 4, 6)

    def test_ties_go_low(self):
        tri = ClosedCurve([(0, 0), (1, 0), (0, 1)])
        # i/2 * 3 = 1.5 -> 1
        assert uniform_partition(2, tri).indices == (0, 1, 3)

    def test_oversampling_dedupes(self, square):
        assert uniform_partition(9, square).indices == (0, 1, 2, 3, 4)


class TestPVariation:
    def test_square_p1_is_perimeter(self, square):
        assert p_variation(square, 1.0) == 4.0

    def test_square_p2_by_brute_force(self, square):
        # p = 2 lies outside the supported range; the oracle alone gives 2
        assert brute_force_pvar(square, 2.0) == pytest.approx(2.0, rel=1e-15)
        with pytest.raises(ValueError):
            p_variation(square, 2.0)
        assert p_variation(square, 1.999999) == pytest.approx(2.0, rel=1e-5)

    @pytest.mark.parametrize("p", [1.0, 1.2, 1.5, 1.9])
    def test_straight_run_gives_chord(self, p):
        c = ClosedCurve([(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (5, 0), (2, 3)])
        assert p_variation(c, p, Interval(0, 5)) == pytest.approx(5.0, rel=1e-14)

    @pytest.mark.parametrize("p", [0.5, 2.0, 3.0])
    def test_p_range(self, square, p):
        with pytest.raises(ValueError):
            p_variation(square, p)

    def test_interval_out_of_range(self, square):
        with pytest.raises(ValueError):
            p_variation(square, 1.5, Interval(0, 5))

    @settings(max_examples=60, deadline=None)
    @given(polygons(max_size=8), p_values)
    def test_matches_brute_force(self, curve, p):
        assert p_variation(curve, p) == brute_force_pvar(curve, p)

    @settings(max_examples=60, deadline=None)
    @given(polygons(max_size=8), p_values, st.data())
    def test_interval_matches_brute_force(self, curve, p, data):
        n = len(curve)
        lo = data.draw(st.integers(0, n - 1))
        hi = data.draw(st.integers(lo + 1, n))
        assert p_variation(curve, p, Interval(lo, hi)) == brute_force_pvar(curve, p, lo, hi)

    @settings(max_examples=60, deadline=None)
    @given(polygons(), p_values, st.randoms(use_true_random=False))
    def test_monotone_under_refinement(self, curve, p, rnd):
        keep = sorted({0} | {i for i in range(1, len(curve)) if rnd.random() < 0.6})
        try:
            sub = interpolate(curve, Partition(tuple(keep) + (len(curve),), len(curve)))
        except DegenerateCurveError:
            return
        assert p_variation(curve, p) >= p_variation(sub, p) * (1 - 1e-12)

    @settings(max_examples=60, deadline=None)
    @given(polygons())
    def test_p1_is_perimeter(self, curve):
        assert p_variation(curve, 1.0) == pytest.approx(curve.perimeter(), rel=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(polygons(), p_values, p_values)
    def test_non_increasing_in_p(self, curve, p1, p2):
        lo, hi = sorted((p1, p2))
        assert p_variation(curve, hi) <= p_variation(curve, lo) * (1 + 1e-12)

    @settings(max_examples=30, deadline=None)
    @given(polygons(max_size=6), p_values, st.randoms(use_true_random=False))
    def test_interior_points_never_help(self, curve, p, rnd):
        # add random rational points inside edges: the supremum over vertices is unchanged
        refined = []
        for a, b in curve.edges():
            refined.append(a)
            for t in sorted({F(rnd.randrange(1, 64), 64) for _ in range(rnd.randrange(0, 4))}):
                refined.append(Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
        dense = ClosedCurve(refined)
        assert p_variation(dense, p) == pytest.approx(p_variation(curve, p), rel=1e-12)


class TestConcat:
    def test_same_square_twice(self, square):
        c = concat(square, square)
        assert winding_at(c, pt(F(1, 2), F(1, 2))) == 2
        assert len(c) == 8

    def test_with_reverse_cancels(self, square):
        c = concat(square, square.reversed())
        for x, y in [(F(1, 2), F(1, 2)), (F(1, 4), F(3, 4)), (F(9, 10), F(1, 10))]:
            assert winding_at(c, Point(x, y)) == 0

    def test_far_triangle_sums_pointwise(self, square):
        tiny = ClosedCurve([(100, 100), (F(1003, 10), 100), (100, F(1003, 10))])
        c = concat(square, tiny)
        shifted = tiny.translated(square[0] - tiny[0])
        rng = random.Random(3)
        for _ in range(100):
            x = random_off_curve_point(c, rng)
            assert winding_at(c, x) == winding_at(square, x) + winding_at(shifted, x)

    def test_additivity_random_pairs(self):
        rng = random.Random(11)
        for _ in range(100):
            c1 = random_integer_polygon(rng, rng.randrange(3, 7))
            c2 = random_integer_polygon(rng, rng.randrange(3, 7))
            c = concat(c1, c2)
            shifted = c2.translated(c1[0] - c2[0])
            x = random_off_curve_point(c, rng)
            assert not on_curve(c1, x) and not on_curve(shifted, x)
            assert winding_at(c, x) == winding_at(c1, x) + winding_at(shifted, x)

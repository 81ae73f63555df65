import math
import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from pref2d import (
    Annulus,
    Circle,
    CoincidentCircles,
    Disk,
    FreeArea,
    Point,
    annulus_contains,
    candidate_disk,
    circle_intersections,
    corners,
    dist,
    free_area_contains,
    min_enclosing_disk,
    sample_free_area,
    sample_in_disk,
)
from pref2d.geometry import _circumdisk, _diameter_disk

coords = st.floats(-100, 100, allow_nan=False, allow_infinity=False)
points = st.builds(Point, coords, coords)

INF = float("inf")


def brute_force_enclosing_disk(pts):
    """Independent oracle: best disk over all pairs and triples of points."""
    slack = 1e-12
    candidates = [Disk(pts[0], 0.0)]
    for a, b in combinations(pts, 2):
        candidates.append(_diameter_disk(a, b))
    for a, b, c in combinations(pts, 3):
        d = _circumdisk(a, b, c)
        if d is not None:
            candidates.append(d)
    feasible = [
        d for d in candidates if all(dist(d.center, p) <= d.radius + slack for p in pts)
    ]
    return min(feasible, key=lambda d: d.radius)


class TestDist:
    def test_345_triangle(self):
        assert dist(Point(0, 0), Point(3, 4)) == 5.0

    def test_identity(self):
        assert dist(Point(1, 1), Point(1, 1)) == 0.0

    def test_axis_pair(self):
        assert dist(Point(2, 2), Point(0, 2)) == 2.0

    @given(points, points)
    def test_symmetry(self, p, q):
        assert dist(p, q) == dist(q, p)

    @given(points, points, points)
    def test_triangle_inequality(self, p, q, r):
        assert dist(p, r) <= dist(p, q) + dist(q, r) + 1e-9


class TestCircleIntersections:
    def test_two_points_345(self):
        got = circle_intersections(Circle(Point(0, 0), 5), Circle(Point(6, 0), 5))
        assert set(got) == {Point(3, 4), Point(3, -4)}

    def test_external_tangency(self):
        got = circle_intersections(Circle(Point(0, 0), 1), Circle(Point(2, 0), 1))
        assert got == (Point(1, 0),)

    def test_separated(self):
        assert circle_intersections(Circle(Point(0, 0), 1), Circle(Point(5, 0), 1)) == ()

    def test_nested(self):
        assert circle_intersections(Circle(Point(0, 0), 5), Circle(Point(1, 0), 1)) == ()

    def test_internal_tangency(self):
        got = circle_intersections(Circle(Point(0, 0), 3), Circle(Point(1, 0), 2))
        assert got == (Point(3, 0),)

    def test_coincident_is_error(self):
        with pytest.raises(CoincidentCircles):
            circle_intersections(Circle(Point(0, 0), 1), Circle(Point(0, 0), 1))

    def test_points_lie_on_both_circles(self):
        rng = random.Random(7)
        for _ in range(10_000):
            c1 = Circle(Point(rng.uniform(-5, 5), rng.uniform(-5, 5)), rng.uniform(0.01, 5))
            c2 = Circle(Point(rng.uniform(-5, 5), rng.uniform(-5, 5)), rng.uniform(0.01, 5))
            try:
                pts = circle_intersections(c1, c2)
            except CoincidentCircles:
                continue
            for p in pts:
                assert abs(dist(p, c1.center) - c1.radius) <= 1e-9
                assert abs(dist(p, c2.center) - c2.radius) <= 1e-9


class TestAnnulus:
    def test_inside(self):
        a = Annulus(Point(0, 0), 1, 2)
        assert annulus_contains(a, Point(1.5, 0))

    def test_open_boundary(self):
        a = Annulus(Point(0, 0), 1, 2)
        assert not annulus_contains(a, Point(1, 0))
        assert not annulus_contains(a, Point(2, 0))

    def test_unbounded_above(self):
        a = Annulus(Point(3, 3), 0, INF)
        assert annulus_contains(a, Point(1000, 1000))
        assert not annulus_contains(a, Point(3, 3))

    def test_margin_shrinks_band(self):
        a = Annulus(Point(0, 0), 1, 2)
        assert annulus_contains(a, Point(1.05, 0), margin=0.0)
        assert not annulus_contains(a, Point(1.05, 0), margin=0.1)

    def test_negative_margin_is_closure(self):
        a = Annulus(Point(0, 0), 1, 2)
        assert annulus_contains(a, Point(1, 0), margin=-1e-9)


class TestFreeArea:
    def test_conjunction(self):
        f = FreeArea((Annulus(Point(0, 0), 0, 1), Annulus(Point(4, 0), 3, INF)))
        assert free_area_contains(f, Point(0.1, 0))
        assert not free_area_contains(f, Point(2, 0))

    def test_empty_sequence_is_whole_plane(self):
        assert free_area_contains(FreeArea(()), Point(123, -456))

    def test_infeasible_contains_nothing(self):
        f = FreeArea((), infeasible=True)
        assert not free_area_contains(f, Point(0, 0))


class TestCorners:
    def test_two_overlapping_disks(self):
        f = FreeArea((Annulus(Point(0, 0), 0, 5), Annulus(Point(6, 0), 0, 5)))
        assert set(corners(f)) == {Point(3, 4), Point(3, -4)}

    def test_single_annulus_has_none(self):
        assert corners(FreeArea((Annulus(Point(0, 0), 1, 2),))) == ()

    def test_disjoint_disks_have_none(self):
        f = FreeArea((Annulus(Point(0, 0), 0, 1), Annulus(Point(5, 0), 0, 1)))
        assert corners(f) == ()

    def test_inner_circles_contribute(self):
        # Disk around the origin with a forbidden disk around (2, 0): corners
        # where the outer boundary of one meets the lower bound of the other.
        f = FreeArea((Annulus(Point(0, 0), 0, 2), Annulus(Point(2, 0), 1, INF)))
        got = corners(f)
        assert len(got) == 2
        for p in got:
            assert abs(dist(p, Point(0, 0)) - 2) <= 1e-9 or abs(dist(p, Point(2, 0)) - 1) <= 1e-9

    def test_permutation_invariance(self):
        rng = random.Random(11)
        for _ in range(200)            :
            annuli = []
            for _ in range(3):
                lo = rng.uniform(0, 1)
                annuli.append(
                    Annulus(
                        Point(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                        lo,
                        lo + rng.uniform(0.1, 2),
                    )
                )
            base = corners(FreeArea(tuple(annuli)))
            perm = annuli[::-1]
            other = corners(FreeArea(tuple(perm)))
            assert len(base) == len(other)
            for p in base:
                assert any(dist(p, q) <= 1e-9 for q in other)


class TestMinEnclosingDisk:
    def test_diameter_pair(self):
        d = min_enclosing_disk([Point(0, 0), Point(2, 0)])
        assert d.center == Point(1, 0) and abs(d.radius - 1) <= 1e-12

    def test_right_triangle(self):
        d = min_enclosing_disk([Point(0, 0), Point(4, 0), Point(0, 4)])
        assert dist(d.center, Point(2, 2)) <= 1e-9
        assert abs(d.radius - 2 * math.sqrt(2)) <= 1e-9

    def test_single_point(self):
        d = min_enclosing_disk([Point(3, -7)])
        assert d == Disk(Point(3, -7), 0.0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            min_enclosing_disk([])

    def test_matches_brute_force(self):
        rng = random.Random(13)
        for _ in range(300):
            pts = [
                Point(rng.uniform(-10, 10), rng.uniform(-10, 10))
                for _ in range(rng.randint(1, 10))
            ]
            got = min_enclosing_disk(pts)
            want = brute_force_enclosing_disk(pts)
            assert abs(got.radius - want.radius) <= 1e-9
            assert dist(got.center, want.center) <= 1e-9

    def test_collinear(self):
        pts = [Point(x, 2 * x) for x in range(5)]
        got = min_enclosing_disk(pts)
        want = _diameter_disk(pts[0], pts[-1])
        assert dist(got.center, want.center) <= 1e-9
        assert abs(got.radius - want.radius) <= 1e-9


class TestSampling:
    def test_deterministic(self):
        d = Disk(Point(0, 0), 1)
        assert sample_in_disk(d, random.Random(5)) == sample_in_disk(d, random.Random(5))

    def test_zero_radius_returns_center(self):
        d = Disk(Point(2, 3), 0.0)
        assert sample_in_disk(d, random.Random(5)) == Point(2, 3)

    def test_samples_stay_in_disk(self):
        rng = random.Random(17)
        d = Disk(Point(1, -1), 2.5)
        for _ in range(1000):
            assert dist(sample_in_disk(d, rng), d.center) <= d.radius + 1e-12

    def test_mean_near_center(self):
        rng = random.Random(23)
        d = Disk(Point(0, 0), 1)
        sx = sy = 0.0
        trials = 100_000
        for _ in range(trials):
            p = sample_in_disk(d, rng)
            sx += p.x
            sy += p.y
        assert abs(sx / trials) < 0.02 and abs(sy / trials) < 0.02

    def test_area_uniformity(self):
        # Half the area of a disk lies within R/sqrt(2) of the center.
        rng = random.Random(29)
        d = Disk(Point(0, 0), 1)
        trials = 100_000
        inner = sum(
            1 for _ in range(trials) if dist(sample_in_disk(d, rng), d.center) < 1 / math.sqrt(2)
        )
        assert abs(inner / trials - 0.5) < 0.01


class TestSampleFreeArea:
    def test_point_in_single_disk(self):
        f = FreeArea((Annulus(Point(0, 0), 0, 1),))
        p = sample_free_area(f, random.Random(3), 100, 0.0)
        assert p is not None and dist(p, Point(0, 0)) < 1

    def test_empty_intersection_not_found(self):
        f = FreeArea((Annulus(Point(0, 0), 0, 1), Annulus(Point(5, 0), 0, 1)))
        assert sample_free_area(f, random.Random(3), 100, 0.0) is None

    def test_infeasible_not_found(self):
        f = FreeArea((), infeasible=True)
        assert sample_free_area(f, random.Random(3), 100, 0.0) is None

    def test_returned_point_satisfies_margin(self):
        rng = random.Random(31)
        for _ in range(500):
            annuli = []
            for _ in range(rng.randint(1, 3)):
                lo = rng.uniform(0, 1.5)
                hi = lo + rng.uniform(0.05, 2) if rng.random() < 0.7 else INF
                annuli.append(
                    Annulus(Point(rng.uniform(-1, 1), rng.uniform(-1, 1)), lo, hi)
                )
            f = FreeArea(tuple(annuli))
            margin = 1e-6
            p = sample_free_area(f, rng, 50, margin)
            if p is not None:
                assert free_area_contains(f, p, margin)

    def test_whole_plane(self):
        p = sample_free_area(FreeArea(()), random.Random(3), 1, 0.0)
        assert p is not None

    def test_unbounded_fallback_disk_reaches_free_area(self):
        # All annuli unbounded above with nested lower-bound circles, so no
        # corners exist: the fallback disk must cover points beyond every
        # lower bound.
        f = FreeArea((Annulus(Point(0, 0), 1, INF), Annulus(Point(0.1, 0), 2, INF)))
        assert corners(f) == ()
        d = candidate_disk(f)
        p = sample_free_area(f, random.Random(3), 500, 0.0)
        assert p is not None
        assert free_area_contains(f, p, 0.0)
        assert dist(p, d.center) <= d.radius

    def test_bad_budget(self):
        with pytest.raises(ValueError):
            sample_free_area(FreeArea(()), random.Random(3), 0, 0.0)

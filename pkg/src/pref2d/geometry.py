"""Planar primitives: circle intersections, annuli, enclosing disks, sampling.

All functions are pure; randomness comes in only through an explicit
``random.Random`` argument. Coordinates are plain floats and the kernel is
tuned for unit-scale inputs (tolerances below are absolute).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import NamedTuple, Sequence

TAU_GEO = 1e-9  # absolute tolerance: on-circle tests, corner merging
TAU_TAN = 1e-9  # tolerance for classifying circle tangency


class CoincidentCircles(ValueError):
    """Two identical circles intersect in infinitely many points."""


class Point(NamedTuple):
    x: float
    y: float


class Circle(NamedTuple):
    center: Point
    radius: float


class Annulus(NamedTuple):
    """Open ring around `center`: r_lo < distance < r_hi (r_hi may be inf)."""

    center: Point
    r_lo: float
    r_hi: float


class Disk(NamedTuple):
    """Closed disk: distance to `center` at most `radius`."""

    center: Point
    radius: float


@dataclass(frozen=True)
class FreeArea:
    """Intersection of open annuli, one per constrained voter.

    An empty annuli sequence means the whole plane. `infeasible` is set when
    some voter's band collapsed (lower bound >= upper bound), i.e. the region
    is known empty before any geometry is done.
    """

    annuli: tuple[Annulus, ...]
    infeasible: bool = False


def dist(p: Point, q: Point) -> float:
    """Euclidean distance."""
    return math.hypot(p.x - q.x, p.y - q.y)


def circle_intersections(c1: Circle, c2: Circle) -> tuple[Point, ...]:
    """Intersection points of two boundary circles.

    Returns 0 points when separated or nested, 1 when tangent (within
    TAU_TAN), 2 otherwise. Coincident circles raise CoincidentCircles.
    """
    (x1, y1), r1 = c1
    (x2, y2), r2 = c2
    d = math.hypot(x2 - x1, y2 - y1)
    if d <= TAU_GEO and abs(r1 - r2) <= TAU_GEO:
        raise CoincidentCircles(f"coincident circles {c1} and {c2}")
    if d > r1 + r2 + TAU_TAN:
        return ()
    if d < abs(r1 - r2) - TAU_TAN:
        return ()
    # a = signed distance from c1's center to the chord line along the axis
    a = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
    ux, uy = (x2 - x1) / d, (y2 - y1) / d
    mx, my = x1 + a * ux, y1 + a * uy
    if abs(d - (r1 + r2)) <= TAU_TAN or abs(d - abs(r1 - r2)) <= TAU_TAN:
        return (Point(mx, my),)
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    ox, oy = -uy * h, ux * h
    return (Point(mx + ox, my + oy), Point(mx - ox, my - oy))


def annulus_contains(a: Annulus, p: Point, margin: float = 0.0) -> bool:
    """Open membership with a safety margin (negative margin = closure test)."""
    d = dist(a.center, p)
    if d <= a.r_lo + margin:
        return False
    if math.isfinite(a.r_hi) and d >= a.r_hi - margin:
        return False
    return True


def free_area_contains(f: FreeArea, p: Point, margin: float = 0.0) -> bool:
    """True iff `p` lies in every annulus; vacuously true for no annuli."""
    if f.infeasible:
        return False
    return all(annulus_contains(a, p, margin) for a in f.annuli)


def corners(f: FreeArea) -> tuple[Point, ...]:
    """Pairwise boundary-circle intersections lying on the free area's closure.

    Each bounded annulus contributes its two boundary circles (the inner one
    only when r_lo > 0, a zero-radius circle cannot form a corner); an
    unbounded annulus contributes just the inner circle. Points within
    TAU_GEO of an earlier corner are merged.
    """
    if f.infeasible:
        return ()
    circles: list[Circle] = []
    for a in f.annuli:
        if a.r_lo > 0.0:
            circles.append(Circle(a.center, a.r_lo))
        if math.isfinite(a.r_hi):
            circles.append(Circle(a.center, a.r_hi))
    found: list[Point] = []
    for i in range(len(circles)):
        for j in range(i + 1, len(circles)):
            for p in circle_intersections(circles[i], circles[j]):
                if not free_area_contains(f, p, -TAU_GEO):
                    continue
                if any(dist(p, q) <= TAU_GEO for q in found):
                    continue
                found.append(p)
    return tuple(found)


def _disk_contains(d: Disk, p: Point) -> bool:
    return dist(d.center, p) <= d.radius * (1 + 1e-14)


def _diameter_disk(a: Point, b: Point) -> Disk:
    c = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
    return Disk(c, max(dist(c, a), dist(c, b)))


def _circumdisk(a: Point, b: Point, c: Point) -> Disk | None:
    # Shift to the bounding-box midpoint for conditioning.
    ox = (min(a.x, b.x, c.x) + max(a.x, b.x, c.x)) / 2
    oy = (min(a.y, b.y, c.y) + max(a.y, b.y, c.y)) / 2
    ax, ay = a.x - ox, a.y - oy
    bx, by = b.x - ox, b.y - oy
    cx, cy = c.x - ox, c.y - oy
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0:
        return None
    x = ox + ((ax * ax + ay * ay) * (by - cy)
              + (bx * bx + by * by) * (cy - ay)
              + (cx * cx + cy * cy) * (ay - by)) / d
    y = oy + ((ax * ax + ay * ay) * (cx - bx)
              + (bx * bx + by * by) * (ax - cx)
              + (cx * cx + cy * cy) * (bx - ax)) / d
    center = Point(x, y)
    return Disk(center, max(dist(center, a), dist(center, b), dist(center, c)))


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _med_two_boundary(pts: Sequence[Point], p: Point, q: Point) -> Disk:
    circ = _diameter_disk(p, q)
    left: Disk | None = None
    right: Disk | None = None
    for r in pts:
        if _disk_contains(circ, r):
            continue
        cross = _cross(p, q, r)
        d = _circumdisk(p, q, r)
        if d is None:
            continue
        dc = _cross(p, q, d.center)
        if cross > 0 and (left is None or dc > _cross(p, q, left.center)):
            left = d
        elif cross < 0 and (right is None or dc < _cross(p, q, right.center)):
            right = d
    if left is None and right is None:
        return circ
    if left is None:
        return right  # type: ignore[return-value]
    if right is None:
        return left
    return left if left.radius <= right.radius else right


def _med_one_boundary(pts: Sequence[Point], p: Point) -> Disk:
    d = Disk(p, 0.0)
    for i, q in enumerate(pts):
        if not _disk_contains(d, q):
            if d.radius == 0.0:
                d = _diameter_disk(p, q)
            else:
                d = _med_two_boundary(pts[: i + 1], p, q)
    return d


def min_enclosing_disk(points: Sequence[Point]) -> Disk:
    """Smallest closed disk containing all points.

    Randomized incremental construction, expected near-linear time; the
    internal shuffle is seeded so equal inputs give identical disks.
    """
    pts = [Point(float(p[0]), float(p[1])) for p in points]
    if not pts:
        raise ValueError("min_enclosing_disk: empty point set")
    random.Random(0x5EED).shuffle(pts)
    d: Disk | None = None
    for i, p in enumerate(pts):
        if d is None or not _disk_contains(d, p):
            d = _med_one_boundary(pts[: i + 1], p)
    assert d is not None
    return d


def sample_in_disk(d: Disk, rng: random.Random) -> Point:
    """A point uniform over the closed disk (radius drawn as R * sqrt(u))."""
    if d.radius == 0.0:
        return d.center
    theta = rng.random() * 2 * math.pi
    r = d.radius * math.sqrt(rng.random())
    return Point(d.center.x + r * math.cos(theta), d.center.y + r * math.sin(theta))


def candidate_disk(f: FreeArea) -> Disk:
    """The disk rejection sampling draws from.

    Corner-based when corners exist; otherwise the smallest bounded annulus's
    outer disk; otherwise (everything unbounded) a disk around the centroid of
    the annulus centers, wide enough to reach past every lower bound. The
    first two cases provably meet the free area when it is non-empty; the
    last is a heuristic with room to spare.
    """
    pts = corners(f)
    if pts:
        return min_enclosing_disk(pts)
    bounded = [a for a in f.annuli if math.isfinite(a.r_hi)]
    if bounded:
        a = min(bounded, key=lambda a: a.r_hi)
        return Disk(a.center, a.r_hi)
    if not f.annuli:
        return Disk(Point(0.0, 0.0), 2.0)
    cx = sum(a.center.x for a in f.annuli) / len(f.annuli)
    cy = sum(a.center.y for a in f.annuli) / len(f.annuli)
    max_lo = max(a.r_lo for a in f.annuli)
    spread = max(
        (dist(a.center, b.center) for a in f.annuli for b in f.annuli),
        default=0.0,
    )
    return Disk(Point(cx, cy), 2 * (max_lo + spread + 1.0))


def sample_free_area(
    f: FreeArea, rng: random.Random, budget: int, margin: float
) -> Point | None:
    """Rejection-sample a point of the free area, or None after `budget` tries.

    None never certifies emptiness; any returned point satisfies every
    annulus with the requested margin.
    """
    if budget < 1:
        raise ValueError(f"need budget >= 1, got {budget}")
    if f.infeasible:
        return None
    d = candidate_disk(f)
    if d.radius == 0.0:
        # Degenerate target (e.g. a single corner): every draw is the same
        # point and consumes no randomness, so one test settles it.
        p = d.center
        return p if free_area_contains(f, p, margin) else None
    for _ in range(budget):
        p = sample_in_disk(d, rng)
        if free_area_contains(f, p, margin):
            return p
    return None

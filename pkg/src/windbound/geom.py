"""Exact rational planar primitives.

Every coordinate is a :class:`fractions.Fraction`; predicates never touch
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class GeometryError(ValueError):
    """Raised on invalid geometric input (degenerate segments, too few vertices)."""


@dataclass(frozen=True, slots=True)
class Point:
    x: Fraction
    y: Fraction

    def __init__(self, x: RationalLike, y: RationalLike):
        object.__setattr__(self, "x", Fraction(x))
        object.__setattr__(self, "y", Fraction(y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, factor: RationalLike) -> "Point":
        f = Fraction(factor)
        return Point(self.x * f, self.y * f)

    def norm2(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


@dataclass(frozen=True, slots=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise GeometryError(f"zero-length segment at {self.a}")


def cross(a: Point, b: Point, c: Point) -> Fraction:
    """Exact cross product (b - a) x (c - a)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def orient(a: Point, b: Point, c: Point) -> int:
    """+1 if a, b, c turn counterclockwise, -1 if clockwise, 0 if collinear."""
    d = cross(a, b, c)
    return (d > 0) - (d < 0)


def _on_closed_segment(p: Point, s: Segment) -> bool:
    # assumes p collinear with s
    return (min(s.a.x, s.b.x) <= p.x <= max(s.a.x, s.b.x)
            and min(s.a.y, s.b.y) <= p.y <= max(s.a.y, s.b.y))


def point_on_segment(p: Point, s: Segment) -> bool:
    return orient(s.a, s.b, p) == 0 and _on_closed_segment(p, s)


@dataclass(frozen=True)
class Intersection:
    """Result of :func:`segment_intersection`.

    ``kind`` is ``"none"``, ``"point"`` or ``"overlap"``; ``point`` is set for
    point intersections, ``segment`` for collinear overlaps of positive length.
    """

    kind: str
    point: Optional[Point] = None
    segment: Optional[Segment] = None


NO_INTERSECTION = Intersection("none")


def segment_intersection(s1: Segment, s2: Segment) -> Intersection:
    a, b, c, d = s1.a, s1.b, s2.a, s2.b
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)

    if o1 == o2 == 0:
        # collinear: project on the dominant axis and intersect the ranges
        key = (lambda p: (p.x, p.y)) if a.x != b.x else (lambda p: (p.y, p.x))
        lo = max(min(a, b, key=key), min(c, d, key=key), key=key)
        hi = min(max(a, b, key=key), max(c, d, key=key), key=key)
        if key(lo) > key(hi):
            return NO_INTERSECTION
        if lo == hi:
            return Intersection("point", point=lo)
        return Intersection("overlap", segment=Segment(lo, hi))

    if o1 * o2 > 0 or o3 * o4 > 0:
        return NO_INTERSECTION

    # proper crossing or touching; solve a + t (b - a) on line cd
    den = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x)
    t = ((c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x)) / den
    return Intersection("point", point=Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))


def polygon_signed_area(vertices: Sequence[Point]) -> Fraction:
    """Shoelace area, positive for counterclockwise simple polygons."""
    n = len(vertices)
    if n < 3:
        raise GeometryError(f"polygon needs at least 3 vertices, got {n}")
    total = Fraction(0)
    for i in range(n):
        p, q = vertices[i], vertices[(i + 1) % n]
        total += p.x * q.y - q.x * p.y
    return total / 2


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"``, an integer, or a plain decimal literal exactly.

    Scientific notation is rejected so that no literal hides a rounding step.
    """
    s = text.strip()
    if not s or "e" in s.lower() or s.lower() in ("nan", "inf", "-inf", "+inf"):
        raise ValueError(f"not an exact rational literal: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational literal: {text!r}") from exc


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def points(coords: Iterable[Sequence[RationalLike]]) -> list[Point]:
    """Convenience: build a list of points from coordinate pairs."""
    return [Point(x, y) for x, y in coords]

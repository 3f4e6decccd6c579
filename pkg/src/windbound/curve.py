"""Closed polygonal curves, partitions, interpolation and p-variation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .geom import GeometryError, Point, RationalLike, polygon_signed_area


class DegenerateCurveError(GeometryError):
    """The curve collapsed to fewer than three distinct vertices.

    Its winding field is identically zero.
    """


@dataclass(frozen=True)
class IntCoords:
    """Curve coordinates scaled to integers by a common denominator."""

    denom: int
    xs: tuple[int, ...]
    ys: tuple[int, ...]


@dataclass(frozen=True)
class ClosedCurve:
    """Closed polyline; the edge from the last vertex back to the first is implicit.

    Vertex ``i`` sits at parameter ``i / n``.
    """

    vertices: tuple[Point, ...]

    def __init__(self, vertices: Iterable[Point | Sequence[RationalLike]]):
        verts = tuple(v if isinstance(v, Point) else Point(*v) for v in vertices)
        if len(verts) < 3:
            raise DegenerateCurveError(f"a closed curve needs at least 3 vertices, got {len(verts)}")
        for i, v in enumerate(verts):
            if v == verts[i - 1]:
                raise GeometryError(f"zero-length edge at vertex {i} ({v})")
        object.__setattr__(self, "vertices", verts)

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> Point:
        return self.vertices[i % len(self.vertices)]

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    @cached_property
    def int_coords(self) -> IntCoords:
        denom = 1
        for v in self.vertices:
            denom = math.lcm(denom, v.x.denominator, v.y.denominator)
        xs = tuple(v.x.numerator * (denom // v.x.denominator) for v in self.vertices)
        ys = tuple(v.y.numerator * (denom // v.y.denominator) for v in self.vertices)
        return IntCoords(denom, xs, ys)

    def bbox(self) -> tuple[Point, Point]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return Point(min(xs), min(ys)), Point(max(xs), max(ys))

    def signed_area(self) -> Fraction:
        return polygon_signed_area(self.vertices)

    def reversed(self) -> "ClosedCurve":
        """Same image traversed backwards, keeping the basepoint."""
        v = self.vertices
        return ClosedCurve((v[0],) + v[:0:-1])

    def translated(self, offset: Point) -> "ClosedCurve":
        return ClosedCurve(v + offset for v in self.vertices)

    def scaled(self, factor: RationalLike) -> "ClosedCurve":
        return ClosedCurve(v.scale(factor) for v in self.vertices)

    def perimeter(self) -> float:
        return math.fsum(math.sqrt(float((b - a).norm2())) for a, b in self.edges())


@dataclass(frozen=True)
class Partition:
    """Strictly increasing vertex indices ``0 = i_0 < ... < i_m = n``.

    Index ``n`` is the closing copy of vertex 0.
    """

    indices: tuple[int, ...]
    n: int = field(default=0)

    def __post_init__(self):
        idx = tuple(self.indices)
        object.__setattr__(self, "indices", idx)
        if not idx or idx[0] != 0 or idx[-1] != self.n:
            raise ValueError(f"partition must start at 0 and end at {self.n}: {idx}")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"partition indices must be strictly increasing: {idx}")

    @classmethod
    def full(cls, curve: ClosedCurve) -> "Partition":
        return cls(tuple(range(len(curve) + 1)), len(curve))


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int

    def __post_init__(self):
        if not 0 <= self.lo < self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")


def interpolate(curve: ClosedCurve, partition: Partition) -> ClosedCurve:
    """Polygonal interpolation through the partition's vertices.

    For a polygonal curve this is subsampling. Consecutive repeats are
    collapsed; fewer than three distinct vertices raises
    :class:`DegenerateCurveError`.
    """
    if partition.n != len(curve):
        raise ValueError(f"partition is for {partition.n} vertices, curve has {len(curve)}")
    picked = [curve[i] for i in partition.indices[:-1]]
    out: list[Point] = []
    for v in picked:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[-1] == out[0]:
        out.pop()
    if len(out) < 3:
        raise DegenerateCurveError(f"interpolation leaves {len(out)} distinct vertices")
    return ClosedCurve(out)


def uniform_partition(n: int, curve: ClosedCurve) -> Partition:
    """Parameters ``i / n`` rounded to the vertex grid, ties toward the lower index."""
    if n < 2:
        raise ValueError("uniform partition needs n >= 2")
    m = len(curve)
    idx: list[int] = []
    for i in range(n + 1):
        q, r = divmod(i * m, n)
        k = q + 1 if 2 * r > n else q
        if not idx or idx[-1] != k:
            idx.append(k)
    return Partition(tuple(idx), m)


def concat(c1: ClosedCurve, c2: ClosedCurve) -> ClosedCurve:
    """Traverse ``c1`` then ``c2`` translated so that it starts at ``c1``'s basepoint."""
    shift = c1[0] - c2[0]
    tail = [v + shift for v in c2.vertices[1:]]
    return ClosedCurve(list(c1.vertices) + [c1[0]] + tail)


def check_p(p: float) -> None:
    if not 1 <= p < 2:
        raise ValueError(f"p must lie in [1, 2), got {p}")


def increment_power(dx2: int, denom2: int, p: float) -> float:
    """|increment|**p from the exact squared length ``dx2 / denom2``.

    Evaluated as ``(|d|^2)^(p/2)``; int/int true division is correctly rounded.
    """
    return (dx2 / denom2) ** (p / 2)


def _weights(curve: ClosedCurve, idx: Sequence[int], p: float) -> list[list[float]]:
    ic = curve.int_coords
    n = len(curve)
    d2 = ic.denom * ic.denom
    xs = [ic.xs[i % n] for i in idx]
    ys = [ic.ys[i % n] for i in idx]
    m = len(idx)
    w = [[0.0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            dx, dy = xs[j] - xs[i], ys[j] - ys[i]
            w[i][j] = increment_power(dx * dx + dy * dy, d2, p)
    return w


def p_variation(curve: ClosedCurve, p: float, interval: Optional[Interval] = None) -> float:
    """p-variation over the vertex indices of ``interval`` (whole curve by default).

    The supremum is taken over vertex subsets containing both endpoints; a
    partition point inside a straight edge never increases the sum since
    ``(x + y)**p >= x**p + y**p``.
    """
    check_p(p)
    n = len(curve)
    if interval is None:
        interval = Interval(0, n)
    if interval.hi > n:
        raise ValueError(f"interval {interval} exceeds curve with {n} vertices")
    idx = list(range(interval.lo, interval.hi + 1))
    w = _weights(curve, idx, p)
    best = [0.0] * len(idx)
    for j in range(1, len(idx)):
        best[j] = max(best[i] + w[i][j] for i in range(j))
    return best[-1] ** (1 / p)

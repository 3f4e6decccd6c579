"""Winding numbers: point queries, the full winding field, and its L^q norms."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .curve import ClosedCurve
from .geom import GeometryError, Point
from .rng import Pcg64Stream


class OnCurveError(GeometryError):
    """The winding number is undefined on the curve image."""


def _scaled_query(curve: ClosedCurve, point: Point):
    ic = curve.int_coords
    m = math.lcm(point.x.denominator, point.y.denominator)
    s = ic.denom * m
    px = point.x.numerator * (s // point.x.denominator)
    py = point.y.numerator * (s // point.y.denominator)
    return ic, m, px, py


def _crossings(xs, ys, m: int, px: int, py: int) -> int:
    n = len(xs)
    w = 0
    ax, ay = xs[-1] * m, ys[-1] * m
    for i in range(n):
        bx, by = xs[i] * m, ys[i] * m
        if (ax - px) * (by - py) == (ay - py) * (bx - px) and (
            min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)
        ):
            raise OnCurveError(f"point lies on edge {(i - 1) % n}")
        a_up, b_up = ay > py, by > py
        if a_up != b_up:
            c = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
            if b_up and c > 0:
                w += 1
            elif a_up and c < 0:
                w -= 1
        ax, ay = bx, by
    return w


def winding_at(curve: ClosedCurve, point: Point, ray: str = "horizontal") -> int:
    """Winding number by signed crossings of a ray cast from ``point``.

    An edge counts iff exactly one endpoint lies strictly above the ray
    (half-open rule). ``ray="vertical"`` casts upward instead of to the right.
    """
    if not isinstance(point, Point):
        point = Point(*point)
    ic, m, px, py = _scaled_query(curve, point)
    if ray == "horizontal":
        return _crossings(ic.xs, ic.ys, m, px, py)
    if ray == "vertical":
        # rotate by -90 degrees: upward ray becomes the +x ray, orientation kept
        return _crossings(ic.ys, tuple(-x for x in ic.xs), m, py, -px)
    raise ValueError(f"unknown ray direction {ray!r}")


@dataclass(frozen=True)
class Cell:
    polygon: tuple[Point, ...]
    winding: int
    area: Fraction

    def centroid_hint(self) -> Point:
        """A point strictly inside the cell (vertex average of a convex trapezoid)."""
        k = len(self.polygon)
        return Point(sum(v.x for v in self.polygon) / k, sum(v.y for v in self.polygon) / k)


@dataclass(frozen=True)
class WindingField:
    cells: tuple[Cell, ...]
    bbox: tuple[Point, Point]

    def signed_measure(self) -> Fraction:
        return sum((c.winding * c.area for c in self.cells), Fraction(0))

    def area_by_winding(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = defaultdict(Fraction)
        for c in self.cells:
            out[c.winding] += c.area
        return dict(sorted(out.items()))

    def winding_of_cell_containing(self, point: Point) -> Optional[int]:
        for c in self.cells:
            if _strictly_inside_convex(c.polygon, point):
                return c.winding
        return None


def _strictly_inside_convex(poly: Sequence[Point], p: Point) -> bool:
    k = len(poly)
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        if (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) <= 0:
            return False
    return True


def _edge_list(vertices: Sequence[Point]) -> list[tuple[Point, Point]]:
    n = len(vertices)
    return [(vertices[i], vertices[(i + 1) % n]) for i in range(n) if vertices[i] != vertices[(i + 1) % n]]


def _event_xs(segs: list[tuple[int, int, int, int]]) -> list[Fraction]:
    """x-coordinates of all endpoints and pairwise intersections."""
    xs: set[Fraction] = set()
    for ax, ay, bx, by in segs:
        xs.add(Fraction(ax))
        xs.add(Fraction(bx))
    k = len(segs)
    boxes = [(min(ax, bx), max(ax, bx), min(ay, by), max(ay, by)) for ax, ay, bx, by in segs]
    for i in range(k):
        ax, ay, bx, by = segs[i]
        x0, x1, y0, y1 = boxes[i]
        dx, dy = bx - ax, by - ay
        for j in range(i + 1, k):
            u0, u1, v0, v1 = boxes[j]
            if u0 > x1 or u1 < x0 or v0 > y1 or v1 < y0:
                continue
            cx, cy, ex, ey = segs[j]
            o1 = dx * (cy - ay) - dy * (cx - ax)
            o2 = dx * (ey - ay) - dy * (ex - ax)
            if (o1 > 0 and o2 > 0) or (o1 < 0 and o2 < 0):
                continue
            fx, fy = ex - cx, ey - cy
            o3 = fx * (ay - cy) - fy * (ax - cx)
            o4 = fx * (by - cy) - fy * (bx - cx)
            if (o3 > 0 and o4 > 0) or (o3 < 0 and o4 < 0):
                continue
            den = dx * fy - dy * fx
            if den == 0:
                # collinear overlap: its ends are segment endpoints, already present
                continue
            t = Fraction((cx - ax) * fy - (cy - ay) * fx, den)
            xs.add(ax + t * dx)
    return sorted(xs)


def winding_field_of_vertices(vertices: Sequence[Point]) -> WindingField:
    """Slab decomposition of the closed polyline through ``vertices``.

    Zero-length edges are ignored, so degenerate (flat, repeated) inputs are
    accepted and yield an all-zero field.
    """
    edges = _edge_list(vertices)
    xs_all = [v.x for v in vertices]
    ys_all = [v.y for v in vertices]
    bbox = (Point(min(xs_all), min(ys_all)), Point(max(xs_all), max(ys_all)))
    if not edges:
        return WindingField((), bbox)

    denom = 1
    for v in vertices:
        denom = math.lcm(denom, v.x.denominator, v.y.denominator)

    def sc(f: Fraction) -> int:
        return f.numerator * (denom // f.denominator)

    segs = [(sc(a.x), sc(a.y), sc(b.x), sc(b.y)) for a, b in edges]
    ymin, ymax = sc(bbox[0].y), sc(bbox[1].y)
    events = _event_xs(segs)

    # non-vertical segments, left-to-right, with crossing direction:
    # passing downward through a leftward edge adds 1, a rightward edge subtracts 1
    spans = []
    for ax, ay, bx, by in segs:
        if ax == bx:
            continue
        if ax < bx:
            spans.append((ax, ay, bx, by, -1))
        else:
            spans.append((bx, by, ax, ay, +1))
    spans.sort(key=lambda s: s[0])

    inv = Fraction(1, denom)
    area_scale = inv * inv
    cells: list[Cell] = []
    active: list[tuple] = []
    nxt = 0
    top, bottom = Fraction(ymax), Fraction(ymin)
    for xl, xr in zip(events, events[1:]):
        while nxt < len(spans) and spans[nxt][0] <= xl:
            active.append(spans[nxt])
            nxt += 1
        active = [s for s in active if s[2] > xl]
        rows = []
        for lx, ly, rx, ry, d in active:
            slope = Fraction(ry - ly, rx - lx)
            rows.append((ly + slope * (xl - lx), ly + slope * (xr - lx), d))
        rows.sort(key=lambda r: r[0] + r[1])
        width = xr - xl
        upper_l = upper_r = top
        w = 0
        for yl, yr, d in reversed(rows):
            _emit(cells, xl, xr, yl, yr, upper_l, upper_r, w, width, inv, area_scale)
            w += d
            upper_l, upper_r = yl, yr
        if w != 0:
            raise ArithmeticError(f"slab [{xl}, {xr}] does not close to winding 0 (got {w})")
        _emit(cells, xl, xr, bottom, bottom, upper_l, upper_r, 0, width, inv, area_scale)
    return WindingField(tuple(cells), bbox)


def _emit(cells, xl, xr, lo_l, lo_r, up_l, up_r, w, width, inv, area_scale) -> None:
    area = width * ((up_l - lo_l) + (up_r - lo_r)) / 2
    if area == 0:
        return
    raw = [(xl, lo_l), (xr, lo_r), (xr, up_r), (xl, up_l)]
    poly: list[Point] = []
    for x, y in raw:
        p = Point(x * inv, y * inv)
        if not poly or poly[-1] != p:
            poly.append(p)
    if len(poly) > 1 and poly[-1] == poly[0]:
        poly.pop()
    cells.append(Cell(tuple(poly), w, area * area_scale))


def winding_field(curve: ClosedCurve) -> WindingField:
    return winding_field_of_vertices(curve.vertices)


@dataclass(frozen=True)
class LqNorm:
    """L^q norm of a winding field.

    ``exact_sum`` maps each |winding| to the exact total area carrying it; only
    the powers ``|w|**q`` and the final root are floating.
    """

    q: float
    value: float
    exact_sum: dict[int, Fraction]
    integral_exact: Optional[Fraction] = None


def check_q(q: float) -> None:
    if not q >= 1:
        raise ValueError(f"q must be >= 1, got {q}")


def lq_norm(field: WindingField, q: float) -> LqNorm:
    check_q(q)
    by_abs: dict[int, Fraction] = defaultdict(Fraction)
    for c in field.cells:
        if c.winding:
            by_abs[abs(c.winding)] += c.area
    by_abs = dict(sorted(by_abs.items()))
    if q == 1:
        total = sum((k * a for k, a in by_abs.items()), Fraction(0))
        return LqNorm(q, float(total), by_abs, total)
    integral = math.fsum(float(k) ** q * float(a) for k, a in by_abs.items())
    return LqNorm(q, integral ** (1 / q), by_abs)


# -- Monte Carlo oracle -----------------------------------------------------

_FILTER = 1e-9


def _batch_windings(curve: ClosedCurve, px: np.ndarray, py: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Float crossing counts plus a mask of points whose sign tests were too close to call."""
    vx = np.array([float(v.x) for v in curve.vertices])
    vy = np.array([float(v.y) for v in curve.vertices])
    ax, ay = vx, vy
    bx, by = np.roll(vx, -1), np.roll(vy, -1)
    scale = max(np.max(np.abs(vx)), np.max(np.abs(vy)), 1.0)
    w = np.zeros(px.shape, dtype=np.int64)
    unsure = np.zeros(px.shape, dtype=bool)
    for i in range(len(vx)):
        dya, dyb = ay[i] - py, by[i] - py
        unsure |= (np.abs(dya) <= _FILTER * scale) | (np.abs(dyb) <= _FILTER * scale)
        a_up, b_up = dya > 0, dyb > 0
        c = (bx[i] - ax[i]) * (py - ay[i]) - (by[i] - ay[i]) * (px - ax[i])
        mag = np.abs(bx[i] - ax[i]) * np.abs(dya) + np.abs(by[i] - ay[i]) * np.abs(px - ax[i])
        straddle = a_up != b_up
        unsure |= straddle & (np.abs(c) <= _FILTER * (mag + scale * scale * 1e-6))
        w += (straddle & b_up & (c > 0)).astype(np.int64)
        w -= (straddle & a_up & (c < 0)).astype(np.int64)
    return w, unsure


def lq_norm_grid_oracle(curve: ClosedCurve, q: float, samples: int, seed: int) -> tuple[float, float]:
    """Monte Carlo estimate of the L^q norm over the curve's bounding box.

    Points are exact dyadic offsets into the box. A float crossing count is
    used where it is unambiguous, the exact :func:`winding_at` elsewhere;
    points on the curve are redrawn. Returns ``(estimate, stderr)`` with the
    standard error pushed through the ``1/q`` root by the delta method.
    """
    check_q(q)
    if samples < 100:
        raise ValueError("the Monte Carlo oracle needs at least 100 samples")
    lo, hi = curve.bbox()
    width, height = hi.x - lo.x, hi.y - lo.y
    box_area = float(width * height)
    if box_area == 0:
        return 0.0, 0.0
    stream = Pcg64Stream(seed)
    bits = 52
    scale = 1 << bits
    values = np.empty(samples, dtype=np.float64)
    filled = 0
    while filled < samples:
        need = samples - filled
        ku = stream.raw(need) >> np.uint64(64 - bits)
        kv = stream.raw(need) >> np.uint64(64 - bits)
        # exact dyadic fractions of the box; float images are exact for bits <= 52
        fu = ku.astype(np.float64) / scale
        fv = kv.astype(np.float64) / scale
        px = float(lo.x) + float(width) * fu
        py = float(lo.y) + float(height) * fv
        w, unsure = _batch_windings(curve, px, py)
        for i in np.flatnonzero(unsure):
            pt = Point(lo.x + width * Fraction(int(ku[i]), scale), lo.y + height * Fraction(int(kv[i]), scale))
            try:
                w[i] = winding_at(curve, pt)
            except OnCurveError:
                w[i] = np.iinfo(np.int64).min
        keep = w != np.iinfo(np.int64).min
        vals = np.abs(w[keep]).astype(np.float64) ** q
        take = min(len(vals), need)
        values[filled:filled + take] = vals[:take]
        filled += take
    mean = float(np.mean(values))
    sd = float(np.std(values, ddof=1))
    integral = box_area * mean
    integral_err = box_area * sd / math.sqrt(samples)
    if integral == 0:
        return 0.0, 0.0
    est = integral ** (1 / q)
    return est, (1 / q) * integral ** (1 / q - 1) * integral_err

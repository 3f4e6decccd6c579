"""Young's point-removal cascade and the winding-number isoperimetric bound.

A closed polygon with r vertices is reduced one vertex at a time down to two
points. Removing vertex ``j`` changes the winding field by exactly +-1 on the
triangle ``(v[j-1], v[j], v[j+1])``, so the L^q norm of the field is at most
the sum of the removed triangles' ``area**(1/q)``. Each triangle is bounded by
the two-edge p-variation window around ``j``, and choosing the vertex with the
smallest window keeps that window below ``2/(k-1)`` of the total p-th power
variation when k vertices remain. Summing these gives a zeta tail.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .curve import ClosedCurve, check_p, p_variation
from .geom import Point
from .winding import LqNorm, WindingField, check_q, lq_norm, winding_field
from .zeta import zeta

REL_TOL = 1e-9
STEP_TOL = 1e-12


class TheoremViolation(AssertionError):
    """A step of the cascade broke a bound that must always hold."""


@dataclass(frozen=True)
class BoundParams:
    p: float
    q: float

    def __post_init__(self):
        check_p(self.p)
        check_q(self.q)
        if not self.q < 2 / self.p:
            raise ValueError(f"q must be < 2/p = {2 / self.p:.6g}, got {self.q}")

    @property
    def zeta_arg(self) -> float:
        return 2 / (self.p * self.q)


@dataclass(frozen=True)
class RemovalStep:
    removed_index: int        # index into the original curve's vertices
    position: int             # index within the reduced curve before removal
    triangle: tuple[Point, Point, Point]
    area: Fraction
    local_pvar: float
    area_bound: float
    points_before: int
    existence_bound: float    # (2 / (points_before - 1)) * initial_pvar**p

    @property
    def signed_area(self) -> Fraction:
        a, b, c = self.triangle
        return ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)) / 2


@dataclass(frozen=True)
class ReductionCertificate:
    steps: tuple[RemovalStep, ...]
    initial_pvar: float
    p: float
    q: float
    final_vertices: tuple[Point, ...] = field(default=())

    def telescoping_sum(self, q: Optional[float] = None) -> float:
        q = self.q if q is None else q
        return math.fsum(float(s.area) ** (1 / q) for s in self.steps)

    def cascade_sum(self, q: Optional[float] = None) -> float:
        """Sum over steps of (1/2)^(1/q) * (initial_pvar^p / (k-1))^(2/(pq))."""
        q = self.q if q is None else q
        base = self.initial_pvar ** self.p
        return math.fsum(
            0.5 ** (1 / q) * (base / (s.points_before - 1)) ** (2 / (self.p * q)) for s in self.steps
        )

    def digest(self) -> str:
        payload = [
            [s.removed_index, str(s.area), repr(s.local_pvar), s.points_before] for s in self.steps
        ]
        blob = json.dumps([repr(self.p), repr(self.initial_pvar), payload], separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _norm2(a: Point, b: Point) -> Fraction:
    dx, dy = b.x - a.x, b.y - a.y
    return dx * dx + dy * dy


def _window(prev: Point, mid: Point, nxt: Point, p: float) -> float:
    """(max(|a|^p + |b|^p, |a+b|^p))^(1/p) for the polyline prev -> mid -> nxt."""
    a = float(_norm2(prev, mid)) ** (p / 2)
    b = float(_norm2(mid, nxt)) ** (p / 2)
    c = float(_norm2(prev, nxt)) ** (p / 2)
    return max(a + b, c) ** (1 / p)


def _vertices(curve: ClosedCurve | Sequence[Point]) -> Sequence[Point]:
    return curve.vertices if isinstance(curve, ClosedCurve) else curve


def local_pvar_after_removal_window(curve: ClosedCurve | Sequence[Point], j: int, p: float) -> float:
    """p-variation of the two edges around vertex ``j`` (the basepoint is excluded)."""
    check_p(p)
    v = _vertices(curve)
    k = len(v)
    if k < 3:
        raise ValueError("window needs at least 3 vertices")
    if not 0 < j < k:
        raise ValueError(f"vertex {j} is not an interior vertex (basepoint 0 is never removed)")
    return _window(v[j - 1], v[j], v[(j + 1) % k], p)


def find_removal_point(
    curve: ClosedCurve | Sequence[Point], p: float, reference_pvar: Optional[float] = None
) -> int:
    """Interior vertex with the smallest window p-variation (lowest index on ties).

    Raises :class:`TheoremViolation` if even that window exceeds
    ``(2/(k-1)) * reference_pvar**p``; ``reference_pvar`` defaults to the
    curve's own p-variation.
    """
    check_p(p)
    v = _vertices(curve)
    k = len(v)
    if k < 3:
        raise ValueError("need at least 3 vertices to remove one")
    if reference_pvar is None:
        reference_pvar = p_variation(ClosedCurve(v), p)
    windows = [_window(v[j - 1], v[j], v[(j + 1) % k], p) for j in range(1, k)]
    best = min(range(len(windows)), key=lambda i: (windows[i], i))
    bound = 2 / (k - 1) * reference_pvar ** p
    if windows[best] ** p > bound * (1 + STEP_TOL):
        raise TheoremViolation(
            f"no removable vertex among {k - 1}: min window^p {windows[best] ** p!r} > {bound!r}"
        )
    return best + 1


def reduce(curve: ClosedCurve, params: BoundParams) -> ReductionCertificate:
    """Remove vertices until two remain, recording each step."""
    p = params.p
    initial = p_variation(curve, p)
    current = list(curve.vertices)
    original = list(range(len(current)))
    steps: list[RemovalStep] = []
    while len(current) > 2:
        k = len(current)
        j = find_removal_point(current, p, initial)
        prev, mid, nxt = current[j - 1], current[j], current[(j + 1) % k]
        local = _window(prev, mid, nxt, p)
        area = abs((mid.x - prev.x) * (nxt.y - prev.y) - (mid.y - prev.y) * (nxt.x - prev.x)) / 2
        steps.append(RemovalStep(
            removed_index=original[j],
            position=j,
            triangle=(prev, mid, nxt),
            area=area,
            local_pvar=local,
            area_bound=local * local / (2 * 2 ** (2 / p)),
            points_before=k,
            existence_bound=2 / (k - 1) * initial ** p,
        ))
        del current[j]
        del original[j]
    return ReductionCertificate(tuple(steps), initial, p, params.q, tuple(current))


def rhs_bound(params: BoundParams, pvar: float) -> float:
    """(1/2)^(1/q) * (zeta(2/(pq)) - 1) * pvar^(2/q)."""
    if pvar < 0:
        raise ValueError("p-variation cannot be negative")
    z = zeta(params.zeta_arg).value
    return 0.5 ** (1 / params.q) * (z - 1) * pvar ** (2 / params.q)


@dataclass(frozen=True)
class InequalityReport:
    params: BoundParams
    lhs: float
    rhs: float
    ratio: float
    telescoping_sum: float
    cascade_sum: float
    pvar: float
    passed: bool
    chain_ok: bool
    certificate: ReductionCertificate
    lhs_norm: LqNorm

    @property
    def steps(self) -> int:
        return len(self.certificate.steps)


def check_inequality(
    curve: ClosedCurve,
    params: BoundParams,
    *,
    field: Optional[WindingField] = None,
    certificate: Optional[ReductionCertificate] = None,
    rhs_scale: float = 1.0,
) -> InequalityReport:
    """Evaluate both sides of the bound for a polygonal curve.

    ``field`` and ``certificate`` may be passed in to reuse work across q
    values. ``rhs_scale`` exists to corrupt the right-hand side on purpose
    when testing the harness.
    """
    if field is None:
        field = winding_field(curve)
    if certificate is None or certificate.p != params.p:
        certificate = reduce(curve, params)
    norm = lq_norm(field, params.q)
    pvar = certificate.initial_pvar
    rhs = rhs_bound(params, pvar) * rhs_scale
    lhs = norm.value
    tele = certificate.telescoping_sum(params.q)
    cascade = certificate.cascade_sum(params.q)
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf)
    passed = lhs <= rhs * (1 + REL_TOL)
    chain_ok = (
        lhs <= tele * (1 + REL_TOL)
        and tele <= cascade * (1 + REL_TOL)
        and cascade <= rhs / rhs_scale * (1 + REL_TOL)
    )
    return InequalityReport(params, lhs, rhs, ratio, tele, cascade, pvar, passed, chain_ok, certificate, norm)

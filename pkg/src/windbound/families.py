"""Deterministic curve families and the (p, q) sweep harness."""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Optional

from .curve import ClosedCurve
from .geom import Point
from .rng import Pcg64Stream
from .winding import winding_field
from .young import BoundParams, InequalityReport, TheoremViolation, check_inequality, reduce

FAMILIES = ("regular_polygon", "closed_random_walk", "star_polygon", "figure_eight", "perturbed_polygon")
WALK_DENOM = 1 << 16
PERTURB_NUM = 1 << 13      # perturbation amplitude 2**13 / 2**16 = 1/8
MAX_ATTEMPTS = 16
DEFAULT_GUARD = 0.05


class FamilyError(ValueError):
    pass


class SweepFailure(AssertionError):
    """A (curve, p, q) triple failed the bound."""


@lru_cache(maxsize=None)
def _polygon_table() -> tuple[int, dict[int, tuple[tuple[int, int], ...]]]:
    raw = json.loads(resources.files("windbound").joinpath("data/regular_polygons.json").read_text())
    polys = {int(n): tuple(tuple(v) for v in verts) for n, verts in raw["polygons"].items()}
    return raw["denominator"], polys


def regular_polygon_vertices(n: int) -> list[Point]:
    """Unit-circumradius n-gon from the pinned table (coordinates on a 2**-20 grid)."""
    denom, polys = _polygon_table()
    if n not in polys:
        raise FamilyError(f"regular polygons are tabulated for n in 3..64, got {n}")
    return [Point(Fraction(x, denom), Fraction(y, denom)) for x, y in polys[n]]


def default_star_step(n: int) -> int:
    for s in range(2, (n + 1) // 2):
        if math.gcd(n, s) == 1:
            return s
    raise FamilyError(f"no star polygon exists with {n} points")


def _collapse(verts: list[Point]) -> list[Point]:
    out: list[Point] = []
    for v in verts:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[-1] == out[0]:
        out.pop()
    return out


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    seed: int = 0
    scale: Fraction = Fraction(1)
    step: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.family not in FAMILIES:
            raise FamilyError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.scale <= 0:
            raise FamilyError("scale must be positive")
        lo = {"figure_eight": 4, "star_polygon": 5}.get(self.family, 3)
        if self.n < lo:
            raise FamilyError(f"{self.family} needs n >= {lo}, got {self.n}")
        if self.family in ("regular_polygon", "star_polygon", "perturbed_polygon") and self.n > 64:
            raise FamilyError(f"{self.family} is tabulated up to n = 64, got {self.n}")
        if self.family == "star_polygon":
            step = default_star_step(self.n) if self.step is None else self.step
            if not 2 <= step <= self.n - 2 or math.gcd(self.n, step) != 1:
                raise FamilyError(f"star polygon needs 2 <= step <= n-2 and gcd(n, step) = 1, got n={self.n}, step={step}")
        elif self.step is not None:
            raise FamilyError("--step only applies to star_polygon")

    def label(self) -> str:
        return f"{self.family}(n={self.n}, seed={self.seed})"


def _figure_eight(n: int) -> list[Point]:
    corners = [Point(0, 0), Point(1, 1), Point(1, 0), Point(0, 1)]
    out: list[Point] = []
    for e in range(4):
        pieces = n // 4 + (1 if e < n % 4 else 0)
        a, b = corners[e], corners[(e + 1) % 4]
        for i in range(pieces):
            t = Fraction(i, pieces)
            out.append(Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
    return out


def _random_walk(n: int, stream: Pcg64Stream) -> list[Point]:
    x = y = 0
    verts = [Point(0, 0)]
    for _ in range(n - 1):
        x += stream.between(-WALK_DENOM, WALK_DENOM)
        y += stream.between(-WALK_DENOM, WALK_DENOM)
        verts.append(Point(Fraction(x, WALK_DENOM), Fraction(y, WALK_DENOM)))
    return verts


def _perturbed(n: int, stream: Pcg64Stream) -> list[Point]:
    out = []
    for v in regular_polygon_vertices(n):
        dx = Fraction(stream.between(-PERTURB_NUM, PERTURB_NUM), WALK_DENOM)
        dy = Fraction(stream.between(-PERTURB_NUM, PERTURB_NUM), WALK_DENOM)
        out.append(Point(v.x + dx, v.y + dy))
    return out


def generate(spec: FamilySpec) -> ClosedCurve:
    """Build the curve described by ``spec``; the seed alone fixes random families."""
    for attempt in range(MAX_ATTEMPTS):
        if spec.family == "regular_polygon":
            verts = regular_polygon_vertices(spec.n)
        elif spec.family == "star_polygon":
            base = regular_polygon_vertices(spec.n)
            step = spec.step or default_star_step(spec.n)
            verts = [base[(i * step) % spec.n] for i in range(spec.n)]
        elif spec.family == "figure_eight":
            verts = _figure_eight(spec.n)
        elif spec.family == "closed_random_walk":
            verts = _random_walk(spec.n, Pcg64Stream(spec.seed, attempt))
        else:
            verts = _perturbed(spec.n, Pcg64Stream(spec.seed, attempt))
        verts = _collapse([v.scale(spec.scale) for v in verts])
        if len(verts) >= 3:
            return ClosedCurve(verts)
    raise FamilyError(f"{spec.label()} stayed degenerate after {MAX_ATTEMPTS} attempts")


@dataclass(frozen=True)
class SweepConfig:
    families: tuple[FamilySpec, ...]
    p_grid: tuple[float, ...]
    q_points: int = 4
    guard: float = DEFAULT_GUARD

    def __post_init__(self):
        object.__setattr__(self, "families", tuple(self.families))
        object.__setattr__(self, "p_grid", tuple(float(p) for p in self.p_grid))
        if self.q_points < 1:
            raise ValueError("q_points must be >= 1")
        if not self.guard > 0:
            raise ValueError("guard must be positive")
        for p in self.p_grid:
            for q in self.q_grid(p):
                BoundParams(p, q)

    def q_grid(self, p: float) -> list[float]:
        """Evenly spaced q values on [1, 2/p - guard] (empty if that range is empty)."""
        hi = 2 / p - self.guard
        if hi < 1:
            return []
        if self.q_points == 1 or hi == 1:
            return [1.0]
        return [1 + (hi - 1) * i / (self.q_points - 1) for i in range(self.q_points)]


ACCEPTANCE_NS = (8, 16, 32, 64)
ACCEPTANCE_PS = (1.0, 1.25, 1.5, 1.75, 1.9)
ACCEPTANCE_SEED = 20240917


def acceptance_config() -> SweepConfig:
    specs = [FamilySpec(f, n, ACCEPTANCE_SEED) for f in FAMILIES for n in ACCEPTANCE_NS]
    return SweepConfig(tuple(specs), ACCEPTANCE_PS, q_points=4, guard=DEFAULT_GUARD)


@dataclass(frozen=True)
class SweepRow:
    spec: FamilySpec
    report: InequalityReport


def _run_curve(args) -> list[SweepRow]:
    spec, p_grid, q_grids, rhs_scale = args
    curve = generate(spec)
    fld = winding_field(curve)
    rows = []
    for p, qs in zip(p_grid, q_grids):
        if not qs:
            continue
        try:
            cert = reduce(curve, BoundParams(p, qs[0]))
        except TheoremViolation as exc:
            raise TheoremViolation(f"{spec.label()}, p={p}: {exc}") from exc
        for q in qs:
            rep = check_inequality(curve, BoundParams(p, q), field=fld, certificate=cert, rhs_scale=rhs_scale)
            rows.append(SweepRow(spec, rep))
    return rows


def sweep(
    config: SweepConfig,
    *,
    workers: int = 1,
    strict: bool = True,
    rhs_scale: float = 1.0,
) -> list[SweepRow]:
    """One row per (curve, p, q), ordered by family spec, then p, then q.

    With ``strict`` a failing row raises :class:`SweepFailure` naming the
    triple; otherwise failing rows are returned for the caller to report.
    """
    q_grids = [config.q_grid(p) for p in config.p_grid]
    jobs = [(spec, config.p_grid, q_grids, rhs_scale) for spec in config.families]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_curve, jobs))
    else:
        chunks = [_run_curve(job) for job in jobs]
    rows = [row for chunk in chunks for row in chunk]
    if strict:
        for row in rows:
            if not row.report.passed:
                r = row.report
                raise SweepFailure(
                    f"{row.spec.label()}, p={r.params.p}, q={r.params.q}: lhs {r.lhs!r} > rhs {r.rhs!r}"
                )
    return rows


def spec_to_dict(spec: FamilySpec) -> dict:
    out = {"family": spec.family, "n": spec.n, "seed": spec.seed, "scale": str(spec.scale)}
    if spec.step is not None:
        out["step"] = spec.step
    return out


def spec_from_dict(doc: dict) -> FamilySpec:
    return FamilySpec(
        family=str(doc["family"]).replace("-", "_"),
        n=int(doc["n"]),
        seed=int(doc.get("seed", 0)),
        scale=Fraction(str(doc.get("scale", "1"))),
        step=doc.get("step"),
    )


def config_from_dict(doc: dict) -> SweepConfig:
    return SweepConfig(
        families=tuple(spec_from_dict(d) for d in doc.get("families", [])),
        p_grid=tuple(doc.get("p_grid", ())),
        q_points=int(doc.get("q_points", 4)),
        guard=float(doc.get("guard", DEFAULT_GUARD)),
    )


def config_to_dict(config: SweepConfig) -> dict:
    return {
        "families": [spec_to_dict(s) for s in config.families],
        "p_grid": list(config.p_grid),
        "q_points": config.q_points,
        "guard": config.guard,
    }

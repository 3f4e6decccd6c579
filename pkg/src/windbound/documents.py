"""JSON documents (curves, fields, reports), sweep CSV and PPM heatmaps."""

from __future__ import annotations

import bisect
import csv
import io
import json
import math
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

import jsonschema

from . import __version__
from .curve import ClosedCurve
from .geom import Point, format_rational, parse_rational
from .winding import WindingField
from .young import InequalityReport

CURVE_VERSION = 1
FIELD_VERSION = 1
REPORT_VERSION = 1
CSV_HEADER = ("family", "n", "seed", "p", "q", "pvar", "lhs", "rhs", "ratio", "steps", "pass")


class DocumentError(ValueError):
    pass


def _schema(name: str) -> dict:
    return json.loads(resources.files("windbound").joinpath(f"data/{name}.schema.json").read_text())


def validate(doc: dict, kind: str) -> None:
    """Validate ``doc`` against the bundled schema ``kind`` (curve, field, report)."""
    try:
        jsonschema.validate(doc, _schema(kind))
    except jsonschema.ValidationError as exc:
        raise DocumentError(f"invalid {kind} document: {exc.message}") from exc


def fmt17(x: float) -> str:
    return format(x, ".17g")


def dumps(doc, float_keys: Iterable[str] = (), indent: Optional[int] = 2) -> str:
    """``json.dumps`` that writes the floats under ``float_keys`` with 17 significant digits."""
    keys = set(float_keys)
    tokens: dict[str, str] = {}

    def mark(obj):
        if isinstance(obj, dict):
            out = {}
            for k, v in obj.items():
                if k in keys and isinstance(v, float) and math.isfinite(v):
                    tok = f"@@f{len(tokens)}@@"
                    tokens[tok] = fmt17(v)
                    out[k] = tok
                else:
                    out[k] = mark(v)
            return out
        if isinstance(obj, list):
            return [mark(v) for v in obj]
        if isinstance(obj, float) and not math.isfinite(obj):
            return None
        return obj

    text = json.dumps(mark(doc), indent=indent)
    for tok, val in tokens.items():
        text = text.replace(f'"{tok}"', val)
    return text + "\n"


# -- curves -----------------------------------------------------------------

def curve_to_doc(curve: ClosedCurve) -> dict:
    return {
        "version": CURVE_VERSION,
        "vertices": [[format_rational(v.x), format_rational(v.y)] for v in curve.vertices],
    }


def dumps_curve(curve: ClosedCurve) -> str:
    """Curve document with one vertex per line."""
    doc = curve_to_doc(curve)
    rows = ",\n".join("    " + json.dumps(v) for v in doc["vertices"])
    return f'{{\n  "version": {doc["version"]},\n  "vertices": [\n{rows}\n  ]\n}}\n'


def curve_from_doc(doc: dict) -> ClosedCurve:
    validate(doc, "curve")
    try:
        return ClosedCurve(Point(parse_rational(x), parse_rational(y)) for x, y in doc["vertices"])
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def read_curve(path: str | Path) -> ClosedCurve:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON ({exc})") from exc
    return curve_from_doc(doc)


def write_text(path: Optional[str | Path], text: str, stream=None) -> None:
    if path is None or str(path) == "-":
        (stream or sys.stdout).write(text)
    else:
        Path(path).write_text(text)


# -- winding fields ---------------------------------------------------------

def field_to_doc(field: WindingField) -> dict:
    lo, hi = field.bbox
    return {
        "version": FIELD_VERSION,
        "bbox": [[format_rational(lo.x), format_rational(lo.y)], [format_rational(hi.x), format_rational(hi.y)]],
        "cells": [
            {
                "polygon": [[format_rational(v.x), format_rational(v.y)] for v in c.polygon],
                "winding": c.winding,
                "area": format_rational(c.area),
            }
            for c in field.cells
        ],
    }


# -- reports ----------------------------------------------------------------

REPORT_FLOATS = ("lhs", "rhs", "ratio")


def report_to_doc(report: InequalityReport, curve_source: Optional[str] = None) -> dict:
    cert = report.certificate
    p = report.params.p
    steps = [
        {
            "removed_index": s.removed_index,
            "points_before": s.points_before,
            "area": format_rational(s.area),
            "local_pvar": s.local_pvar,
            "area_margin": s.area_bound - float(s.area),
            "existence_margin": s.existence_bound - s.local_pvar ** p,
        }
        for s in cert.steps
    ]
    doc = {
        "version": REPORT_VERSION,
        "tool": f"windbound {__version__}",
        "curve": curve_source,
        "p": p,
        "q": report.params.q,
        "pvar": report.pvar,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "ratio": report.ratio,
        "telescoping_sum": report.telescoping_sum,
        "cascade_sum": report.cascade_sum,
        "pass": report.passed,
        "chain_ok": report.chain_ok,
        "lhs_exact_integral": (
            format_rational(report.lhs_norm.integral_exact)
            if report.lhs_norm.integral_exact is not None else None
        ),
        "area_by_abs_winding": {str(k): format_rational(a) for k, a in report.lhs_norm.exact_sum.items()},
        "certificate": {
            "digest": cert.digest(),
            "initial_pvar": cert.initial_pvar,
            "step_count": len(cert.steps),
            "max_step_area": format_rational(max((s.area for s in cert.steps), default=Fraction(0))),
            "min_area_margin": min((s["area_margin"] for s in steps), default=None),
            "min_existence_margin": min((s["existence_margin"] for s in steps), default=None),
            "steps": steps,
        },
    }
    return doc


def dumps_report(doc: dict) -> str:
    return dumps(doc, REPORT_FLOATS)


# -- sweep CSV --------------------------------------------------------------

def sweep_csv(rows: Sequence) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        r = row.report
        w.writerow([
            row.spec.family, row.spec.n, row.spec.seed,
            fmt17(r.params.p), fmt17(r.params.q), fmt17(r.pvar),
            fmt17(r.lhs), fmt17(r.rhs), fmt17(r.ratio), r.steps,
            "true" if r.passed else "false",
        ])
    return buf.getvalue()


# -- heatmaps ---------------------------------------------------------------

SATURATION = 5


def winding_color(k: int) -> tuple[int, int, int]:
    """White at 0, blue ramp for positive, red ramp for negative, saturated at |k| = 5."""
    m = min(abs(k), SATURATION)
    fade = 255 * (SATURATION - m) // SATURATION
    if k > 0:
        return (fade, fade, 255)
    if k < 0:
        return (255, fade, fade)
    return (255, 255, 255)


ON_CURVE = (0, 0, 0)


def heatmap_window(curve: ClosedCurve) -> tuple[Point, Point]:
    """Curve bounding box padded by a quarter of its larger side."""
    lo, hi = curve.bbox()
    pad = max(hi.x - lo.x, hi.y - lo.y) / 4
    return Point(lo.x - pad, lo.y - pad), Point(hi.x + pad, hi.y + pad)


def pixel_center(window: tuple[Point, Point], width: int, height: int, i: int, j: int) -> Point:
    lo, hi = window
    x = lo.x + (hi.x - lo.x) * Fraction(2 * i + 1, 2 * width)
    y = hi.y - (hi.y - lo.y) * Fraction(2 * j + 1, 2 * height)
    return Point(x, y)


def _row_windings(edges, y: Fraction, xs: list[Fraction]) -> list[Optional[int]]:
    """Exact winding at (x, y) for each sorted x; None where the point is on the curve."""
    crossings: list[tuple[Fraction, int]] = []
    touches: list[tuple[Fraction, Fraction]] = []
    for a, b in edges:
        if min(a.y, b.y) <= y <= max(a.y, b.y):
            if a.y == b.y:
                touches.append((min(a.x, b.x), max(a.x, b.x)))
            else:
                xc = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y)
                touches.append((xc, xc))
        a_up, b_up = a.y > y, b.y > y
        if a_up != b_up:
            xc = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y)
            crossings.append((xc, 1 if b_up else -1))
    crossings.sort()
    cx = [c[0] for c in crossings]
    suffix = [0] * (len(crossings) + 1)
    for k in range(len(crossings) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + crossings[k][1]
    out: list[Optional[int]] = []
    for x in xs:
        if any(lo <= x <= hi for lo, hi in touches):
            out.append(None)
        else:
            out.append(suffix[bisect.bisect_right(cx, x)])
    return out


def heatmap_windings(curve: ClosedCurve, width: int, height: int) -> list[list[Optional[int]]]:
    """Row-major (top row first) exact windings at pixel centers; None on the curve."""
    if width < 1 or height < 1:
        raise ValueError("resolution must be positive")
    window = heatmap_window(curve)
    edges = curve.edges()
    xs = [pixel_center(window, width, height, i, 0).x for i in range(width)]
    rows = []
    for j in range(height):
        y = pixel_center(window, width, height, 0, j).y
        rows.append(_row_windings(edges, y, xs))
    return rows


def render_ppm(curve: ClosedCurve, width: int, height: int) -> bytes:
    body = bytearray()
    for row in heatmap_windings(curve, width, height):
        for k in row:
            body.extend(ON_CURVE if k is None else winding_color(k))
    return f"P6 {width} {height} 255\n".encode("ascii") + bytes(body)

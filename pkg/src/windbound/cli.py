"""Command-line interface.

Exit codes: 0 pass, 1 inequality failed, 2 usage or domain error,
3 a cascade bound that must always hold was violated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .documents import (
    DocumentError,
    dumps_curve,
    dumps,
    dumps_report,
    field_to_doc,
    read_curve,
    render_ppm,
    report_to_doc,
    sweep_csv,
    write_text,
)
from .families import (
    DEFAULT_GUARD,
    FAMILIES,
    FamilyError,
    FamilySpec,
    SweepConfig,
    acceptance_config,
    config_from_dict,
    generate,
    sweep,
)
from .geom import parse_rational
from .winding import winding_field
from .young import BoundParams, TheoremViolation, check_inequality

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_THEOREM = 0, 1, 2, 3

FAMILY_ALIASES = {
    "regular-polygon": "regular_polygon",
    "closed-random-walk": "closed_random_walk",
    "star": "star_polygon",
    "star-polygon": "star_polygon",
    "figure-eight": "figure_eight",
    "perturbed-polygon": "perturbed_polygon",
    **{f: f for f in FAMILIES},
}


def _family(name: str) -> str:
    try:
        return FAMILY_ALIASES[name]
    except KeyError:
        raise argparse.ArgumentTypeError(
            f"unknown family {name!r} (choose from {', '.join(sorted(k for k in FAMILY_ALIASES if '-' in k or k == 'star'))})"
        ) from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fail(msg: str, code: int) -> int:
    print(f"windbound: {msg}", file=sys.stderr)
    return code


def cmd_gen(args) -> int:
    try:
        spec = FamilySpec(args.family, args.n, args.seed, args.scale, args.step)
        curve = generate(spec)
    except FamilyError as exc:
        return _fail(str(exc), EXIT_USAGE)
    write_text(args.output, dumps_curve(curve))
    return EXIT_PASS


def _params(p: float, q: float, guard: float) -> BoundParams:
    if not 1 <= p < 2:
        raise ValueError(f"p must lie in [1, 2), got {p}")
    limit = 2 / p - guard
    if not 1 <= q <= limit:
        raise ValueError(f"q must lie in [1, 2/p - guard] = [1, {limit:.6g}], got {q}")
    return BoundParams(p, q)


def cmd_check(args) -> int:
    try:
        params = _params(args.p, args.q, args.guard)
        curve = read_curve(args.curve)
    except (ValueError, OSError) as exc:
        return _fail(str(exc), EXIT_USAGE)
    try:
        report = check_inequality(curve, params)
    except TheoremViolation as exc:
        return _fail(f"THEOREM VIOLATION: {exc}", EXIT_THEOREM)
    write_text(args.output, dumps_report(report_to_doc(report, str(args.curve))))
    print(
        f"lhs={report.lhs:.17g} rhs={report.rhs:.17g} ratio={report.ratio:.6g} "
        f"steps={report.steps} {'PASS' if report.passed else 'FAIL'}",
        file=sys.stderr,
    )
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_field(args) -> int:
    try:
        curve = read_curve(args.curve)
    except (ValueError, OSError) as exc:
        return _fail(str(exc), EXIT_USAGE)
    width, height = args.resolution
    if width < 1 or height < 1:
        return _fail("--resolution needs positive W and H", EXIT_USAGE)
    if args.output is not None or args.heatmap is None:
        write_text(args.output, dumps(field_to_doc(winding_field(curve)), indent=None))
    if args.heatmap is not None:
        Path(args.heatmap).write_bytes(render_ppm(curve, width, height))
    return EXIT_PASS


def _sweep_config(args) -> SweepConfig:
    if args.config is not None:
        return config_from_dict(json.loads(Path(args.config).read_text()))
    if args.acceptance:
        return acceptance_config()
    specs = [
        FamilySpec(fam, n, args.seed, args.scale)
        for fam in (args.family or [])
        for n in (args.n or [])
    ]
    return SweepConfig(tuple(specs), tuple(args.p or ()), q_points=args.q_points, guard=args.guard)


def cmd_sweep(args) -> int:
    try:
        config = _sweep_config(args)
    except (ValueError, OSError, KeyError) as exc:
        return _fail(str(exc), EXIT_USAGE)
    workers = args.workers if args.workers > 0 else (os.cpu_count() or 1)
    try:
        rows = sweep(config, workers=workers, strict=False, rhs_scale=args.rhs_scale)
    except TheoremViolation as exc:
        return _fail(f"THEOREM VIOLATION: {exc}", EXIT_THEOREM)
    write_text(args.output, sweep_csv(rows))
    failing = [r for r in rows if not r.report.passed]
    for r in failing:
        rep = r.report
        print(
            f"FAIL {r.spec.label()} p={rep.params.p:.17g} q={rep.params.q:.17g} "
            f"lhs={rep.lhs:.17g} rhs={rep.rhs:.17g}",
            file=sys.stderr,
        )
    max_ratio = max((r.report.ratio for r in rows), default=0.0)
    print(f"rows={len(rows)} failed={len(failing)} max_ratio={max_ratio:.17g}", file=sys.stderr)
    return EXIT_FAIL if failing else EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="windbound", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"windbound {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a curve document for a generated family member")
    g.add_argument("--family", type=_family, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--scale", type=_rational, default=Fraction(1))
    g.add_argument("--step", type=int, default=None, help="star polygon step")
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="evaluate both sides of the bound for a curve")
    c.add_argument("curve")
    c.add_argument("--p", type=float, required=True)
    c.add_argument("--q", type=float, required=True)
    c.add_argument("--guard", type=float, default=DEFAULT_GUARD)
    c.add_argument("-o", "--output", default=None)
    c.set_defaults(func=cmd_check)

    f = sub.add_parser("field", help="write the winding field and/or a PPM heatmap")
    f.add_argument("curve")
    f.add_argument("-o", "--output", default=None)
    f.add_argument("--heatmap", default=None)
    f.add_argument("--resolution", type=int, nargs=2, metavar=("W", "H"), default=(64, 64))
    f.set_defaults(func=cmd_field)

    s = sub.add_parser("sweep", help="check the bound over a grid of curves, p and q")
    s.add_argument("--config", default=None, help="JSON sweep configuration")
    s.add_argument("--acceptance", action="store_true", help="use the built-in acceptance grid")
    s.add_argument("--family", type=_family, action="append")
    s.add_argument("--n", type=int, nargs="+")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--scale", type=_rational, default=Fraction(1))
    s.add_argument("--p", type=float, nargs="+")
    s.add_argument("--q-points", type=int, default=4)
    s.add_argument("--guard", type=float, default=DEFAULT_GUARD)
    s.add_argument("--workers", type=int, default=1, help="processes; 0 means one per CPU")
    s.add_argument("--rhs-scale", type=float, default=1.0, help="debug: multiply the right-hand side (harness self-test)")
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        return _fail(str(exc), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())

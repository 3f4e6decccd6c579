import math
from fractions import Fraction as F

import pytest

from windbound.curve import ClosedCurve
from windbound.documents import read_curve
from windbound.families import (
    FAMILIES,
    FamilyError,
    FamilySpec,
    SweepConfig,
    SweepFailure,
    acceptance_config,
    config_from_dict,
    config_to_dict,
    default_star_step,
    generate,
    regular_polygon_vertices,
    spec_from_dict,
    sweep,
)
from windbound.geom import Point
from windbound.rng import Pcg64Stream
from windbound.winding import winding_at


class TestStream:
    def test_raw_vectors(self):
        assert [int(x) for x in Pcg64Stream(42).raw(3)] == [
            14276969152011380360, 8095878257575067585, 15838336090824644132,
        ]

    def test_substreams_differ(self):
        a = [int(x) for x in Pcg64Stream(42, 1).raw(4)]
        b = [int(x) for x in Pcg64Stream(42, 2).raw(4)]
        assert a != b

    def test_between(self):
        s = Pcg64Stream(7)
        assert [s.between(-3, 3) for _ in range(10)] == [0, 1, -1, 0, -1, -3, 0, -1, 0, -2]

    def test_below_range(self):
        s = Pcg64Stream(1)
        vals = [s.below(5) for _ in range(2000)]
        assert set(vals) == {0, 1, 2, 3, 4}
        with pytest.raises(ValueError):
            s.below(0)


class TestRegularTable:
    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 12, 17, 64])
    def test_close_to_circle(self, n):
        for k, v in enumerate(regular_polygon_vertices(n)):
            assert abs(float(v.x) - math.cos(2 * math.pi * k / n)) <= 2 ** -20
            assert abs(float(v.y) - math.sin(2 * math.pi * k / n)) <= 2 ** -20

    def test_out_of_table(self):
        with pytest.raises(FamilyError):
            regular_polygon_vertices(65)

    def test_square_exact(self):
        verts = regular_polygon_vertices(4)
        assert verts[0].x == 1 and verts[0].y == 0 and verts[2].x == -1


class TestGenerate:
    def test_golden_random_walk(self, golden_dir):
        assert generate(FamilySpec("closed_random_walk", 10, 42)) == read_curve(golden_dir / "random_walk_n10_seed42.json")

    @pytest.mark.parametrize("family", FAMILIES)
    def test_deterministic(self, family):
        spec = FamilySpec(family, 16, 3)
        assert generate(spec) == generate(spec)

    def test_seed_matters(self):
        assert generate(FamilySpec("closed_random_walk", 16, 1)) != generate(FamilySpec("closed_random_walk", 16, 2))
        assert generate(FamilySpec("perturbed_polygon", 16, 1)) != generate(FamilySpec("perturbed_polygon", 16, 2))

    def test_seed_ignored_for_fixed_families(self):
        for family in ("regular_polygon", "star_polygon", "figure_eight"):
            assert generate(FamilySpec(family, 12, 1)) == generate(FamilySpec(family, 12, 99))

    @pytest.mark.parametrize("family", FAMILIES)
    @pytest.mark.parametrize("n", [8, 16, 32, 64])
    def test_valid_curves(self, family, n):
        c = generate(FamilySpec(family, n, 5))
        assert isinstance(c, ClosedCurve) and len(c) >= 3
        if family != "figure_eight":
            assert len(c) == n

    def test_scale(self):
        a = generate(FamilySpec("regular_polygon", 6))
        b = generate(FamilySpec("regular_polygon", 6, scale=F(3)))
        assert b == a.scaled(3)

    def test_star_winds_twice(self):
        c = generate(FamilySpec("star_polygon", 5))
        assert default_star_step(5) == 2
        assert winding_at(c, Point(0, 0)) == 2

    def test_figure_eight_lobes(self):
        c = generate(FamilySpec("figure_eight", 16))
        assert len(c) == 16
        assert winding_at(c, Point(F(1, 4), F(1, 2))) == 1
        assert winding_at(c, Point(F(3, 4), F(1, 2))) == -1

    @pytest.mark.parametrize("kwargs", [
        dict(family="star_polygon", n=4),
        dict(family="star_polygon", n=6, step=3),
        dict(family="star_polygon", n=8, step=2),
        dict(family="regular_polygon", n=2),
        dict(family="regular_polygon", n=65),
        dict(family="nope", n=8),
        dict(family="regular_polygon", n=8, step=3),
        dict(family="regular_polygon", n=8, scale=0),
    ])
    def test_bad_specs(self, kwargs):
        with pytest.raises(FamilyError):
            FamilySpec(**kwargs)

    def test_spec_from_dict_accepts_hyphens(self):
        s = spec_from_dict({"family": "closed-random-walk", "n": 8, "seed": 3, "scale": "1/2"})
        assert s == FamilySpec("closed_random_walk", 8, 3, F(1, 2))


class TestSweep:
    def test_q_grid(self):
        cfg = SweepConfig((), (1.0,), q_points=4, guard=0.05)
        assert cfg.q_grid(1.0) == pytest.approx([1.0, 1 + 0.95 / 3, 1 + 1.9 / 3, 1.95])
        assert cfg.q_grid(1.9) == [1.0, 1 + (2 / 1.9 - 0.05 - 1) / 3, 1 + 2 * (2 / 1.9 - 0.05 - 1) / 3, 2 / 1.9 - 0.05]

    def test_q_grid_empty_when_guard_too_big(self):
        assert SweepConfig((), (1.9,), guard=0.1).q_grid(1.9) == []

    def test_acceptance_shape(self):
        cfg = acceptance_config()
        assert len(cfg.families) == 20
        assert sum(len(cfg.q_grid(p)) for p in cfg.p_grid) == 20

    def test_row_order(self):
        specs = (FamilySpec("regular_polygon", 8), FamilySpec("closed_random_walk", 8, 1))
        rows = sweep(SweepConfig(specs, (1.5, 1.0), q_points=2))
        keys = [(r.spec.family, r.report.params.p, r.report.params.q) for r in rows]
        assert [k[0] for k in keys] == ["regular_polygon"] * 4 + ["closed_random_walk"] * 4
        assert [k[1] for k in keys[:4]] == [1.5, 1.5, 1.0, 1.0]
        assert keys[0][2] == 1.0 < keys[1][2]

    def test_single_square(self):
        rows = sweep(SweepConfig((FamilySpec("regular_polygon", 4),), (1.0,), q_points=1))
        assert len(rows) == 1
        r = rows[0].report
        assert r.lhs == 2.0 and r.passed

    def test_empty(self):
        assert sweep(SweepConfig((), (1.0,))) == []

    def test_strict_failure(self):
        cfg = SweepConfig((FamilySpec("regular_polygon", 8),), (1.0,), q_points=1)
        with pytest.raises(SweepFailure):
            sweep(cfg, rhs_scale=0.01)
        rows = sweep(cfg, rhs_scale=0.01, strict=False)
        assert not rows[0].report.passed

    def test_parallel_matches_sequential(self):
        specs = tuple(FamilySpec(f, 8, 2) for f in FAMILIES)
        cfg = SweepConfig(specs, (1.0, 1.75), q_points=2)
        a = [(r.report.lhs, r.report.rhs) for r in sweep(cfg)]
        b = [(r.report.lhs, r.report.rhs) for r in sweep(cfg, workers=2)]
        assert a == b

    def test_config_round_trip(self):
        cfg = SweepConfig((FamilySpec("star_polygon", 7, step=3), FamilySpec("figure_eight", 8)), (1.0, 1.5), 3, 0.1)
        assert config_from_dict(config_to_dict(cfg)) == cfg

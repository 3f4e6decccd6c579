"""Exact winding fields and a verified L^q isoperimetric bound for closed polygons."""

__version__ = "0.1.0"

from .curve import ClosedCurve, DegenerateCurveError, Interval, Partition, concat, interpolate, p_variation, uniform_partition
from .families import FamilySpec, SweepConfig, generate, sweep
from .geom import Point, Segment, orient, polygon_signed_area, segment_intersection
from .winding import OnCurveError, WindingField, lq_norm, lq_norm_grid_oracle, winding_at, winding_field
from .young import BoundParams, TheoremViolation, check_inequality, find_removal_point, reduce, rhs_bound
from .zeta import zeta

__all__ = [
    "BoundParams", "ClosedCurve", "DegenerateCurveError", "FamilySpec", "Interval", "OnCurveError",
    "Partition", "Point", "Segment", "SweepConfig", "TheoremViolation", "WindingField", "check_inequality",
    "concat", "find_removal_point", "generate", "interpolate", "lq_norm", "lq_norm_grid_oracle", "orient",
    "p_variation", "polygon_signed_area", "reduce", "rhs_bound", "segment_intersection", "sweep",
    "uniform_partition", "winding_at", "winding_field", "zeta",
]

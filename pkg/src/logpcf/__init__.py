"""Pair correlation statistics of the low-dispersion sequence {log2(2n - 1)}."""

from .paircorr import CurveTable, PcfQuery, pcf_curve, pcf_fast, pcf_naive, torus_distance
from .seq import (
    DyadicExpansion,
    GapProfile,
    PointSet,
    Source,
    dispersion,
    dyadic_expansion,
    empirical_gaps,
    generate,
    generate_shifted,
    theoretical_gaps,
)
from .theory import (
    BoundsCertificate,
    NeighborCounts,
    PiecewiseLimit,
    f_limit,
    f_limit_floor,
    f_limit_piecewise,
    fixed_points,
    fn_bounds,
    weak_limit,
    weak_lower_bound,
)

__version__ = "0.1.0"

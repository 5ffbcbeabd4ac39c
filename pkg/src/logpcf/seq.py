"""The sequence x_n = {log2(2n - 1)}, its shifted ascending-gap form, and gap structure.

Gap indices follow the convention g_i = x_{i+1} - x_i for i < N and the
wrap gap g_N = x_1 + 1 - x_N on the sorted points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

LOG2 = math.log(2.0)
GAP_SUM_TOL = 1e-12


class Source(enum.Enum):
    LOG_SEQUENCE = "LogSequence"
    SHIFTED_ASCENDING = "ShiftedAscending"
    CUSTOM = "Custom"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class PointSet:
    """N points on the unit torus, stored sorted ascending."""

    points: np.ndarray
    source: Source = Source.CUSTOM
    n_points: int = field(init=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 1 or pts.size == 0:
            raise ValueError("a point set needs a non-empty 1-d array of points")
        if np.isnan(pts).any():
            raise ValueError("points must not be NaN")
        if (pts < 0.0).any() or (pts >= 1.0).any():
            raise ValueError("points must lie in [0, 1)")
        if (np.diff(pts) < 0).any():
            raise ValueError("points must be sorted ascending; use PointSet.from_values")
        if self.source is not Source.CUSTOM and pts.size >= 2 and (np.diff(pts) == 0).any():
            raise ValueError(f"duplicate points are only allowed for Custom sets, got {self.source.value}")
        object.__setattr__(self, "points", _frozen(pts))
        object.__setattr__(self, "n_points", int(pts.size))

    @classmethod
    def from_values(cls, values, source: Source = Source.CUSTOM) -> "PointSet":
        return cls(np.sort(np.asarray(values, dtype=np.float64)), source)

    def shifted(self, c: float) -> "PointSet":
        """Rotate every point by c on the torus; the result is a Custom set."""
        v = self.points + c
        v = v - np.floor(v)
        # x + c can round up to exactly 1.0
        v[v >= 1.0] = 0.0
        return PointSet.from_values(v)

    def __len__(self) -> int:
        return self.n_points


@dataclass(frozen=True)
class GapProfile:
    gaps: np.ndarray
    n_points: int = field(init=False)

    def __post_init__(self):
        g = np.asarray(self.gaps, dtype=np.float64)
        if g.ndim != 1 or g.size == 0:
            raise ValueError("a gap profile needs at least one gap")
        if not (g > 0).all():
            raise ValueError("every gap must be positive")
        total = math.fsum(g)
        if abs(total - 1.0) > GAP_SUM_TOL:
            raise ValueError(f"gaps must sum to 1 on the torus, got {total!r}")
        object.__setattr__(self, "gaps", _frozen(g))
        object.__setattr__(self, "n_points", int(g.size))

    def sorted(self) -> np.ndarray:
        return np.sort(self.gaps)


@dataclass(frozen=True)
class DyadicExpansion:
    """Binary expansion n = sum a_l 2^l with a_L = 1, and n0 = 2 (n - 2^L)."""

    coefficients: tuple[int, ...]
    top_index: int
    n0: int

    @property
    def value(self) -> int:
        return sum(a << l for l, a in enumerate(self.coefficients))


def dyadic_expansion(n: int) -> DyadicExpansion:
    _check_count(n, 1)
    top = n.bit_length() - 1
    bits = tuple((n >> l) & 1 for l in range(top + 1))
    return DyadicExpansion(bits, top, 2 * (n - (1 << top)))


def _check_count(n, minimum: int) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"point count must be an integer, got {type(n).__name__}")
    if n < minimum:
        raise ValueError(f"point count must be >= {minimum}, got {n}")


def generate(n: int) -> PointSet:
    """First n terms of {log(2k - 1) / log 2}, sorted."""
    _check_count(n, 1)
    k = np.arange(1, n + 1, dtype=np.float64)
    v = np.log(2.0 * k - 1.0) / LOG2
    return PointSet.from_values(v - np.floor(v), Source.LOG_SEQUENCE)


def generate_shifted(n: int) -> PointSet:
    """Rotated copy of ``generate(n)`` whose consecutive gaps increase from y_1 = 0.

    The i-th gap is log2((2n - i + 1) / (2n - i)); the cumulative sums are
    evaluated in telescoped form y_i = log2(2n / (2n - i + 1)).
    """
    _check_count(n, 2)
    i = np.arange(1, n + 1, dtype=np.float64)
    y = (math.log(2.0 * n) - np.log(2.0 * n - i + 1.0)) / LOG2
    y[0] = 0.0
    return PointSet(y, Source.SHIFTED_ASCENDING)


def empirical_gaps(ps: PointSet) -> GapProfile:
    if ps.n_points < 2:
        raise ValueError("gaps need at least two points")
    p = ps.points
    return GapProfile(np.append(np.diff(p), p[0] + 1.0 - p[-1]))


def theoretical_gaps(n: int) -> GapProfile:
    """Gaps from the 2-adic two-case formula, in formula index order i = 1..n.

    For n = 1 the formula yields the single gap of length 1.
    """
    d = dyadic_expansion(n)
    i = np.arange(1, n + 1, dtype=np.float64)
    base = np.where(i <= d.n0, float(2 ** (d.top_index + 1)), float(n - d.n0))
    return GapProfile((np.log(base + i) - np.log(base + i - 1.0)) / LOG2)


def dispersion(ps: PointSet) -> float:
    return float(empirical_gaps(ps).gaps.max())


def dispersion_formula(n: int) -> float:
    return (math.log(n + 1) - math.log(n)) / LOG2


def refinement_split(n: int) -> tuple[float, float, float]:
    """Length of the gap of ``generate(n - 1)`` that x_n falls into, and its two parts.

    Returns ``(parent, left, right)`` with ``left`` the piece below x_n.
    """
    _check_count(n, 3)
    prev = generate(n - 1).points
    v = math.log(2 * n - 1) / LOG2
    x = v - math.floor(v)
    j = int(np.searchsorted(prev, x, side="right"))
    if j == 0 or j == prev.size:
        lo, hi = prev[-1], prev[0] + 1.0
        if j == 0:
            x += 1.0
    else:
        lo, hi = prev[j - 1], prev[j]
    return hi - lo, x - lo, hi - x

"""Empirical pair correlation counts F_N(s) and the weak statistic F_N^alpha(s).

Both counters share the same threshold ``s / N**alpha`` and the same float
predicate ``torus_distance(a, b) <= threshold``, so their integer pair
counts agree exactly, not just approximately.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .seq import PointSet

CSV_DIGITS = 12
_NAIVE_BLOCK = 1 << 22  # pair evaluations per chunk in the O(N^2) oracle


@dataclass(frozen=True)
class PcfQuery:
    s: float
    alpha: float = 1.0

    def __post_init__(self):
        if not (self.s >= 0.0) or math.isinf(self.s):
            raise ValueError(f"s must be finite and >= 0, got {self.s!r}")
        if not (0.0 <= self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha!r}")

    def threshold(self, n: int) -> float:
        return self.s / float(n) ** self.alpha

    def scale(self, n: int) -> float:
        return float(n) ** (2.0 - self.alpha)


def torus_distance(a, b):
    """Distance to the nearest integer of a - b; works elementwise on arrays."""
    d = np.abs(np.subtract(a, b))
    out = np.minimum(d, 1.0 - d)
    return float(out) if np.ndim(out) == 0 else out


def pair_count_naive(ps: PointSet, threshold: float) -> int:
    """Ordered pairs k != l with torus distance <= threshold, by exhaustive comparison."""
    p = ps.points
    n = p.size
    rows = max(1, _NAIVE_BLOCK // n)
    total = 0
    for start in range(0, n, rows):
        block = p[start:start + rows]
        hit = torus_distance(block[:, None], p[None, :]) <= threshold
        idx = np.arange(block.size)
        hit[idx, start + idx] = False
        total += int(np.count_nonzero(hit))
    return total


def pair_count_fast(ps: PointSet, threshold: float) -> int:
    """Same count as :func:`pair_count_naive` in O(N log N).

    Each unordered pair within the threshold is charged to the point from
    which the partner is reached by moving right (counter-clockwise) by less
    than 1/2. Non-wrapping partners satisfy p_j - p_i <= t; wrapping ones
    satisfy 1 - (p_i - p_j) <= t. Both predicates are monotone along the
    sorted array, so binary search plus an exact fix-up at the window edge
    gives the count with the oracle's float arithmetic.
    """
    p = ps.points
    n = p.size
    if n < 2:
        return 0
    if threshold >= 0.5:
        # every torus distance is <= 1/2
        return n * (n - 1)
    if threshold < 0.0:
        return 0
    idx = np.arange(n)

    # non-wrapping partners j in (i, hi)
    hi = np.searchsorted(p, p + threshold, side="right")
    hi = np.clip(hi, idx + 1, n)
    while True:
        j = hi - 1
        bad = (j > idx) & (p[j] - p > threshold)
        if not bad.any():
            break
        hi[bad] -= 1
    while True:
        j = np.minimum(hi, n - 1)
        more = (hi < n) & (p[j] - p <= threshold)
        if not more.any():
            break
        hi[more] += 1
    right = hi - idx - 1

    # wrapping partners j in [0, w), w <= i
    w = np.searchsorted(p, p + threshold - 1.0, side="right")
    w = np.clip(w, 0, idx)
    while True:
        j = np.maximum(w - 1, 0)
        bad = (w > 0) & (1.0 - (p - p[j]) > threshold)
        if not bad.any():
            break
        w[bad] -= 1
    while True:
        j = np.minimum(w, n - 1)
        more = (w < idx) & (1.0 - (p - p[j]) <= threshold)
        if not more.any():
            break
        w[more] += 1

    return 2 * int(right.sum() + w.sum())


def pcf_naive(ps: PointSet, q: PcfQuery) -> float:
    _need_pairs(ps)
    n = ps.n_points
    return pair_count_naive(ps, q.threshold(n)) / q.scale(n)


def pcf_fast(ps: PointSet, q: PcfQuery) -> float:
    _need_pairs(ps)
    n = ps.n_points
    return pair_count_fast(ps, q.threshold(n)) / q.scale(n)


def _need_pairs(ps: PointSet) -> None:
    if ps.n_points < 2:
        raise ValueError("pair correlation needs at least two points")


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), f".{CSV_DIGITS}g")


@dataclass
class CurveTable:
    s_grid: np.ndarray
    columns: dict[str, np.ndarray]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.s_grid = np.asarray(self.s_grid, dtype=np.float64)
        if self.s_grid.ndim != 1:
            raise ValueError("s_grid must be one-dimensional")
        if self.s_grid.size > 1 and not (np.diff(self.s_grid) > 0).all():
            raise ValueError("s_grid must be strictly ascending")
        cols = {}
        for name, values in self.columns.items():
            values = np.asarray(values, dtype=np.float64)
            if values.shape != self.s_grid.shape:
                raise ValueError(f"column {name!r} has {values.size} values for {self.s_grid.size} grid points")
            cols[name] = values
        self.columns = cols

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", *self.columns])
        for r, s in enumerate(self.s_grid):
            w.writerow([_fmt(s), *(_fmt(c[r]) for c in self.columns.values())])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, meta: dict | None = None) -> "CurveTable":
        rows = list(csv.reader(io.StringIO(text)))
        header, body = rows[0], rows[1:]
        if not header or header[0] != "s":
            raise ValueError("CSV header must start with 's'")
        data = np.array([[float(v) for v in row] for row in body], dtype=np.float64).reshape(len(body), len(header))
        return cls(data[:, 0], {name: data[:, k + 1] for k, name in enumerate(header[1:])}, dict(meta or {}))

    def to_dict(self) -> dict:
        return {
            "s": [float(v) for v in self.s_grid],
            "columns": {k: [float(v) for v in c] for k, c in self.columns.items()},
            "meta": self.meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "CurveTable":
        d = json.loads(text)
        return cls(d["s"], d["columns"], d.get("meta", {}))


def pcf_curve(ps: PointSet, s_grid, alpha: float = 1.0, generator: str | None = None) -> CurveTable:
    grid = np.asarray(s_grid, dtype=np.float64)
    if grid.size == 0:
        raise ValueError("s_grid is empty")
    if (grid < 0).any():
        raise ValueError("s_grid must be nonnegative")
    values = [pcf_fast(ps, PcfQuery(float(s), alpha)) for s in grid]
    meta = {"N": ps.n_points, "alpha": alpha, "generator": generator or ps.source.value}
    return CurveTable(grid, {"F_N": values}, meta)

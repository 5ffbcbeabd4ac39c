"""Verification sweeps: empirical statistics against the closed forms."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from . import theory
from .paircorr import CurveTable, PcfQuery, pair_count_fast, pcf_fast
from .seq import (
    PointSet,
    dispersion,
    dispersion_formula,
    empirical_gaps,
    generate,
    generate_shifted,
    refinement_split,
    theoretical_gaps,
)

BREAKPOINT_RADIUS = 0.02  # in units of s * log 4
BASELINE_SEED = 20240917
GAP_TOL = 1e-12


def near_breakpoint(s: float, radius: float = BREAKPOINT_RADIUS) -> bool:
    x = s * theory.LOG4
    return abs(x - round(x)) <= radius


def off_breakpoints(s_grid: Iterable[float], radius: float = BREAKPOINT_RADIUS) -> np.ndarray:
    return np.array([s for s in s_grid if not near_breakpoint(s, radius)], dtype=np.float64)


@dataclass
class SweepCase:
    inputs: dict[str, Any]
    observed: float
    expected: float | list[float] | None
    passed: bool
    note: str = ""


@dataclass
class SweepReport:
    name: str
    cases: list[SweepCase] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def pass_count(self) -> int:
        return sum(c.passed for c in self.cases)

    @property
    def fail_count(self) -> int:
        return len(self.cases) - self.pass_count

    @property
    def ok(self) -> bool:
        return self.fail_count == 0

    def add(self, inputs, observed, expected, passed, note="") -> None:
        if isinstance(expected, tuple):
            expected = [float(v) for v in expected]
        elif expected is not None:
            expected = float(expected)
        self.cases.append(SweepCase(dict(inputs), float(observed), expected, bool(passed), note))

    def failures(self) -> list[SweepCase]:
        return [c for c in self.cases if not c.passed]

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.pass_count}/{len(self.cases)} cases"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass_count": self.pass_count,
            "fail_count": self.fail_count,
            "meta": self.meta,
            "cases": [asdict(c) for c in self.cases],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "SweepReport":
        rep = cls(d["name"], [SweepCase(**c) for c in d["cases"]], d.get("meta", {}))
        if rep.pass_count != d.get("pass_count", rep.pass_count):
            raise ValueError("pass_count does not match the cases")
        return rep

    @classmethod
    def from_json(cls, text: str) -> "SweepReport":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        # floats via repr so the CSV round-trips exactly
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["inputs", "observed", "expected_lo", "expected_hi", "passed", "note"])
        for c in self.cases:
            if isinstance(c.expected, list):
                lo, hi = c.expected
            elif c.expected is None:
                lo = hi = ""
            else:
                lo, hi = c.expected, ""
            w.writerow([json.dumps(c.inputs, sort_keys=True), repr(c.observed),
                        "" if lo == "" else repr(lo), "" if hi == "" else repr(hi),
                        int(c.passed), c.note])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, name: str, text: str) -> "SweepReport":
        rep = cls(name)
        for row in csv.DictReader(io.StringIO(text)):
            lo, hi = row["expected_lo"], row["expected_hi"]
            if lo == "":
                expected = None
            elif hi == "":
                expected = float(lo)
            else:
                expected = [float(lo), float(hi)]
            rep.cases.append(SweepCase(json.loads(row["inputs"]), float(row["observed"]),
                                       expected, row["passed"] == "1", row["note"]))
        return rep


def run_sandwich_sweep(N_list: Sequence[int], s_grid: Sequence[float]) -> SweepReport:
    """Check F_N(s) of the log sequence against the finite-N bounds.

    ``s_grid`` is used as given; pass it through :func:`off_breakpoints` first.
    """
    rep = SweepReport("sandwich")
    grid = [float(s) for s in s_grid]
    if not grid:
        return rep
    for N in N_list:
        ps = generate(int(N))
        for s in grid:
            cert = theory.fn_bounds(int(N), s)
            f = pcf_fast(ps, PcfQuery(s))
            rep.add({"N": int(N), "s": s}, f, (cert.lower, cert.upper), cert.contains(f))
    return rep


def observed_neighbor_counts(N: int, s: float) -> dict[str, int]:
    """Right-neighbour counts within s/N on the shifted form.

    ``k_min`` takes the minimum only over points whose window ends before the
    last point (no wrap); ``k_min_cyclic`` lets windows wrap around the torus.
    """
    y = generate_shifted(N).points
    t = s / N
    idx = np.arange(N)
    hi = np.searchsorted(y, y + t, side="right")
    right = hi - idx - 1
    inner = right[hi < N]
    ext = np.concatenate([y, y + 1.0])
    cyclic = np.minimum(np.searchsorted(ext, y + t, side="right") - idx - 1, N - 1)
    return {
        "k_max": int(right[0]),
        "k_min": int(inner.min()) if inner.size else int(right.min()),
        "k_min_cyclic": int(cyclic.min()),
    }


def run_neighbor_count_check(N_list: Sequence[int], s_grid: Sequence[float]) -> SweepReport:
    """Floor formulas for K_max / K_min against counts, within one index step."""
    rep = SweepReport("neighbor_counts")
    for N in N_list:
        for s in s_grid:
            obs = observed_neighbor_counts(int(N), float(s))
            km, kn = theory.k_max(int(N), float(s)), theory.k_min(int(N), float(s))
            inputs = {"N": int(N), "s": float(s)}
            rep.add({**inputs, "count": "k_max"}, obs["k_max"], km, abs(obs["k_max"] - km) <= 1)
            rep.add({**inputs, "count": "k_min"}, obs["k_min"], kn, abs(obs["k_min"] - kn) <= 1,
                    note=f"cyclic minimum {obs['k_min_cyclic']}")
    return rep


def run_convergence_study(N_list: Sequence[int], s_grid: Sequence[float]) -> CurveTable:
    """F_N on the grid for each N next to the limit F; max deviations in ``meta``."""
    grid = np.asarray(s_grid, dtype=np.float64)
    limit = np.array([theory.f_limit(s) for s in grid])
    columns: dict[str, np.ndarray] = {}
    max_dev: dict[str, float] = {}
    for N in N_list:
        ps = generate(int(N))
        f = np.array([pcf_fast(ps, PcfQuery(float(s))) for s in grid])
        columns[f"F_{int(N)}"] = f
        max_dev[str(int(N))] = float(np.max(np.abs(f - limit))) if grid.size else 0.0
    columns["F"] = limit
    return CurveTable(grid, columns, {"generator": "LogSequence", "alpha": 1.0,
                                      "N": [int(N) for N in N_list], "max_deviation": max_dev})


def convergence_report(thresholds: dict[int, float], s_grid: Sequence[float]) -> SweepReport:
    table = run_convergence_study(sorted(thresholds), s_grid)
    rep = SweepReport("convergence", meta={"max_deviation": table.meta["max_deviation"]})
    for N in sorted(thresholds):
        dev = table.meta["max_deviation"][str(N)]
        rep.add({"N": N, "grid_points": len(table.s_grid)}, dev, thresholds[N], dev <= thresholds[N])
    devs = [table.meta["max_deviation"][str(N)] for N in sorted(thresholds)]
    rep.add({"check": "nonincreasing in N"}, float(np.max(np.diff(devs))) if len(devs) > 1 else 0.0,
            0.0, all(b <= a for a, b in zip(devs, devs[1:])))
    return rep


def positional_offset(n: int) -> int | None:
    """Rotation r with formula gap i equal to torus gap i + r, or None."""
    emp = empirical_gaps(generate(n)).gaps
    theo = theoretical_gaps(n).gaps
    for r in range(n):
        if np.max(np.abs(np.roll(emp, -r) - theo)) <= GAP_TOL:
            return r
    return None


def run_gap_validation(n_max: int = 2048, positional_upto: int = 64) -> SweepReport:
    """Gap multiset, dispersion, and refinement checks for n = 2..n_max.

    For small n, ``meta["positional_offset"]`` records whether the formula's
    index order is a rotation of the torus order; this is never a failure.
    """
    rep = SweepReport("gaps")
    positional = {}
    for n in range(2, n_max + 1):
        emp = empirical_gaps(generate(n))
        theo = theoretical_gaps(n)
        err = float(np.max(np.abs(emp.sorted() - theo.sorted())))
        rep.add({"n": n, "check": "multiset"}, err, GAP_TOL, err <= GAP_TOL)
        total = math.fsum(emp.gaps)
        rep.add({"n": n, "check": "gap_sum"}, total, 1.0, abs(total - 1.0) <= GAP_TOL)
        disp = dispersion(generate(n))
        rep.add({"n": n, "check": "dispersion"}, disp, dispersion_formula(n),
                abs(disp - dispersion_formula(n)) <= GAP_TOL)
        if n >= 3:
            parent, left, right = refinement_split(n)
            want_parent = (math.log(n) - math.log(n - 1)) / theory.LOG2
            want = sorted([(math.log(2 * n) - math.log(2 * n - 1)) / theory.LOG2,
                           (math.log(2 * n - 1) - math.log(2 * n - 2)) / theory.LOG2])
            err = max(abs(parent - want_parent), *(abs(a - b) for a, b in zip(sorted([left, right]), want)))
            longest = abs(parent - dispersion(generate(n - 1))) <= GAP_TOL
            rep.add({"n": n, "check": "refinement"}, err, GAP_TOL, err <= GAP_TOL and longest)
        if n <= positional_upto:
            positional[str(n)] = positional_offset(n)
    rep.meta["positional_offset"] = positional
    return rep


def run_weak_study(N: int, alpha_list: Sequence[float], s_grid: Sequence[float]) -> CurveTable:
    """F_N^alpha for each alpha, with the limit line 3 s log 2 and the Poisson line 2s."""
    grid = np.asarray(s_grid, dtype=np.float64)
    ps = generate(int(N))
    limit = np.array([theory.weak_limit(s) for s in grid])
    columns: dict[str, np.ndarray] = {}
    deviation: dict[str, float] = {}
    for a in alpha_list:
        f = np.array([pcf_fast(ps, PcfQuery(float(s), float(a))) for s in grid])
        columns[f"F_alpha={a:g}"] = f
        deviation[f"{a:g}"] = float(np.max(np.abs(f - limit))) if grid.size else 0.0
    columns["weak_limit"] = limit
    columns["poisson"] = 2 * grid
    return CurveTable(grid, columns, {"generator": "LogSequence", "N": int(N),
                                      "alpha": [float(a) for a in alpha_list],
                                      "max_deviation": deviation})


def weak_report(N: int = 10**6, s_values=(0.5, 1.0, 2.0), tol: float = 0.1,
                formula_N: int = 10**8, formula_tol: float = 1e-2) -> SweepReport:
    rep = SweepReport("weak")
    target = 1.5 * theory.LOG4
    ps = generate(N)
    for s in s_values:
        ratio = pcf_fast(ps, PcfQuery(s, 0.5)) / s
        rep.add({"N": N, "alpha": 0.5, "s": s, "check": "F/s"}, ratio, target, abs(ratio - target) <= tol)
    for s in s_values:
        g = theory.weak_lower_bound(formula_N, s, 0.5)
        lim = theory.weak_limit(s, 0.5)
        rep.add({"N": formula_N, "alpha": 0.5, "s": s, "check": "g limit"}, g, lim, abs(g - lim) <= formula_tol)
    study = run_weak_study(N, [0.25, 0.75], s_values)
    d = study.meta["max_deviation"]
    rep.add({"N": N, "check": "deviation(0.25) <= deviation(0.75)"}, d["0.25"], d["0.75"], d["0.25"] <= d["0.75"])
    rep.meta["max_deviation"] = d
    return rep


def poisson_baseline(N: int = 10**5, s_values=(0.5, 1.0, 2.0), tol: float = 0.15,
                     seed: int = BASELINE_SEED) -> SweepReport:
    """Uniform random points should give F_N(s) close to 2s."""
    rng = np.random.default_rng(seed)
    ps = PointSet.from_values(rng.random(N))
    rep = SweepReport("poisson_baseline", meta={"seed": seed})
    for s in s_values:
        f = pair_count_fast(ps, s / N) / N
        rep.add({"N": N, "s": s}, f, 2 * s, abs(f - 2 * s) <= tol)
    return rep


def default_sandwich_grid() -> np.ndarray:
    """40 values in (0, 10] away from breakpoints."""
    candidates = np.round(np.arange(1, 400) * 0.025, 6)
    grid = off_breakpoints(candidates)
    picks = np.linspace(0, grid.size - 1, 40).round().astype(int)
    return grid[picks]


def default_convergence_grid() -> np.ndarray:
    return off_breakpoints(np.arange(0, 21) * 0.25)


SUITES = ("sandwich", "gaps", "convergence", "weak", "baseline", "neighbors")


def run_suite(name: str) -> SweepReport:
    if name == "sandwich":
        return run_sandwich_sweep([100, 500, 1000, 5000, 10_000], default_sandwich_grid())
    if name == "gaps":
        return run_gap_validation(2048)
    if name == "convergence":
        return convergence_report({1000: 0.2, 100_000: 0.05}, default_convergence_grid())
    if name == "weak":
        return weak_report()
    if name == "baseline":
        return poisson_baseline()
    if name == "neighbors":
        return run_neighbor_count_check([100, 1000, 10_000], default_sandwich_grid())
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")

import math

import numpy as np
import pytest

from logpcf import harness, theory
from logpcf.harness import SweepReport


def test_breakpoint_filter():
    assert harness.near_breakpoint(1 / theory.LOG4)
    assert harness.near_breakpoint(0.0)
    assert not harness.near_breakpoint(1.0)
    grid = harness.off_breakpoints(np.linspace(0, 10, 400))
    assert all(abs(s * theory.LOG4 - round(s * theory.LOG4)) > 0.02 for s in grid)


def test_default_sandwich_grid():
    grid = harness.default_sandwich_grid()
    assert grid.size == 40
    assert grid.min() > 0 and grid.max() <= 10
    assert (np.diff(grid) > 0).all()
    assert not any(harness.near_breakpoint(s) for s in grid)


class TestSandwich:
    def test_single_case(self):
        rep = harness.run_sandwich_sweep([1000], [1.0])
        assert len(rep.cases) == 1 and rep.ok

    def test_empty_grid(self):
        rep = harness.run_sandwich_sweep([1000], [])
        assert rep.cases == [] and rep.pass_count == rep.fail_count == 0

    def test_wide_sweep(self):
        grid = harness.off_breakpoints(np.linspace(0.25, 10, 40))
        rep = harness.run_sandwich_sweep([100, 300, 1000, 3000, 10_000], grid)
        assert rep.fail_count == 0

    def test_violation_is_data(self):
        # a breakpoint-adjacent point reported, never raised
        rep = harness.run_sandwich_sweep([100], [2 / theory.LOG4])
        assert rep.pass_count + rep.fail_count == 1


class TestConvergence:
    def test_figure_scale(self):
        grid = harness.default_convergence_grid()
        table = harness.run_convergence_study([1000, 100_000], grid)
        dev = table.meta["max_deviation"]
        assert dev["1000"] <= 0.2
        assert dev["100000"] <= 0.05
        assert dev["100000"] <= dev["1000"]
        assert table.columns["F"].tolist() == [theory.f_limit(s) for s in grid]

    def test_report(self):
        rep = harness.convergence_report({1000: 0.2, 10_000: 0.1}, harness.default_convergence_grid())
        assert rep.ok and len(rep.cases) == 3


class TestGapValidation:
    def test_full_range(self):
        rep = harness.run_gap_validation(2048)
        assert rep.fail_count == 0
        assert rep.pass_count == len(rep.cases)

    def test_small(self):
        rep = harness.run_gap_validation(2)
        checks = {c.inputs["check"] for c in rep.cases}
        assert checks == {"multiset", "gap_sum", "dispersion"}
        assert rep.ok

    def test_positional_offsets_recorded(self):
        rep = harness.run_gap_validation(40, positional_upto=40)
        offsets = rep.meta["positional_offset"]
        assert set(offsets) == {str(n) for n in range(2, 41)}
        # the formula order turned out to be the torus order from x_1 = 0
        assert set(offsets.values()) == {0}


class TestWeak:
    @pytest.mark.slow
    def test_alpha_half(self):
        table = harness.run_weak_study(10**6, [0.5], [1.0])
        assert abs(table.columns["F_alpha=0.5"][0] - 2.07944) <= 0.1

    @pytest.mark.slow
    def test_smaller_alpha_closer(self):
        table = harness.run_weak_study(10**6, [0.25, 0.75], [0.5, 1.0, 1.5, 2.0])
        d = table.meta["max_deviation"]
        assert d["0.25"] <= d["0.75"]

    def test_limit_line_is_not_poisson(self):
        table = harness.run_weak_study(10_000, [0.5], [0.5, 1.0, 2.0])
        assert (table.columns["weak_limit"] != table.columns["poisson"]).all()
        assert table.columns["weak_limit"] / table.s_grid == pytest.approx(1.5 * math.log(4))


def test_poisson_baseline_deterministic():
    a = harness.poisson_baseline()
    b = harness.poisson_baseline()
    assert a.ok
    assert a.to_json() == b.to_json()
    assert a.meta["seed"] == harness.BASELINE_SEED


def test_neighbor_counts_within_one():
    rep = harness.run_neighbor_count_check([100, 1000, 5000], [0.3, 1.0, 2.2, 3.7, 6.0, 9.5])
    assert rep.ok
    assert all("cyclic minimum" in c.note for c in rep.cases if c.inputs["count"] == "k_min")


class TestReportSerialization:
    def sample(self):
        rep = SweepReport("demo", meta={"seed": 3})
        rep.add({"N": 10, "s": 0.1}, 0.1 + 0.2, (1 / 3, 2 / 3), False)
        rep.add({"n": 4, "check": "x"}, 1e-17, 1e-12, True, note="ünïcode")
        rep.add({"k": 1}, 2.0, None, True)
        return rep

    def test_counts(self):
        rep = self.sample()
        assert (rep.pass_count, rep.fail_count) == (2, 1)
        assert not rep.ok

    def test_json_round_trip(self):
        rep = self.sample()
        back = SweepReport.from_json(rep.to_json())
        assert back == rep
        assert back.to_json() == rep.to_json()

    def test_csv_round_trip(self):
        rep = self.sample()
        back = SweepReport.from_csv("demo", rep.to_csv())
        assert back.cases == rep.cases

    def test_real_report_round_trip(self):
        rep = harness.run_sandwich_sweep([500], harness.default_sandwich_grid()[:8])
        assert SweepReport.from_csv(rep.name, rep.to_csv()).cases == rep.cases
        assert SweepReport.from_json(rep.to_json()) == rep

    def test_tampered_counts_rejected(self):
        d = self.sample().to_dict()
        d["pass_count"] = 3
        with pytest.raises(ValueError):
            SweepReport.from_dict(d)


def test_unknown_suite():
    with pytest.raises(ValueError):
        harness.run_suite("nope")

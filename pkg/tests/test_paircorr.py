import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from logpcf import theory
from logpcf.paircorr import (
    CurveTable,
    PcfQuery,
    pair_count_fast,
    pair_count_naive,
    pcf_curve,
    pcf_fast,
    pcf_naive,
    torus_distance,
)
from logpcf.seq import PointSet, generate, generate_shifted


def loop_count(points, t):
    """Plain double loop, written without numpy."""
    total = 0
    for k, a in enumerate(points):
        for l, b in enumerate(points):
            if k != l:
                d = abs(a - b)
                if min(d, 1.0 - d) <= t:
                    total += 1
    return total


def equispaced(n):
    return PointSet(np.arange(n) / n)


def test_torus_distance_examples():
    assert torus_distance(0.1, 0.9) == pytest.approx(0.2, abs=1e-15)
    assert torus_distance(0.37, 0.37) == 0.0
    assert torus_distance(0.0, 0.5) == 0.5


@given(st.floats(0, 1, exclude_max=True), st.floats(0, 1, exclude_max=True))
def test_torus_distance_symmetric_and_bounded(a, b):
    d = torus_distance(a, b)
    assert d == torus_distance(b, a)
    assert 0.0 <= d <= 0.5


def test_query_validation():
    with pytest.raises(ValueError):
        PcfQuery(-1.0)
    with pytest.raises(ValueError):
        PcfQuery(1.0, alpha=1.5)


@pytest.mark.parametrize("n", [8, 50, 333])
def test_equispaced(n):
    ps = equispaced(n)
    assert pcf_naive(ps, PcfQuery(0.5)) == 0
    assert pcf_fast(ps, PcfQuery(0.5)) == 0
    # n / n rounds back to 1, so k/n - (k-1)/n can land either side of 1/n;
    # the exact-threshold case is checked on power-of-two grids below
    assert pcf_fast(ps, PcfQuery(1.0)) == pcf_naive(ps, PcfQuery(1.0))


@pytest.mark.parametrize("n", [4, 16, 256, 1024])
def test_equispaced_boundary_inclusive(n):
    ps = equispaced(n)
    assert pcf_naive(ps, PcfQuery(1.0)) == 2
    assert pcf_fast(ps, PcfQuery(1.0)) == 2


def test_naive_agrees_with_loop():
    rng = np.random.default_rng(3)
    for n in (2, 3, 10, 60):
        ps = PointSet.from_values(rng.random(n))
        for t in (0.0, 0.01, 0.1, 0.3, 0.49, 0.5, 0.7):
            assert pair_count_naive(ps, t) == loop_count(ps.points.tolist(), t)


def test_log_sequence_below_first_breakpoint():
    ps = generate(1000)
    assert pcf_naive(ps, PcfQuery(0.5)) == 0
    cert = theory.fn_bounds(1000, 0.5)
    assert cert.lower <= 0 <= cert.upper


@pytest.mark.parametrize("s", [0.1, 0.5, 1, 2, 5, 10])
@pytest.mark.parametrize("alpha", [0.5, 1.0])
def test_fast_equals_naive_sweep(s, alpha):
    rng = np.random.default_rng(int(s * 100) + int(alpha * 10))
    for ps in (generate(2000), generate_shifted(777), PointSet.from_values(rng.random(1500))):
        t = PcfQuery(s, alpha).threshold(ps.n_points)
        assert pair_count_fast(ps, t) == pair_count_naive(ps, t)


def test_duplicates_and_zero_threshold():
    ps = PointSet.from_values([0.1, 0.1, 0.1, 0.6, 0.9, 0.0])
    for t in (0.0, 0.05, 0.1, 0.2, 0.4999, 0.5, 3.0):
        assert pair_count_fast(ps, t) == pair_count_naive(ps, t) == loop_count(ps.points.tolist(), t)
    assert pair_count_fast(ps, 0.0) == 6


def test_wrap_pair_counted_once():
    ps = PointSet([0.0, 0.1])
    assert pair_count_fast(ps, 0.2) == 2
    ps = PointSet([0.03125, 0.96875])
    assert pair_count_fast(ps, 0.0625) == 2 == pair_count_naive(ps, 0.0625)
    assert pair_count_fast(ps, 0.06) == 0


def test_saturates_for_large_threshold():
    ps = generate(300)
    assert pcf_fast(ps, PcfQuery(ps.n_points / 2)) == (300 * 299) / 300
    assert pcf_fast(ps, PcfQuery(1e6)) == 299


@given(
    st.lists(st.floats(0, 1, exclude_max=True), min_size=2, max_size=80),
    st.floats(0, 0.75),
)
@settings(max_examples=300, deadline=None)
def test_fast_equals_naive_property(values, t):
    ps = PointSet.from_values(values)
    assert pair_count_fast(ps, t) == pair_count_naive(ps, t)


@given(st.lists(st.integers(0, 63), min_size=2, max_size=60), st.integers(0, 40))
@settings(max_examples=200, deadline=None)
def test_fast_equals_naive_on_dyadic_grid(ticks, m):
    # values and thresholds on a 1/64 grid hit the boundary exactly
    ps = PointSet.from_values(np.array(ticks) / 64)
    t = m / 64
    assert pair_count_fast(ps, t) == pair_count_naive(ps, t)


@given(st.integers(2, 1500), st.floats(0, 12), st.sampled_from([0.25, 0.5, 1.0]))
@settings(max_examples=40, deadline=None)
def test_count_even_and_monotone(n, s, alpha):
    ps = generate(n)
    a = pair_count_fast(ps, PcfQuery(s, alpha).threshold(n))
    b = pair_count_fast(ps, PcfQuery(s + 0.3, alpha).threshold(n))
    assert a % 2 == 0
    assert a <= b


@given(st.integers(2, 2000), st.floats(0, 1, exclude_max=True), st.sampled_from([0.3, 1.0, 2.7, 6.1]))
@settings(max_examples=40, deadline=None)
def test_shift_invariance(n, c, s):
    ps = generate(n)
    q = PcfQuery(s)
    assert pcf_fast(ps.shifted(c), q) == pcf_fast(ps, q)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
def test_weak_scaling(alpha):
    ps = generate(400)
    q = PcfQuery(1.3, alpha)
    count = pair_count_naive(ps, 1.3 / 400 ** alpha)
    assert pcf_naive(ps, q) == count / 400 ** (2 - alpha)
    assert pcf_fast(ps, q) == pcf_naive(ps, q)


def test_poisson_baseline():
    rng = np.random.default_rng(20240917)
    ps = PointSet.from_values(rng.random(10**5))
    for s in (0.5, 1.0, 2.0):
        assert abs(pcf_fast(ps, PcfQuery(s)) - 2 * s) <= 0.15


def test_fast_kernel_speed():
    ps = generate(10**5)
    t0 = time.perf_counter()
    pcf_curve(ps, np.linspace(0, 10, 100))
    assert time.perf_counter() - t0 < 5.0


class TestCurve:
    def test_zero(self):
        assert pcf_curve(generate(1000), [0.0]).columns["F_N"].tolist() == [0.0]

    def test_inside_bounds(self):
        table = pcf_curve(generate(1000), [0.5, 1.0])
        for s, f in zip(table.s_grid, table.columns["F_N"]):
            assert theory.fn_bounds(1000, s).contains(f)
        assert table.meta == {"N": 1000, "alpha": 1.0, "generator": "LogSequence"}

    def test_empty_grid(self):
        with pytest.raises(ValueError):
            pcf_curve(generate(10), [])

    def test_grid_must_ascend(self):
        with pytest.raises(ValueError):
            pcf_curve(generate(10), [1.0, 0.5])

    def test_csv_format(self):
        table = CurveTable([0.0, 1.0 / 3], {"F_N": [0.0, 2.0 / 3], "F": [1e-20, 123456789.123456789]})
        lines = table.to_csv().splitlines()
        assert lines[0] == "s,F_N,F"
        assert lines[1] == "0,0,1e-20"
        assert lines[2] == "0.333333333333,0.666666666667,123456789.123"

    def test_round_trip(self):
        table = pcf_curve(generate(1000), np.linspace(0, 5, 41))
        back = CurveTable.from_csv(table.to_csv())
        assert np.allclose(back.columns["F_N"], table.columns["F_N"], rtol=1e-11, atol=0)
        back = CurveTable.from_json(table.to_json())
        assert back.columns["F_N"].tolist() == table.columns["F_N"].tolist()
        assert back.meta == table.meta


def test_figure_scale_curve():
    grid = np.linspace(0, 5, 200)
    table = pcf_curve(generate(1000), grid)
    limit = np.array([theory.f_limit(s) for s in grid])
    away = np.array([abs(s * theory.LOG4 - round(s * theory.LOG4)) > 0.02 for s in grid])
    assert np.abs(table.columns["F_N"] - limit)[away].max() < 0.2
    assert (np.diff(table.columns["F_N"]) >= 0).all()

import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from dualent.groups import FgAbelianGroup, IntMatrix, AbelianAutomorphism, ShapeError
from dualent.growth import (
    FiniteSubset,
    GrowthSeries,
    SumsetCapError,
    growth_series,
    growth_rate_estimate,
    sumset,
    worker_count,
)
from tests.test_groups import unimodular_strategy

GOLDEN_ENTROPY = 0.9624236501192069


def corners(group):
    return FiniteSubset.of(
        group, itertools.product((0, 1), repeat=group.rank)
    )


def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


class TestFiniteSubset:
    def test_of_accepts_flat_coordinates(self):
        g = FgAbelianGroup(1, (2,))
        s = FiniteSubset.of(g, [(0, 0), (1, 1)])
        assert len(s) == 2
        assert g.element((1,), (1,)) in s.elements

    def test_rejects_foreign_elements(self):
        g1, g2 = FgAbelianGroup(1), FgAbelianGroup(2)
        with pytest.raises(ShapeError):
            FiniteSubset(g1, frozenset({g2.element((0, 0))}))

    def test_deduplicates(self, z2):
        s = FiniteSubset.of(z2, [(0, 0), (0, 0), (1, 1)])
        assert len(s) == 2


class TestSumset:
    def test_interval_sum(self, z1):
        a = FiniteSubset.of(z1, [(0,), (1,)])
        b = FiniteSubset.of(z1, [(0,), (2,)])
        out = sumset(a, b)
        assert {e.lattice[0] for e in out.elements} == {0, 1, 2, 3}

    def test_cap_carries_partial_count(self, z1):
        a = FiniteSubset.of(z1, [(i,) for i in range(0, 40, 2)])
        b = FiniteSubset.of(z1, [(i,) for i in range(5)])
        with pytest.raises(SumsetCapError) as exc:
            sumset(a, b, cap=10)
        assert exc.value.cap == 10
        assert exc.value.partial > 10

    def test_torsion_wraps(self):
        g = FgAbelianGroup(0, (3,))
        a = FiniteSubset.of(g, [(1,), (2,)])
        out = sumset(a, a)
        assert {e.torsion[0] for e in out.elements} == {2, 0, 1}


class TestGrowthSeries:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            GrowthSeries(sizes=(), capped=False)

    def test_rejects_supermultiplicative_sizes(self):
        with pytest.raises(ValueError):
            GrowthSeries(sizes=(2, 5), capped=False)

    def test_log_over_n(self):
        s = GrowthSeries(sizes=(4, 16), capped=False)
        assert s.log_over_n() == [math.log(4), math.log(16) / 2]


class TestGrowthComputation:
    def test_cat_map_corner_sizes_match_closed_form(self, cat_auto, z2):
        # s_n for the corner set under the cat map is Fibonacci(2n + 3) - 1;
        # the first values are 4, 12, 33, 88, 232, ...
        series = growth_series(cat_auto, corners(z2), 10)
        assert series.sizes == tuple(fib(2 * n + 3) - 1 for n in range(1, 11))
        assert not series.capped

    def test_identity_corner_sizes_are_squares(self, z2):
        auto = AbelianAutomorphism.identity(z2)
        series = growth_series(auto, corners(z2), 8)
        assert series.sizes == tuple((n + 1) ** 2 for n in range(1, 9))

    def test_quarter_turn_sizes_are_squares(self, z2):
        # gamma has order 4, so the union of rotated corners is a fixed 2x2
        # square and the partial sumsets grow like its dilates.
        auto = AbelianAutomorphism.from_matrix(z2, ((0, -1), (1, 0)))
        series = growth_series(auto, corners(z2), 8)
        assert series.sizes == tuple((n + 1) ** 2 for n in range(1, 9))

    def test_free_position_images_multiply_sizes(self, z2):
        # The squared cat map pushes the corner set into general position:
        # each step multiplies the count by exactly |E| = 4.
        auto = AbelianAutomorphism.from_matrix(z2, ((2, 3), (3, 5)))
        series = growth_series(auto, corners(z2), 6)
        assert series.sizes == tuple(4**n for n in range(1, 7))

    def test_zero_is_adjoined(self, z2, cat_auto):
        base = FiniteSubset.of(z2, [(1, 0)])
        series = growth_series(cat_auto, base, 3)
        assert series.sizes[0] == 2
        assert series.zero_adjoined

    def test_soft_cap_reports_partial_series(self, z2, cat_auto):
        series = growth_series(cat_auto, corners(z2), 12, cap=100)
        assert series.capped
        assert series.sizes == (4, 12, 33, 88)

    def test_torsion_component_saturates(self):
        g = FgAbelianGroup(1, (2,))
        auto = AbelianAutomorphism.build(g, lattice=((1,),))
        base = FiniteSubset.of(g, [(0, 0), (1, 0), (0, 1), (1, 1)])
        series = growth_series(auto, base, 6)
        # interval of length n+1 crossed with the full two-element factor
        assert series.sizes == tuple(2 * (n + 1) for n in range(1, 7))

    def test_mismatched_group_rejected(self, z1, cat_auto):
        with pytest.raises(ShapeError):
            growth_series(cat_auto, FiniteSubset.of(z1, [(0,)]), 3)


class TestRateEstimate:
    def test_needs_three_sizes(self):
        with pytest.raises(ValueError):
            growth_rate_estimate(GrowthSeries(sizes=(4, 12), capped=False))

    def test_cat_map_estimate_close(self, cat_auto, z2):
        series = growth_series(cat_auto, corners(z2), 12)
        est = growth_rate_estimate(series)
        assert est.method == "peters"
        assert abs(est.value - GOLDEN_ENTROPY) < 1e-3

    def test_tail_difference_cancels_polynomial_factor(self):
        # sizes (n+1) 2^n: the endpoint estimate carries a log(n)/n error
        # while the tail difference converges much faster
        sizes = tuple((n + 1) * 2**n for n in range(1, 13))
        est = growth_rate_estimate(GrowthSeries(sizes=sizes, capped=False))
        assert abs(est.value - math.log(2)) < 0.1
        assert est.diagnostics["endpoint"] > est.value

    def test_diagnostics_expose_series(self, cat_auto, z2):
        series = growth_series(cat_auto, corners(z2), 6)
        est = growth_rate_estimate(series)
        assert est.diagnostics["sizes"] == list(series.sizes)
        assert est.diagnostics["capped"] is False

    @settings(max_examples=25, deadline=None)
    @given(unimodular_strategy(2))
    def test_series_strictly_increasing_and_capped_by_free_sums(self, m):
        # Adding a set with >= 2 elements strictly grows a finite set, and
        # each term can at most multiply the count by |E|.
        g = FgAbelianGroup(2)
        auto = AbelianAutomorphism.from_matrix(g, m)
        series = growth_series(auto, corners(g), 5, cap=200000)
        for a, b in zip(series.sizes, series.sizes[1:]):
            assert b > a
        for n, s in enumerate(series.sizes, start=1):
            assert s <= 4**n


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("DUALENT_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("DUALENT_THREADS", "0")
    assert worker_count() >= 1
    monkeypatch.setenv("DUALENT_THREADS", "-1")
    with pytest.raises(ValueError):
        worker_count()
    monkeypatch.setenv("DUALENT_THREADS", "lots")
    with pytest.raises(ValueError):
        worker_count()

"""Histogram, moment, quadrature, root-finding and ANOVA tests."""

from __future__ import annotations

import math

import numpy as np
import pytest

from exgtools import (
    DataError,
    DomainError,
    ExGaussParams,
    Histogram,
    RngStream,
    anova,
    correlation,
    drand_exg,
    drand_gauss,
    exgauss_cdf,
    exgauss_pdf,
    histogram,
    int_points_gauss,
    integral,
    intsum,
    minsquare,
    stats,
    stats_his,
    zalp_exgauss,
    zero,
)
from exgtools.stats_utils import default_bins


class TestHistogram:
    def test_forced_two_bin_layout(self):
        h = histogram([0.0, 1.0, 2.0, 3.0], n_bins=2)
        assert np.allclose(h.edges, [0.0, 1.5, 3.0])
        assert list(h.counts) == [2, 2]
        assert h.n_total == 4

    def test_default_bin_count(self):
        assert default_bins(2396) == 98
        h = histogram(np.linspace(0.0, 1.0, 2396))
        assert h.n_bins == 98

    def test_densities_integrate_to_one(self, p_ref):
        x = drand_exg(RngStream(11), p_ref, size=10**4)
        h = histogram(x)
        assert float(np.sum(h.densities * h.widths)) == pytest.approx(1.0, abs=1e-12)
        assert int(h.counts.sum()) == h.n_total == x.size

    def test_max_value_in_last_bin(self):
        h = histogram([0.0, 0.5, 1.0], n_bins=2)
        assert h.counts[-1] == 2  # 0.5 sits in [0.5, 1.0] closed at 1.0

    def test_errors(self):
        with pytest.raises(DataError):
            histogram([])
        with pytest.raises(DataError):
            histogram([1.0, 2.0], n_bins=0)
        with pytest.raises(DataError):
            histogram([3.0, 3.0, 3.0])


class TestStats:
    def test_symmetric_pair(self):
        st = stats([-1.0, 1.0])
        assert st.m == 0.0
        assert st.s == 1.0
        assert st.t == 0.0

    def test_exponential_skewness(self):
        x = RngStream(21)._gen.standard_exponential(10**6)
        assert stats(x).t == pytest.approx(2.0, abs=0.05)

    def test_hand_computed_triple(self):
        st = stats([0.0, 0.0, 0.0, 4.0])
        assert st.m == pytest.approx(1.0)
        assert st.s == pytest.approx(math.sqrt(3.0), rel=1e-14)
        assert st.t == pytest.approx(2.0 / math.sqrt(3.0), rel=1e-14)

    def test_errors(self):
        with pytest.raises(DataError):
            stats([1.0])
        with pytest.raises(DataError):
            stats([2.0, 2.0, 2.0])

    def test_affine_equivariance(self):
        x = drand_gauss(RngStream(31), 5.0, 2.0, size=500)
        base = stats(x)
        shifted = stats(x + 123.25)
        scaled = stats(4.0 * x - 7.0)
        assert shifted.m == pytest.approx(base.m + 123.25, rel=1e-12)
        assert shifted.s == pytest.approx(base.s, rel=1e-12)
        assert shifted.t == pytest.approx(base.t, abs=1e-9)
        assert scaled.s == pytest.approx(4.0 * base.s, rel=1e-12)
        assert scaled.t == pytest.approx(base.t, abs=1e-9)


class TestStatsHis:
    def test_symmetry_preserved(self):
        h = histogram([-1.0, 1.0], n_bins=2)
        assert stats_his(h).m == pytest.approx(0.0, abs=1e-15)

    def test_binning_error_bound(self, p_ref):
        x = drand_exg(RngStream(41), p_ref, size=10**4)
        h = histogram(x, 98)
        half_width = float(h.widths[0]) / 2.0
        assert abs(stats_his(h).m - stats(x).m) < half_width

    def test_degenerate_histogram(self):
        h = Histogram(
            edges=np.array([0.0, 1.0]),
            counts=np.array([5]),
            densities=np.array([1.0]),
            n_total=5,
        )
        with pytest.raises(DataError):
            stats_his(h)


class TestCorrelation:
    def test_perfect_lines(self):
        x = np.array([0.0, 1.0, 2.0, 5.0])
        assert correlation(x, 2.0 * x + 1.0) == pytest.approx(1.0)
        assert correlation(x, -x) == pytest.approx(-1.0)

    def test_hand_computed(self):
        xs = [1.0, 2.0, 3.0, 4.0, 5.0]
        ys = [2.0, 1.0, 4.0, 3.0, 7.0]
        assert correlation(xs, ys) == pytest.approx(12.0 / math.sqrt(212.0), rel=1e-14)

    def test_errors(self):
        with pytest.raises(DataError):
            correlation([1.0, 2.0], [1.0])
        with pytest.raises(DataError):
            correlation([1.0, 1.0], [2.0, 3.0])


class TestMinsquare:
    def test_collinear_line(self):
        pts = [(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]
        c = minsquare(pts, 1)
        assert c[0] == pytest.approx(1.0, abs=1e-12)
        assert c[1] == pytest.approx(2.0, abs=1e-12)

    def test_degree_zero_is_mean(self):
        pts = [(0.0, 1.0), (1.0, 2.0), (2.0, 6.0)]
        assert minsquare(pts, 0)[0] == pytest.approx(3.0, rel=1e-14)

    def test_against_normal_equations(self):
        r = RngStream(55)
        x = drand_gauss(r, 0.0, 2.0, size=10)
        y = 1.5 - 0.7 * x + 0.3 * x**2 + drand_gauss(r, 0.0, 0.1, size=10)
        got = np.array(minsquare(list(zip(x, y)), 2))
        vand = np.vander(x, 3, increasing=True)
        ref = np.linalg.solve(vand.T @ vand, vand.T @ y)
        assert np.allclose(got, ref, rtol=1e-9)

    def test_rank_deficiency(self):
        with pytest.raises(DataError):
            minsquare([(1.0, 2.0), (1.0, 3.0), (1.0, 4.0)], 1)


class TestGaussLegendre:
    def test_single_node_midpoint(self):
        part = int_points_gauss(2.0, 6.0, 1)
        assert part == [(4.0, 4.0)]

    def test_five_point_tabulated(self):
        # Published five-point nodes/weights on [-1, 1].
        nodes = [-0.906179845938664, -0.5384693101056831, 0.0,
                 0.5384693101056831, 0.906179845938664]
        weights = [0.23692688505618908, 0.47862867049936647, 0.5688888888888889,
                   0.47862867049936647, 0.23692688505618908]
        part = int_points_gauss(-1.0, 1.0, 5)
        for (n_got, w_got), n_ref, w_ref in zip(part, nodes, weights):
            assert n_got == pytest.approx(n_ref, abs=1e-12)
            assert w_got == pytest.approx(w_ref, abs=1e-12)

    def test_weights_sum_to_interval(self):
        part = int_points_gauss(-3.0, 7.5, 13)
        assert sum(w for _, w in part) == pytest.approx(10.5, rel=1e-14)

    def test_quartic_exact_with_three_nodes(self):
        part = int_points_gauss(0.0, 1.0, 3)
        val = intsum([x**4 for x, _ in part], part)
        assert val == pytest.approx(0.2, abs=1e-14)

    def test_polynomial_exactness_degree_2n_minus_1(self):
        for n in (2, 4, 8):
            part = int_points_gauss(-1.0, 2.0, n)
            deg = 2 * n - 1
            val = intsum([x**deg for x, _ in part], part)
            ref = (2.0 ** (deg + 1) - (-1.0) ** (deg + 1)) / (deg + 1)
            assert val == pytest.approx(ref, rel=1e-13)

    def test_invalid_interval(self):
        with pytest.raises(DomainError):
            int_points_gauss(1.0, 1.0, 3)
        with pytest.raises(DomainError):
            int_points_gauss(0.0, 1.0, 0)


class TestIntsum:
    def test_constant(self):
        part = int_points_gauss(-2.0, 3.0, 6)
        assert intsum(np.ones(6), part) == pytest.approx(5.0, rel=1e-14)

    def test_density_normalization(self, p_ref):
        lo = p_ref.mu - 10 * p_ref.sigma
        hi = p_ref.mu + 10 * p_ref.sigma + 30 * p_ref.tau
        part = int_points_gauss(lo, hi, 200)
        vals = exgauss_pdf(np.array([n for n, _ in part]), p_ref)
        assert intsum(vals, part) == pytest.approx(1.0, abs=1e-9)

    def test_x_squared_two_nodes(self):
        part = int_points_gauss(0.0, 1.0, 2)
        assert intsum([x * x for x, _ in part], part) == pytest.approx(1.0 / 3.0, abs=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(DataError):
            intsum([1.0, 2.0], int_points_gauss(0.0, 1.0, 3))


class TestZero:
    def test_linear(self):
        assert zero(lambda x: x - 2.0, (0.0, 5.0), tol=1e-12) == pytest.approx(2.0, abs=1e-10)

    def test_reproduces_median(self, p_ref):
        f = lambda x: exgauss_cdf(x, p_ref) - 0.5
        root = zero(f, (p_ref.mu - 500.0, p_ref.mu + 2000.0), tol=1e-9)
        assert root == pytest.approx(zalp_exgauss(0.5, p_ref), abs=1e-6)

    def test_root_at_endpoint(self):
        assert zero(lambda x: x, (0.0, 1.0)) == 0.0
        assert zero(lambda x: x - 1.0, (0.0, 1.0)) == 1.0

    def test_no_sign_change(self):
        with pytest.raises(DomainError):
            zero(lambda x: x * x + 1.0, (-1.0, 1.0))

    def test_converges_on_awkward_functions(self):
        funcs = [
            (lambda x: math.tanh(50.0 * (x - 0.3)), (-4.0, 4.0), 0.3),
            (lambda x: x**3 - 2.0 * x - 5.0, (0.0, 3.0), 2.0945514815423265),
            (lambda x: math.copysign(abs(x - 0.7) ** 0.5, x - 0.7), (0.0, 2.0), 0.7),
        ]
        for f, bracket, root in funcs:
            assert zero(f, bracket, tol=1e-12) == pytest.approx(root, abs=1e-9)


class TestAnova:
    def test_identical_groups(self):
        g = [1.0, 2.0, 3.0, 4.0]
        res = anova([g, g, g])
        assert res.f == 0.0
        assert res.p == 1.0

    def test_equals_squared_t_for_two_groups(self):
        a = np.array([3.1, 2.8, 3.5, 2.9, 3.3, 3.0])
        b = np.array([3.6, 3.9, 3.2, 3.8, 3.4, 4.0])
        res = anova([a, b])
        n = a.size
        sp2 = (np.sum((a - a.mean()) ** 2) + np.sum((b - b.mean()) ** 2)) / (2 * n - 2)
        t_stat = (a.mean() - b.mean()) / math.sqrt(sp2 * (2.0 / n))
        assert res.f == pytest.approx(t_stat**2, rel=1e-10)
        assert res.df_between == 1
        assert res.df_within == 2 * n - 2

    def test_hand_decomposed_three_groups(self):
        groups = [[1.0, 2.0, 3.0, 4.0], [2.0, 3.0, 4.0, 5.0], [6.0, 7.0, 8.0, 9.0]]
        arrs = [np.array(g) for g in groups]
        grand = np.mean(np.concatenate(arrs))
        ssb = sum(4 * (a.mean() - grand) ** 2 for a in arrs)
        ssw = sum(np.sum((a - a.mean()) ** 2) for a in arrs)
        ref_f = (ssb / 2.0) / (ssw / 9.0)
        res = anova(groups)
        assert res.f == pytest.approx(ref_f, rel=1e-12)
        assert 0.0 < res.p < 1.0

    def test_p_value_against_reference(self):
        # F = 4.0 with (2, 9) dof; right tail from 50-digit incomplete beta.
        import mpmath as mp

        groups = [[1.0, 2.0, 3.0, 4.0], [2.0, 3.0, 4.0, 5.0], [6.0, 7.0, 8.0, 9.0]]
        res = anova(groups)
        ref = float(mp.betainc(9 / 2, 2 / 2, 0, 9 / (9 + 2 * res.f), regularized=True))
        assert res.p == pytest.approx(ref, rel=1e-10)

    def test_errors(self):
        with pytest.raises(DataError):
            anova([[1.0, 2.0]])
        with pytest.raises(DataError):
            anova([[1.0, 2.0], [3.0]])


class TestIntegral:
    def test_smooth_function(self):
        assert integral(math.sin, 0.0, math.pi, n=32) == pytest.approx(2.0, rel=1e-13)

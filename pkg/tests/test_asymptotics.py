"""Numeric predictions: formulas, constants, tuning, log* arithmetic."""

import math

import pytest

from fograph import asymptotics as A


class TestDense:
    def test_half_values(self):
        rep = A.dense_predictions(2 ** 20, 0.5)
        expect = 20 - 2 * math.log2(math.log(2 ** 20)) + math.log2(math.log(2))
        assert abs(rep.r_lower - expect) < 1e-9

    def test_d0_specialization(self):
        # at p = 1/2 the coefficient collapses to 2 ln n / ln 2
        for n in (100, 10 ** 4):
            rep = A.dense_predictions(n, 0.5)
            assert abs(rep.d0_upper - 2 * math.log(n) / math.log(2)) < 1e-9

    def test_monotone_in_n(self):
        values = [A.dense_predictions(n, 0.5).r_lower
                  for n in range(100, 5000, 250)]
        assert values == sorted(values)

    def test_domain(self):
        with pytest.raises(A.AsymptoticsError):
            A.dense_predictions(1000, 0.7)
        with pytest.raises(A.AsymptoticsError):
            A.dense_predictions(2, 0.5)


class TestHalfTuning:
    def test_f_small_value(self):
        # C(5,1) * 4 * (3/4)^3 = 8.4375
        assert abs(math.exp(A.log_f(6, 2)) - 8.4375) < 1e-9

    def test_selection_ratio(self):
        for k in (8, 10, 12, 14):
            t = A.half_tuning(k)
            ratio = t.f_nk / (10 * math.log2(t.n_star))
            assert 0.5 <= ratio <= 2

    def test_theta_scale(self):
        for k in (10, 12):
            t = A.half_tuning(k)
            scale = (math.log(2) / 2) * k * k * 2 ** k
            assert scale / 4 <= t.n_star <= scale * 4

    def test_k_inequality(self):
        for k in (8, 10, 12, 14):
            t = A.half_tuning(k)
            assert t.k_bound_ok
            # the raw deficit stays below the rounding slack
            assert k - t.k_bound < 1

    def test_odd_k_rejected(self):
        with pytest.raises(A.AsymptoticsError):
            A.half_tuning(7)


class TestSparseFormulas:
    def test_lambda_1(self):
        n, p = 300, 0.01
        assert abs(A.lambda_k(n, p, 1) - n * (1 - p) ** (n - 1)) < 1e-9

    def test_lambda_2(self):
        n, p = 120, 0.02
        q = 1 - p
        expect = n * (n - 1) / 2 * p * q ** (2 * n - 4)
        assert abs(A.lambda_k(n, p, 2) - expect) / expect < 1e-12

    def test_fk_decreasing_in_k(self):
        for c in (0.3, 0.8, 1.19):
            vals = [A.f_k(c, k) for k in range(1, 41)]
            assert vals == sorted(vals, reverse=True)

    def test_f1_dominates(self):
        for c in (0.2, 0.7, 1.19):
            f1 = A.f_k(c, 1)
            assert abs(f1 - math.exp(-c)) < 1e-12
            assert all(f1 > A.f_k(c, k) for k in range(2, 10))

    def test_lambda_converges_to_fk(self):
        n, c = 10 ** 5, 0.8
        for k in range(1, 5):
            lam = A.lambda_k(n, c / n, k) / n
            fk = A.f_k(c, k)
            assert abs(lam - fk) / fk < 0.01


class TestConstants:
    def test_alpha(self):
        a = A.alpha_root()
        assert abs(a - 1.1918) < 5e-4
        t = a * math.exp(-a)
        assert abs(math.exp(-a + t) + 1 - math.exp(t)) < 1e-10

    def test_giant_s(self):
        assert A.giant_s(1) == 1
        for c in (1.2, 2, 3):
            s = A.giant_s(c)
            assert 0 < s < 1
            assert abs(s * math.exp(-s) - c * math.exp(-c)) < 1e-10

    def test_c0(self):
        c0 = A.c0_root()
        assert abs(c0 - 1.034) < 5e-3
        resid = (1 - A.giant_s(c0) / c0) - c0 * math.exp(-2 * c0) / 2
        assert abs(resid) < 1e-10

    def test_bad_bracket(self):
        with pytest.raises(A.AsymptoticsError):
            A._bisect(lambda x: 1.0, 0, 1)


class TestLogStar:
    def test_examples(self):
        assert A.log_star(16) == 4
        assert A.log_star(1) == 1
        assert A.log_star(2) == 2

    def test_tower(self):
        assert [A.tower(k) for k in range(5)] == [1, 2, 4, 16, 65536]
        with pytest.raises(A.AsymptoticsError):
            A.tower(6)

    def test_inverse_relation(self):
        for k in range(1, 6):
            assert A.log_star(A.tower(k)) == k + 1

    def test_nondecreasing(self):
        vals = [A.log_star(n) for n in range(1, 200)]
        assert vals == sorted(vals)

    def test_power_shift(self):
        for n in (2, 4, 16, 256):
            assert A.log_star(2 ** n) == A.log_star(n) + 1

    def test_lower_bound_helper(self):
        assert A.logstar_lower_bound(10 ** 6) >= 1
        big = A.tower(5)
        assert A.logstar_lower_bound(big) <= A.log_star(big)


def test_full_report_shapes():
    rep = A.full_report(512, 0.5, k=8)
    data = rep.to_json()
    assert data["n"] == 512 and "alpha" in data and "k_bound" in data

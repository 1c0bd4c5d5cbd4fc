"""Brute-force oracles: exactness cases, properties, cross-checks."""

import itertools
import math

import numpy as np
import pytest

from bhc.core import DomainError, Field, SizeLimitError
from bhc.recursion import best_constant
from bhc.verify import (
    MultilinearForm,
    VectorFamily,
    bh_check,
    bh_suite,
    blei_check,
    blei_suite,
    canonical_family,
    extremal_search,
    khinchine_check,
    khinchine_suite,
    littlewood_form,
    lp_norm,
    mixed_norm_lhs,
    multiple_summing_check,
    rademacher_moment,
    random_family,
    random_form,
    summing_suite,
    sup_norm_complex_lb,
    sup_norm_real,
    weak1_norm,
)

SQRT2 = math.sqrt(2.0)


class TestRademacherMoment:
    def test_single_coefficient(self):
        for p in (0.5, 1.0, 3.7):
            assert rademacher_moment([1.0], p) == pytest.approx(1.0, abs=1e-15)

    def test_two_ones(self):
        assert rademacher_moment([1.0, 1.0], 2.0) == pytest.approx(SQRT2, rel=1e-15)
        assert rademacher_moment([1.0, 1.0], 1.0) == 1.0

    def test_tight_lower_ratio(self):
        # the (1,1) vector at p=1 attains A_1 = 2^(-1/2)
        ratio = rademacher_moment([1.0, 1.0], 1.0) / np.linalg.norm([1.0, 1.0])
        assert abs(ratio - 2.0**-0.5) <= 1e-14

    def test_p2_is_l2_norm(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            a = rng.uniform(-1, 1, size=int(rng.integers(1, 11)))
            assert rademacher_moment(a, 2.0) == pytest.approx(float(np.linalg.norm(a)), rel=1e-12)

    def test_complex_coefficients(self):
        a = np.array([1.0 + 1.0j, 0.5 - 0.25j])
        assert rademacher_moment(a, 2.0) == pytest.approx(float(np.linalg.norm(a)), rel=1e-12)

    def test_errors(self):
        with pytest.raises(DomainError):
            rademacher_moment([1.0], 0.0)
        with pytest.raises(SizeLimitError):
            rademacher_moment(np.ones(21), 2.0)


class TestKhinchineCheck:
    def test_equality_at_two(self):
        rng = np.random.default_rng(8)
        report = khinchine_check(rng.uniform(-1, 1, 7), 2.0)
        assert report.passed
        assert report.ratio == pytest.approx(1.0, abs=1e-12)

    def test_tight_case(self):
        report = khinchine_check([1.0, 1.0], 1.0)
        assert report.passed
        assert abs(report.ratio - 2.0**-0.5) <= 1e-14

    def test_property_run(self):
        rng = np.random.default_rng(99)
        for _ in range(100):
            a = rng.uniform(-1, 1, 10)
            assert khinchine_check(a, 4.0 / 3.0).passed


class TestSupNormReal:
    def test_linear_is_l1(self):
        v = np.array([1.0, -2.0, 0.5])
        assert sup_norm_real(MultilinearForm(v, Field.REAL)) == pytest.approx(3.5, rel=1e-15)

    def test_rank_one(self):
        rng = np.random.default_rng(21)
        u, v = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 4)
        form = MultilinearForm(np.outer(u, v), Field.REAL)
        expected = float(np.abs(u).sum() * np.abs(v).sum())
        assert sup_norm_real(form) == pytest.approx(expected, rel=1e-12)

    def test_littlewood(self):
        assert sup_norm_real(littlewood_form(2)) == pytest.approx(2.0, rel=1e-15)

    def test_trilinear_all_ones(self):
        form = MultilinearForm(np.ones((2, 2, 2)), Field.REAL)
        assert sup_norm_real(form) == pytest.approx(8.0, rel=1e-13)

    def test_grid_oracle_cross_check(self):
        # independent oracle: dense grid over the cube, endpoints included
        rng = np.random.default_rng(31)
        for n in (2, 3):
            grid_1d = np.linspace(-1.0, 1.0, 9)
            grid = np.array(list(itertools.product(grid_1d, repeat=n)))
            for _ in range(5):
                a = rng.uniform(-1, 1, size=(n, n))
                brute = float(np.abs(grid @ a @ grid.T).max())
                fast = sup_norm_real(MultilinearForm(a, Field.REAL))
                assert abs(fast - brute) <= 2e-3

    def test_errors(self):
        with pytest.raises(DomainError):
            sup_norm_real(MultilinearForm(np.ones((2, 2)), Field.COMPLEX))
        with pytest.raises(SizeLimitError):
            sup_norm_real(MultilinearForm(np.ones((1, 25)), Field.REAL))

    def test_permutation_invariance(self):
        rng = np.random.default_rng(41)
        a = rng.uniform(-1, 1, size=(2, 3, 4))
        reference = sup_norm_real(MultilinearForm(a, Field.REAL))
        for perm in itertools.permutations(range(3)):
            permuted = MultilinearForm(np.transpose(a, perm), Field.REAL)
            assert sup_norm_real(permuted) == pytest.approx(reference, rel=1e-12)
            assert mixed_norm_lhs(permuted) == pytest.approx(
                mixed_norm_lhs(MultilinearForm(a, Field.REAL)), rel=1e-12
            )


class TestSupNormComplexLb:
    def test_real_embedding_is_reachable(self):
        rng = np.random.default_rng(51)
        for _ in range(10):
            a = rng.uniform(-1, 1, size=(3, 3))
            real_value = sup_norm_real(MultilinearForm(a, Field.REAL))
            lb = sup_norm_complex_lb(MultilinearForm(a, Field.COMPLEX), restarts=24, seed=7)
            assert lb >= real_value - 1e-9

    def test_rank_one_alignment(self):
        rng = np.random.default_rng(52)
        u = rng.uniform(-1, 1, 3) + 1j * rng.uniform(-1, 1, 3)
        v = rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4)
        form = MultilinearForm(np.outer(u, v), Field.COMPLEX)
        expected = float(np.abs(u).sum() * np.abs(v).sum())
        assert sup_norm_complex_lb(form, restarts=4, seed=1) == pytest.approx(expected, rel=1e-9)

    def test_zero_tensor(self):
        form = MultilinearForm(np.zeros((2, 2), dtype=complex), Field.COMPLEX)
        assert sup_norm_complex_lb(form, restarts=2, seed=0) == 0.0

    def test_field_guard(self):
        with pytest.raises(DomainError):
            sup_norm_complex_lb(MultilinearForm(np.ones((2, 2)), Field.REAL))


class TestMixedNorm:
    def test_littlewood(self):
        assert mixed_norm_lhs(littlewood_form(2)) == pytest.approx(4.0**0.75, rel=1e-15)

    def test_singleton(self):
        arr = np.zeros((3, 3))
        arr[1, 2] = -0.7
        assert mixed_norm_lhs(MultilinearForm(arr, Field.REAL)) == pytest.approx(0.7, rel=1e-15)

    def test_all_ones_cube(self):
        form = MultilinearForm(np.ones((2, 2, 2)), Field.REAL)
        assert mixed_norm_lhs(form) == pytest.approx(4.0, rel=1e-14)  # 8^(2/3)

    def test_lp_norm_monotone_in_exponent(self):
        rng = np.random.default_rng(61)
        tensors = [rng.uniform(-1, 1, size=(3, 3)) for _ in range(10)]
        exponents = [2.0 * m / (m + 1.0) for m in range(2, 11)]
        for t in tensors:
            values = [lp_norm(t, p) for p in exponents]
            assert all(b <= a * (1.0 + 1e-12) for a, b in zip(values, values[1:]))


class TestBhCheck:
    def test_littlewood_sharpness(self):
        report = bh_check(littlewood_form(2), best_constant(2, Field.REAL))
        assert report.passed
        assert abs(report.ratio - SQRT2) <= 1e-9

    def test_zero_form(self):
        report = bh_check(MultilinearForm(np.zeros((2, 2)), Field.REAL), best_constant(2, Field.REAL))
        assert report.passed and report.ratio == 0.0

    def test_property_run_trilinear(self):
        rng = np.random.default_rng(71)
        constant = best_constant(3, Field.REAL)
        for _ in range(200):
            form = random_form((3, 3, 3), Field.REAL, rng)
            assert bh_check(form, constant).passed

    def test_sandwich_property(self):
        rng = np.random.default_rng(72)
        for m in (2, 3):
            constant = best_constant(m, Field.REAL)
            for _ in range(50):
                form = random_form((3,) * m, Field.REAL, rng)
                report = bh_check(form, constant)
                assert 0.0 <= report.ratio <= constant.value + 1e-9

    def test_homogeneity(self):
        rng = np.random.default_rng(73)
        arr = rng.uniform(-1, 1, size=(3, 3))
        constant = best_constant(2, Field.REAL)
        base = bh_check(MultilinearForm(arr, Field.REAL), constant)
        for t in (2.0, 0.37):
            scaled = bh_check(MultilinearForm(t * arr, Field.REAL), constant)
            assert scaled.passed == base.passed
            assert scaled.ratio == pytest.approx(base.ratio, rel=1e-12)
            assert scaled.lhs == pytest.approx(t * base.lhs, rel=1e-12)

    def test_complex_is_diagnostic(self):
        form = littlewood_form(2, Field.COMPLEX)
        report = bh_check(form, best_constant(2, Field.COMPLEX), restarts=8, seed=3)
        assert report.check == "bh-diagnostic"
        assert report.passed  # never hard-fails
        # complex norm of the Littlewood matrix is 2*sqrt(2), so the ratio is 1
        assert report.ratio == pytest.approx(1.0, rel=1e-9)


class TestWeak1Norm:
    def test_canonical_basis(self):
        assert weak1_norm(canonical_family(6)) == 1.0

    def test_single_vector(self):
        fam = VectorFamily(np.array([[0.3, -2.5, 1.0]]), Field.REAL)
        assert weak1_norm(fam) == 2.5

    def test_two_sign_vectors(self):
        fam = VectorFamily(np.array([[1.0, 1.0], [1.0, -1.0]]), Field.REAL)
        assert weak1_norm(fam) == 2.0

    def test_empty_family(self):
        fam = VectorFamily(np.zeros((0, 4)), Field.REAL)
        assert weak1_norm(fam) == 0.0


class TestMultipleSumming:
    def test_canonical_families_reduce_to_bh(self):
        rng = np.random.default_rng(81)
        for m in (2, 3):
            constant = best_constant(m, Field.REAL)
            for _ in range(25):
                form = random_form((3,) * m, Field.REAL, rng)
                families = [canonical_family(3) for _ in range(m)]
                summing = multiple_summing_check(form, families, constant)
                bh = bh_check(form, constant)
                assert summing.passed == bh.passed
                assert abs(summing.ratio - bh.ratio) <= 1e-12

    def test_scaling_invariance(self):
        rng = np.random.default_rng(82)
        form = random_form((3, 3), Field.REAL, rng)
        constant = best_constant(2, Field.REAL)
        families = [random_family(4, 3, Field.REAL, rng) for _ in range(2)]
        base = multiple_summing_check(form, families, constant)
        t = 3.7
        scaled_families = [VectorFamily(t * f.vectors, Field.REAL) for f in families]
        scaled = multiple_summing_check(form, scaled_families, constant)
        assert scaled.passed == base.passed
        assert scaled.ratio == pytest.approx(base.ratio, rel=1e-12)
        assert scaled.lhs == pytest.approx(t**2 * base.lhs, rel=1e-12)

    def test_property_run(self):
        reports = summing_suite(2, 3, 100, seed=17)
        assert all(r.passed for r in reports)

    def test_dimension_mismatch(self):
        form = littlewood_form(2)
        with pytest.raises(DomainError):
            multiple_summing_check(form, [canonical_family(2)], best_constant(2, Field.REAL))
        with pytest.raises(DomainError):
            multiple_summing_check(
                form, [canonical_family(2), canonical_family(3)], best_constant(2, Field.REAL)
            )


class TestBleiCheck:
    def test_all_ones_equality(self):
        report = blei_check(np.ones((2, 2)), 2.0, 4.0 / 3.0, 4.0 / 3.0)
        assert report.passed
        assert report.lhs == pytest.approx(2.0**1.25, rel=1e-13)
        assert abs(report.lhs - report.rhs) <= 1e-12 * report.lhs

    def test_single_entry(self):
        report = blei_check(np.array([[0.42]]), 2.0, 1.5, 1.2)
        assert report.lhs == pytest.approx(0.42, rel=1e-13)
        assert report.rhs == pytest.approx(0.42, rel=1e-13)

    def test_property_run(self):
        reports = blei_suite(200, seed=7)
        assert all(r.passed for r in reports)

    def test_domain(self):
        with pytest.raises(DomainError):
            blei_check(np.array([[1.0, -0.1]]), 2.0, 1.2, 1.2)
        with pytest.raises(DomainError):
            blei_check(np.ones((2, 2)), 1.1, 1.2, 1.2)


class TestExtremalSearch:
    def test_linear_case_is_unit(self):
        report = extremal_search(1, 4, Field.REAL, budget=2000, seed=3)
        assert report.ratio == 1.0

    def test_bilinear_recovers_littlewood(self):
        report = extremal_search(2, 2, Field.REAL, budget=20000, seed=0)
        assert report.ratio >= SQRT2 - 1e-6
        assert report.ratio <= SQRT2 + 1e-9
        assert report.passed

    def test_trilinear_respects_upper_bound(self):
        report = extremal_search(3, 2, Field.REAL, budget=10000, seed=42)
        assert report.ratio <= 2.0 ** (5.0 / 6.0) + 1e-9

    def test_complex_is_diagnostic(self):
        report = extremal_search(2, 2, Field.COMPLEX, budget=2000, seed=1)
        assert report.check == "search-diagnostic"
        assert report.passed

    def test_domain(self):
        with pytest.raises(DomainError):
            extremal_search(0, 2)
        with pytest.raises(DomainError):
            extremal_search(2, 2, budget=0)


class TestSuites:
    def test_khinchine_suite(self):
        reports = khinchine_suite(50, n_max=8, ps=(2.0,), seed=13)
        assert len(reports) == 50
        assert all(r.passed for r in reports)
        assert all(abs(r.ratio - 1.0) <= 1e-12 for r in reports)

    def test_bh_suite_injects_littlewood(self):
        reports = bh_suite(2, 2, 50, seed=42)
        assert all(r.passed for r in reports)
        assert max(r.ratio for r in reports) == pytest.approx(SQRT2, abs=1e-9)

    def test_form_validation(self):
        with pytest.raises(DomainError):
            MultilinearForm(np.array([[np.inf, 1.0]]), Field.REAL)
        with pytest.raises(DomainError):
            MultilinearForm(np.float64(3.0), Field.REAL)

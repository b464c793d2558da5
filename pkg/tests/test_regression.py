"""Least-squares fitting, intercept adjustment, and interaction expansion."""

import numpy as np
import pytest

from subdata import (
    ConfigError,
    DimensionError,
    InteractionSpec,
    SingularDesignError,
    adjusted_intercept,
    expand_interactions,
    expanded_column_count,
    fit_ols,
    with_intercept,
)


class TestFitOls:
    def test_exact_recovery_without_noise(self):
        rng = np.random.default_rng(0)
        x = rng.normal(size=(50, 4))
        beta = np.array([2.0, -1.0, 0.5, 3.0])
        y = 1.5 + x @ beta
        fit = fit_ols(x, y)
        assert fit.intercept == pytest.approx(1.5, abs=1e-10)
        assert np.allclose(fit.slopes, beta, atol=1e-10)
        assert fit.intercept_variant == "joint-ols"

    def test_matches_normal_equations(self):
        for seed in range(10):
            rng = np.random.default_rng(seed)
            x = rng.normal(size=(40, 3))
            y = rng.normal(size=40)
            z = with_intercept(x)
            want = np.linalg.solve(z.T @ z, z.T @ y)
            fit = fit_ols(x, y)
            assert fit.intercept == pytest.approx(want[0], abs=1e-8)
            assert np.allclose(fit.slopes, want[1:], atol=1e-8)

    def test_residuals_orthogonal_to_design(self):
        rng = np.random.default_rng(4)
        x = rng.normal(size=(60, 5))
        y = rng.normal(size=60)
        fit = fit_ols(x, y)
        r = y - fit.intercept - x @ fit.slopes
        z = with_intercept(x)
        assert np.max(np.abs(z.T @ r)) <= 1e-8

    def test_saturated_fit_interpolates(self):
        rng = np.random.default_rng(8)
        x = rng.normal(size=(4, 3))
        y = rng.normal(size=4)
        fit = fit_ols(x, y)
        assert np.allclose(fit.intercept + x @ fit.slopes, y, atol=1e-8)

    def test_duplicate_column_raises_with_rank(self):
        rng = np.random.default_rng(1)
        base = rng.normal(size=(30, 2))
        x = np.column_stack([base, base[:, 0]])
        with pytest.raises(SingularDesignError) as err:
            fit_ols(x, np.ones(30))
        assert err.value.rank == 3  # intercept + 2 independent columns

    def test_constant_column_collides_with_intercept(self):
        rng = np.random.default_rng(2)
        x = np.column_stack([rng.normal(size=20), np.full(20, 3.0)])
        with pytest.raises(SingularDesignError):
            fit_ols(x, np.ones(20))

    def test_too_few_rows(self):
        with pytest.raises(SingularDesignError):
            fit_ols(np.ones((2, 3)) + np.random.default_rng(0).normal(size=(2, 3)), np.ones(2))


class TestAdjustedIntercept:
    def test_formula(self):
        rng = np.random.default_rng(5)
        x = rng.normal(size=(80, 3))
        y = rng.normal(size=80)
        sub = fit_ols(x[:20], y[:20])
        adj = adjusted_intercept(sub, x.mean(axis=0), float(y.mean()))
        want = y.mean() - x.mean(axis=0) @ sub.slopes
        assert adj.intercept == pytest.approx(want, abs=1e-12)
        assert np.array_equal(adj.slopes, sub.slopes)
        assert adj.intercept_variant == "adjusted"
        assert sub.intercept_variant == "joint-ols"

    def test_full_data_adjustment_reproduces_joint_fit(self):
        # the first normal equation makes these identical in exact math
        rng = np.random.default_rng(6)
        x = rng.normal(size=(100, 4))
        y = 2.0 + x @ np.ones(4) + rng.normal(size=100)
        fit = fit_ols(x, y)
        adj = adjusted_intercept(fit, x.mean(axis=0), float(y.mean()))
        assert adj.intercept == pytest.approx(fit.intercept, abs=1e-10)

    def test_mean_length_checked(self):
        fit = fit_ols(np.random.default_rng(0).normal(size=(10, 2)), np.ones(10))
        with pytest.raises(DimensionError):
            adjusted_intercept(fit, np.zeros(3), 0.0)


class TestExpandInteractions:
    def test_two_covariates(self):
        x = np.array([[1.0, 2.0], [3.0, 4.0]])
        z = expand_interactions(x)
        assert z.shape == (2, 3)
        assert np.array_equal(z[:, :2], x)
        assert np.array_equal(z[:, 2], [2.0, 12.0])

    def test_pair_order_is_lexicographic(self):
        x = np.arange(1.0, 5.0).reshape(1, 4)
        z = expand_interactions(x)
        # pairs (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
        assert np.array_equal(z[0, 4:], [2.0, 3.0, 4.0, 6.0, 8.0, 12.0])

    def test_ten_covariates_width(self):
        x = np.random.default_rng(0).normal(size=(7, 10))
        z = expand_interactions(x)
        assert z.shape == (7, 55)
        assert expanded_column_count(10) == 55
        assert expanded_column_count(2) == 3
        assert expanded_column_count(3) == 6

    def test_custom_spec(self):
        x = np.arange(6.0).reshape(2, 3)
        spec = InteractionSpec(base_p=3, pairs=((0, 2),))
        z = expand_interactions(x, spec)
        assert z.shape == (2, 4)
        assert np.array_equal(z[:, 3], x[:, 0] * x[:, 2])

    def test_full_spec_matches_default(self):
        x = np.random.default_rng(3).normal(size=(5, 4))
        assert np.array_equal(
            expand_interactions(x), expand_interactions(x, InteractionSpec.full(4))
        )

    def test_spec_validation(self):
        with pytest.raises(ConfigError):
            InteractionSpec(base_p=2, pairs=((0, 2),))
        with pytest.raises(ConfigError):
            InteractionSpec(base_p=2, pairs=((1, 0),))
        with pytest.raises(ConfigError):
            InteractionSpec(base_p=0, pairs=())
        x = np.ones((3, 3))
        with pytest.raises(DimensionError):
            expand_interactions(x, InteractionSpec(base_p=2, pairs=((0, 1),)))


class TestWithIntercept:
    def test_prepends_ones(self):
        x = np.arange(6.0).reshape(3, 2)
        z = with_intercept(x)
        assert z.shape == (3, 3)
        assert np.array_equal(z[:, 0], np.ones(3))
        assert np.array_equal(z[:, 1:], x)

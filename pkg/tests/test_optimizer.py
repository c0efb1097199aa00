import math

import numpy as np
import pytest

from nosig.bounds import family_chsh_bounds
from nosig.errors import InvalidInputError
from nosig.optimizer import (OptimizerConfig, maximize_chsh_lower,
                             minimize_chsh_upper, nelder_mead_batch, sweep)

FAST = OptimizerConfig(restarts=20, max_iters=2000, tol=1e-10, seed=7)


class TestNelderMeadBatch:
    def test_batched_quadratic(self):
        target = np.array([0.3, -1.2, 2.5])

        def objective(p):
            return np.sum((p - target) ** 2, axis=1)

        rng = np.random.default_rng(0)
        x0 = rng.normal(0, 2, (8, 3))
        pts, vals, iters = nelder_mead_batch(objective, x0,
                                             max_iters=2000, tol=1e-12)
        assert np.allclose(pts, target[None, :], atol=1e-5)
        assert np.all(vals < 1e-10)
        assert np.all(iters < 2000)

    def test_history_monotone(self):
        def objective(p):
            return np.sum(p ** 2, axis=1) + np.abs(p[:, 0])

        rng = np.random.default_rng(1)
        history = []
        nelder_mead_batch(objective, rng.normal(0, 1, (6, 4)),
                          max_iters=300, tol=1e-10, history=history)
        h = np.array(history)
        assert h.shape[0] > 2
        assert np.all(np.diff(h, axis=0) <= 1e-15)

    def test_loose_tolerance_freezes_early(self):
        def objective(p):
            return np.sum(p ** 2, axis=1)

        x0 = np.full((3, 5), 2.0)
        _, _, tight = nelder_mead_batch(objective, x0, max_iters=500, tol=1e-12)
        _, _, loose = nelder_mead_batch(objective, x0, max_iters=500, tol=1e-2)
        assert np.all(loose < tight)


class TestEndpoints:
    def test_product_limit(self):
        lo = maximize_chsh_lower(0.0, FAST)
        up = minimize_chsh_upper(0.0, FAST)
        assert lo.value == pytest.approx(-4.0, abs=1e-9)
        assert up.value == pytest.approx(4.0, abs=1e-9)

    def test_ghz_limit(self):
        lo = maximize_chsh_lower(math.pi / 2, FAST)
        up = minimize_chsh_upper(math.pi / 2, FAST)
        assert lo.value == pytest.approx(2.0, abs=1e-9)
        assert up.value == pytest.approx(-2.0, abs=1e-9)

    def test_pinning_start_alone_reaches_ghz_value(self):
        cfg = OptimizerConfig(restarts=1, max_iters=2000, tol=1e-10, seed=0)
        lo = maximize_chsh_lower(math.pi / 2, cfg)
        up = minimize_chsh_upper(math.pi / 2, cfg)
        assert lo.value >= 2.0 - 1e-9
        assert up.value <= -2.0 + 1e-9


class TestSearchInvariants:
    def test_reevaluation_matches_reported_value(self):
        lo = maximize_chsh_lower(0.7, FAST)
        up = minimize_chsh_upper(0.7, FAST)
        assert family_chsh_bounds(0.7, lo.params[None, :])[0][0] == \
            pytest.approx(lo.value, abs=1e-12)
        assert family_chsh_bounds(0.7, up.params[None, :])[1][0] == \
            pytest.approx(up.value, abs=1e-12)

    def test_restart_dominance(self):
        few = OptimizerConfig(restarts=6, max_iters=1500, tol=1e-9, seed=3)
        many = OptimizerConfig(restarts=24, max_iters=1500, tol=1e-9, seed=3)
        alpha = 0.9
        assert maximize_chsh_lower(alpha, many).value >= \
            maximize_chsh_lower(alpha, few).value - 1e-12
        assert minimize_chsh_upper(alpha, many).value <= \
            minimize_chsh_upper(alpha, few).value + 1e-12

    def test_deterministic_repeat(self):
        a = maximize_chsh_lower(1.1, FAST)
        b = maximize_chsh_lower(1.1, FAST)
        assert a.value == b.value
        assert np.array_equal(a.params, b.params)
        assert a.iterations == b.iterations

    def test_symmetry_of_directions(self):
        cfg = OptimizerConfig(restarts=40, max_iters=2000, tol=1e-10, seed=5)
        alpha = math.acos(math.sqrt(0.75))
        lo = maximize_chsh_lower(alpha, cfg)
        up = minimize_chsh_upper(alpha, cfg)
        assert abs(up.value + lo.value) <= 1e-3


class TestSweep:
    def test_records_and_determinism(self):
        grid = (0.0, 0.6, math.pi / 2)
        cfg = OptimizerConfig(restarts=5, max_iters=1200, tol=1e-9, seed=11,
                              alpha_grid=grid)
        first = sweep(cfg)
        second = sweep(cfg)
        assert len(first) == 3
        for r1, r2 in zip(first, second):
            assert r1.alpha == r2.alpha
            assert r1.l_bar == r2.l_bar
            assert r1.u_bar == r2.u_bar
            assert np.array_equal(r1.params_lower, r2.params_lower)
            assert np.array_equal(r1.params_upper, r2.params_upper)
            assert r1.iterations_total == r2.iterations_total
        for rec in first:
            assert rec.cos2_alpha == pytest.approx(math.cos(rec.alpha) ** 2)
            assert rec.restarts == 5
            assert rec.l_bar <= 2.0 + 1e-6
            assert rec.u_bar >= -2.0 - 1e-6

    def test_empty_grid_rejected(self):
        with pytest.raises(InvalidInputError):
            sweep(OptimizerConfig(alpha_grid=()))


class TestConfigValidation:
    def test_bad_restarts(self):
        with pytest.raises(InvalidInputError):
            OptimizerConfig(restarts=0)

    def test_bad_max_iters(self):
        with pytest.raises(InvalidInputError):
            OptimizerConfig(max_iters=0)

    def test_bad_seed(self):
        with pytest.raises(InvalidInputError):
            OptimizerConfig(seed=-1)
        with pytest.raises(InvalidInputError):
            OptimizerConfig(seed=2 ** 64)

    def test_bad_grid_value(self):
        with pytest.raises(InvalidInputError):
            OptimizerConfig(alpha_grid=(0.1, 2.0))

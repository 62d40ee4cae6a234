import numpy as np
import pytest

from ecokit import (
    GridSpec,
    ParametricHubModel,
    TransactionTerms,
    analyze_parametric_hub,
    grid_equal_split,
    grid_max_consumer,
    grid_max_welfare,
    two_actor_fee,
)
from ecokit.errors import EvaluationFailure, Infeasible

from conftest import quadratic_hub, random_terms, worked_model


class TestGridSpec:
    def test_points_inclusive(self):
        pts = GridSpec(0, 10, 1e-3).points()
        assert len(pts) == 10001
        assert pts[0] == 0 and pts[-1] == pytest.approx(10)

    def test_partial_last_step(self):
        pts = GridSpec(0, 1, 0.3).points()
        assert len(pts) == 4 and pts[-1] <= 1

    @pytest.mark.parametrize("args", [(1, 0, 0.1), (0, 1, 0), (0, 1, -1), (0, 1e8, 1e-3)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            GridSpec(*args)

    def test_parse(self):
        assert GridSpec.parse("0:10:0.5") == GridSpec(0, 10, 0.5)
        with pytest.raises(ValueError):
            GridSpec.parse("0-10")


class TestGridWelfare:
    def test_worked_model(self):
        assert grid_max_welfare(worked_model(), GridSpec(0, 10, 1e-3)).x_hat == pytest.approx(6, abs=1e-3)

    def test_constant_returns_low(self):
        model = ParametricHubModel(lambda x: 0 * x, lambda n: 3 + 0 * n, lambda n: 0 * n)
        assert grid_max_welfare(model, GridSpec(2, 5, 0.5)).x_hat == 2

    def test_restricted_grid_hits_boundary(self):
        assert grid_max_welfare(worked_model(), GridSpec(0, 4, 1e-3)).x_hat == pytest.approx(4)
        assert grid_max_welfare(worked_model(), GridSpec(8, 10, 1e-3)).x_hat == 8

    def test_evaluation_failure(self):
        def n_of_x(x):
            if x > 3:
                raise RuntimeError("no data")
            return 2.0 * x

        model = ParametricHubModel(n_of_x, lambda n: n, lambda n: 0.0)
        with pytest.raises(EvaluationFailure) as info:
            grid_max_welfare(model, GridSpec(0, 5, 0.5))
        assert info.value.x == 3.5


class TestGridConsumer:
    def test_worked_model(self):
        assert grid_max_consumer(worked_model(), GridSpec(0, 10, 1e-3)).x_hat == pytest.approx(4.5, abs=1e-3)

    def test_no_providers(self):
        model = ParametricHubModel(lambda x: 0 * x, lambda n: 20 * n - n * n, lambda n: 2 * n)
        assert grid_max_consumer(model, GridSpec(1, 3, 0.25)).x_hat == 1

    def test_decreasing_supply_accepted(self):
        model = ParametricHubModel(lambda x: 10 - x, lambda n: 20 * n, lambda n: 0 * n)
        # W^C = 20(10-X) - (10-X)X is decreasing on [0, 10]
        assert grid_max_consumer(model, GridSpec(0, 10, 0.01)).x_hat == 0


class TestGridEqualSplit:
    def test_example(self):
        assert grid_equal_split(TransactionTerms(2, 10, 3, 1), GridSpec(-5, 10, 1e-3)) == pytest.approx(5, abs=1e-3)

    def test_egalitarian(self):
        assert grid_equal_split(TransactionTerms(5, 5, 1, 1), GridSpec(-5, 10, 1e-3)) == pytest.approx(0, abs=1e-3)

    def test_subsidy(self):
        assert grid_equal_split(TransactionTerms(8, 2, 1, 1), GridSpec(-5, 10, 1e-3)) == pytest.approx(-3, abs=1e-3)

    def test_infeasible(self):
        with pytest.raises(Infeasible):
            grid_equal_split(TransactionTerms(1, 1, 2, 2), GridSpec(-5, 10, 1e-3))


class TestAgreement:
    def test_equal_split_randomized(self, rng):
        for terms in random_terms(rng, 100, feasible=True):
            x = two_actor_fee(terms).x_star
            g = GridSpec(x - 50.123, x + 49.877, 1e-3)
            assert abs(grid_equal_split(terms, g) - x) <= g.step

    def test_hub_models_randomized(self, rng):
        checked = 0
        while checked < 100:
            a, q, c, k, b = rng.uniform(5, 50), rng.uniform(0.01, 1), rng.uniform(0, 2), rng.uniform(0, 5), rng.uniform(0.5, 5)
            x_c = (a - c - 2 * q * k - k / b) / (2 + 2 * q * b)
            if x_c < 0.5:
                continue
            model = quadratic_hub(a, q, c, k, b)
            result = analyze_parametric_hub(model, (0, a))
            g = GridSpec(0, a, 1e-3)
            assert abs(grid_max_welfare(model, g).x_hat - result.x_star_w) <= g.step
            assert abs(grid_max_consumer(model, g).x_hat - result.x_star_c) <= g.step
            checked += 1

    def test_refinement_stability(self, rng):
        for terms in random_terms(rng, 20, feasible=True):
            x = two_actor_fee(terms).x_star
            coarse = GridSpec(x - 7.31, x + 5.17, 1e-2)
            fine = GridSpec(x - 7.31, x + 5.17, 1e-3)
            assert abs(grid_equal_split(terms, coarse) - grid_equal_split(terms, fine)) <= coarse.step
        model = worked_model()
        for sub in (grid_max_welfare, grid_max_consumer):
            coarse, fine = sub(model, GridSpec(0, 10, 1e-2)), sub(model, GridSpec(0, 10, 1e-3))
            assert abs(coarse.x_hat - fine.x_hat) <= 1e-2

    def test_vectorized_and_scalar_paths_agree(self):
        vec = worked_model()
        scalar = ParametricHubModel(
            n_of_x=lambda x: float(2.0 * x),
            v_c_of_n=lambda n: float(20.0 * n - 0.5 * n * n),
            t_c_of_n=lambda n: float(2.0 * n),
        )
        g = GridSpec(0, 10, 1e-2)
        assert grid_max_consumer(vec, g) == grid_max_consumer(scalar, g)
        assert np.isclose(grid_max_welfare(vec, g).value, grid_max_welfare(scalar, g).value)

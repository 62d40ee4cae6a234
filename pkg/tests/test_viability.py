import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ecokit import (
    AverageProfile,
    Preference,
    consumer_engagement,
    general_feasibility,
    hub_feasibility_curve,
    provider_engagement,
    viability_region,
)
from ecokit.errors import AmbiguousCase

small = st.integers(0, 50).map(float)


class TestGeneralFeasibility:
    def test_example(self):
        margin, ok = general_feasibility(AverageProfile(5, 10, 10, 1, 2, 3))
        assert margin == 5
        assert ok

    def test_empty_is_not_feasible(self):
        assert general_feasibility(AverageProfile(0, 0, 10, 1, 2, 3)) == (0, False)

    def test_investment_flips(self):
        margin, ok = general_feasibility(AverageProfile(5, 10, 10, 1, 7, 3))
        assert margin == -20
        assert not ok

    def test_validation(self):
        with pytest.raises(ValueError):
            AverageProfile(-1, 0, 10, 1, 2, 3)
        with pytest.raises(ValueError):
            AverageProfile(1, 0, 10, -1, 2, 3)

    @given(st.integers(1, 200), st.floats(0, 100), st.floats(0, 100), st.floats(0, 100), st.floats(0, 20), st.floats(0, 500))
    def test_single_consumer_is_hub_curve(self, m, v, t_c, t_p, i_c, _):
        # one consumer aggregating m relations == hub with m providers
        margin, _ = general_feasibility(AverageProfile(1, m, m * v, m * t_c, i_c, t_p))
        (row,) = hub_feasibility_curve(v, t_c, t_p, i_c, [m])
        assert margin == pytest.approx(row.margin, rel=1e-12, abs=1e-9)


class TestRegion:
    def test_row_prefix(self):
        region = viability_region(10, 1, 2, 3, n_max=5, m_max=20)
        assert region.feasible_ms(3) == list(range(7))
        cell = next(c for c in region.cells if (c.n, c.m) == (3, 7))
        assert cell.margin == 0 and not cell.feasible
        assert region.boundary_slope == pytest.approx(7 / 3)

    def test_zero_provider_cost(self):
        region = viability_region(10, 1, 2, 0, n_max=4, m_max=6)
        assert math.isinf(region.boundary_slope)
        for c in region.cells:
            assert c.feasible == (c.n > 0)

    def test_sorted_and_complete(self):
        region = viability_region(10, 1, 2, 3, n_max=3, m_max=4)
        keys = [(c.n, c.m) for c in region.cells]
        assert keys == sorted(keys)
        assert len(keys) == 4 * 5

    @given(small, small, small, st.floats(0.1, 20), st.integers(1, 12))
    def test_monotone_prefix(self, v_c, t_c, i_c, t_p, n_max):
        region = viability_region(v_c, t_c, i_c, t_p, n_max=n_max, m_max=25)
        for n in range(n_max + 1):
            row = [c for c in region.cells if c.n == n]
            margins = [c.margin for c in row]
            assert all(a > b for a, b in zip(margins, margins[1:]))
            flags = [c.feasible for c in row]
            assert flags == sorted(flags, reverse=True)

    def test_csv_format(self):
        text = viability_region(10, 1, 2, 3, n_max=1, m_max=2).to_csv()
        assert text.splitlines() == [
            "n,m,margin,feasible",
            "0,0,0,false",
            "0,1,-3,false",
            "0,2,-6,false",
            "1,0,7,true",
            "1,1,4,true",
            "1,2,1,true",
        ]

    def test_csv_nine_significant_digits(self):
        text = viability_region(10, 1, 2, 3.3333333333, n_max=1, m_max=1).to_csv()
        assert "1,1,3.66666667,true" in text.splitlines()

    def test_no_negative_zero(self):
        text = viability_region(1, 5, 0, 1, n_max=1, m_max=1).to_csv()
        assert "-0," not in text


class TestEngagement:
    def test_consumer_prefers(self):
        assert consumer_engagement(2, 3) is Preference.ECOSYSTEM

    def test_consumer_tie(self):
        assert consumer_engagement(3, 3) is Preference.STANDARD

    @pytest.mark.parametrize(
        "v_p_eco, v_p_std, t_p_eco, t_p_std, case, prefers",
        [
            (6, 1, 4, 2, "b", True),
            (0, 1, 5, 2, "d", False),
            (2, 1, 1, 2, "a", True),
            (1, 3, 1, 5, "c", True),
            (2, 1, 7, 2, "b", False),
        ],
    )
    def test_provider_cases(self, v_p_eco, v_p_std, t_p_eco, t_p_std, case, prefers):
        r = provider_engagement(v_p_eco, v_p_std, t_p_eco, t_p_std)
        assert (r.case, r.prefers_ecosystem) == (case, prefers)

    @pytest.mark.parametrize("args", [(1, 1, 3, 2), (2, 1, 2, 2)])
    def test_ambiguous(self, args):
        with pytest.raises(AmbiguousCase):
            provider_engagement(*args)

    @given(st.integers(0, 100), st.integers(0, 100), st.integers(-1000, 1000))
    def test_consumer_shift_invariance(self, t_eco, t_std, k):
        shifted = consumer_engagement(t_eco + k + 1000, t_std + k + 1000)
        assert shifted is consumer_engagement(t_eco, t_std)

    @given(*(st.integers(0, 100) for _ in range(4)), st.integers(0, 1000))
    def test_provider_shift_invariance(self, v_eco, v_std, t_eco, t_std, k):
        try:
            base = provider_engagement(v_eco, v_std, t_eco, t_std)
        except AmbiguousCase:
            with pytest.raises(AmbiguousCase):
                provider_engagement(v_eco, v_std, t_eco + k, t_std + k)
            return
        assert provider_engagement(v_eco + k, v_std + k, t_eco + k, t_std + k) == base

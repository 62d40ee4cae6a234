import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ecokit import (
    ComparisonParams,
    Ecosystem,
    FederatorTerms,
    StructureClass,
    TransactionTerms,
    classify_structure,
    compare_gaiax_dataspace,
    federator_adjust,
    two_actor_fee,
)

from conftest import feasible_terms

TERMS = TransactionTerms(v_p=2, v_c=10, t_p=3, t_c=1)


class TestFederator:
    def test_example(self):
        adj = federator_adjust(TERMS, FederatorTerms(1, 1, 1.5))
        assert (adj.terms.t_p, adj.terms.t_c) == (4, 2)
        assert adj.federator_margin == 0.5
        assert adj.federator_feasible

    def test_zero_fees(self):
        adj = federator_adjust(TERMS, FederatorTerms(0, 0, 0))
        assert adj.terms == TERMS
        assert adj.federator_margin == 0
        assert not adj.federator_feasible

    @given(feasible_terms(), st.floats(0, 20))
    def test_symmetric_fee_invariance(self, terms, f):
        adj = federator_adjust(terms, FederatorTerms(f, f, 0))
        assume(adj.terms.total_margin > 1e-6)
        assert two_actor_fee(adj.terms).x_star == pytest.approx(two_actor_fee(terms).x_star, abs=1e-12)

    @given(feasible_terms(), st.floats(0, 20), st.floats(0, 20))
    def test_margin_drop(self, terms, f_p, f_c):
        adj = federator_adjust(terms, FederatorTerms(f_p, f_c, 1))
        assert adj.terms.total_margin == pytest.approx(terms.total_margin - f_p - f_c, abs=1e-12)

    def test_fee_kept(self):
        assert federator_adjust(TERMS.with_fee(5), FederatorTerms(1, 1, 1)).terms.x == 5

    def test_validation(self):
        with pytest.raises(ValueError):
            FederatorTerms(-1, 0, 0)


class TestGaiaX:
    def test_example(self):
        cmp = compare_gaiax_dataspace(ComparisonParams(delta_v=4, t_p_g=2, alpha=0.1))
        assert cmp.x_g == pytest.approx(2.9, abs=1e-12)
        assert cmp.x_d == 2
        assert cmp.premium == pytest.approx(0.9, abs=1e-12)
        assert "bargaining power" in cmp.note

    def test_consistent_with_two_actor(self):
        fee = two_actor_fee(TransactionTerms(v_p=0, v_c=4, t_p=2, t_c=0.2))
        assert fee.x_star == pytest.approx(2.9, abs=1e-12)

    def test_no_provider_cost(self):
        cmp = compare_gaiax_dataspace(ComparisonParams(delta_v=4, t_p_g=0, alpha=0.05))
        assert cmp.x_g == cmp.x_d
        assert cmp.premium == 0

    def test_alpha_limit(self):
        premiums = [compare_gaiax_dataspace(ComparisonParams(4, 2, 1 - 10.0**-k)).premium for k in range(1, 8)]
        assert all(a > b for a, b in zip(premiums, premiums[1:]))
        assert premiums[-1] < 1e-6

    @given(st.floats(-50, 50), st.floats(0, 100), st.floats(0.001, 0.999))
    def test_premium_identity(self, delta_v, t_p_g, alpha):
        cmp = compare_gaiax_dataspace(ComparisonParams(delta_v, t_p_g, alpha))
        assert cmp.premium == pytest.approx(0.5 * (1 - alpha) * t_p_g, abs=1e-12)
        assert cmp.premium >= 0

    def test_beta_derives_data_space_cost(self):
        assert compare_gaiax_dataspace(ComparisonParams(4, 2, 0.1, beta=0.5)).t_d == 1
        assert compare_gaiax_dataspace(ComparisonParams(4, 2, 0.1, beta=0.5, t_d=3)).t_d == 3
        assert compare_gaiax_dataspace(ComparisonParams(4, 2, 0.1)).t_d is None

    @pytest.mark.parametrize("alpha", [0, 1, -0.1, 1.5])
    def test_alpha_bounds(self, alpha):
        with pytest.raises(ValueError):
            ComparisonParams(4, 2, alpha)


def star(values_p):
    spokes = [f"s{i}" for i in range(len(values_p))]
    return Ecosystem.build(
        spokes + ["platform"],
        [(s, "platform", TransactionTerms(v_p, 10, 1, 1)) for s, v_p in zip(spokes, values_p)],
    )


class TestClassify:
    def test_hidden(self):
        assert classify_structure(star([5, 0]), value_visible=False).label is StructureClass.INDETERMINATE

    def test_market_arrangement(self):
        result = classify_structure(star([0, 0, 0]))
        assert result.label is StructureClass.MARKET_ARRANGEMENT
        assert "proxy" in result.reason

    def test_ecosystem_proper(self):
        assert classify_structure(star([0, 5, 0])).label is StructureClass.ECOSYSTEM_PROPER

    @given(st.lists(st.floats(0, 10), min_size=1, max_size=8), st.randoms())
    def test_isomorphism_invariance_when_hidden(self, values_p, rnd):
        eco = star(values_p)
        ids = [p.id for p in eco.participants]
        relabel = dict(zip(ids, rnd.sample(ids, len(ids))))
        renamed = Ecosystem.build(
            [relabel[i] for i in ids],
            [(relabel[e.provider], relabel[e.consumer], e.terms) for e in eco.edges],
        )
        assert classify_structure(renamed, False).label is StructureClass.INDETERMINATE
        assert classify_structure(renamed).label is classify_structure(eco).label

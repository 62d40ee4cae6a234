"""Feasibility, first-best fees and viability regions for business ecosystems."""

from .bargaining import FeeSolution, SubsidyChain, solve_all_fees, subsidization_check, two_actor_fee
from .core import (
    FEASIBILITY_EPS,
    Ecosystem,
    Edge,
    EdgeSurplus,
    FeasibilityReport,
    Participant,
    TransactionTerms,
    ValidationReport,
    edge_surplus,
    internal_feasibility,
    project,
    sigma,
    validate_ecosystem,
)
from .extensions import (
    ComparisonParams,
    FederatorTerms,
    StructureClass,
    classify_structure,
    compare_gaiax_dataspace,
    federator_adjust,
)
from .hub import (
    HubParams,
    ParametricHubModel,
    WelfareAnalysis,
    analyze_parametric_hub,
    hub_feasibility_curve,
    linearized_recovery,
    provider_threshold,
    recoverable_value_bound,
    uniform_hub_fee,
    utility_max_fee,
    welfare_max_fee,
)
from .oracle import GridSpec, grid_equal_split, grid_max_consumer, grid_max_welfare
from .viability import (
    AverageProfile,
    Preference,
    consumer_engagement,
    general_feasibility,
    provider_engagement,
    viability_region,
)

__version__ = "0.1.0"

"""Numerical engine for two-firm telecom market games: monopoly, quantity and
price competition, network sharing with Shapley profit splits, and two-region
coverage scenarios.
"""

from .bertrand import (
    BertrandOutcome,
    BertrandRegime,
    InformedFraction,
    PriceRange,
    bertrand_basic,
    bertrand_informed,
    bertrand_shared_cost,
    segment_profit,
    zero_profit_prices,
)
from .config import (
    ANALYSES,
    PRESETS,
    ScenarioSpec,
    SweepAxis,
    expand_sweep,
    parse_scenario,
    serialize_scenario,
    sweep_grid,
)
from .cournot import (
    Duopoly,
    NashCournotSolution,
    PayoffCell,
    PayoffTable,
    Strategy,
    aggression_quantity,
    best_response,
    check_viability,
    nash_cournot,
    payoff_table,
)
from .errors import (
    BracketError,
    ConfigError,
    ConvergenceError,
    DegenerateEquilibriumError,
    DegenerateMonopolyError,
    DomainError,
    ExternalityBasisError,
    NetshareError,
    NoCapError,
    NoDriveOutError,
    NonMonotoneThresholdError,
    StructureError,
    WrongScenarioError,
)
from .market import (
    CostParams,
    MarketParams,
    Outcome,
    cost,
    demand,
    inverse_demand,
    monopoly_solution,
    profit,
)
from .multiregion import (
    ClassOutcome,
    RegionalOutcome,
    RegionScenario,
    regional_competition,
    regional_cooperation,
    regional_standalone,
)
from .sharing import (
    ShapleyBasis,
    SharingOutcome,
    coop_cost_params,
    sharing_monopoly,
    sharing_regulated,
)
from .solver import (
    DEFAULT_CONFIG,
    SolverConfig,
    expand_bracket,
    find_root,
    maximize_unimodal,
)

__all__ = [
    "ANALYSES",
    "BertrandOutcome",
    "BertrandRegime",
    "BracketError",
    "ClassOutcome",
    "ConfigError",
    "ConvergenceError",
    "CostParams",
    "DEFAULT_CONFIG",
    "DegenerateEquilibriumError",
    "DegenerateMonopolyError",
    "DomainError",
    "Duopoly",
    "ExternalityBasisError",
    "InformedFraction",
    "MarketParams",
    "NashCournotSolution",
    "NetshareError",
    "NoCapError",
    "NoDriveOutError",
    "NonMonotoneThresholdError",
    "Outcome",
    "PRESETS",
    "PayoffCell",
    "PayoffTable",
    "PriceRange",
    "RegionScenario",
    "RegionalOutcome",
    "ScenarioSpec",
    "ShapleyBasis",
    "SharingOutcome",
    "SolverConfig",
    "Strategy",
    "StructureError",
    "SweepAxis",
    "WrongScenarioError",
    "aggression_quantity",
    "bertrand_basic",
    "bertrand_informed",
    "bertrand_shared_cost",
    "best_response",
    "check_viability",
    "coop_cost_params",
    "cost",
    "demand",
    "expand_bracket",
    "expand_sweep",
    "find_root",
    "inverse_demand",
    "maximize_unimodal",
    "monopoly_solution",
    "nash_cournot",
    "parse_scenario",
    "payoff_table",
    "profit",
    "regional_competition",
    "regional_cooperation",
    "regional_standalone",
    "segment_profit",
    "serialize_scenario",
    "sharing_monopoly",
    "sharing_regulated",
    "sweep_grid",
    "zero_profit_prices",
]

__version__ = "0.1.0"

"""게임 풀이: 기대 페이오프, 브루트포스 값, 액션 분류, martingale 검사"""

from src.solve.evaluation import (
    chain_values,
    check_supported,
    expected_payoff,
    expected_values,
    node_values,
)
from src.solve.enumeration import (
    BestResponse,
    Certificate,
    ValueVector,
    best_response_min,
    brute_force_value,
    check_budget,
    require_both_positional,
    response_min,
    value_grid,
)
from src.solve.actions import (
    ActionClassification,
    ActionFlags,
    careless_tau,
    classify_actions,
    is_locally_optimal,
    non_preserving_choice,
    sample_locally_optimal,
)
from src.solve.martingale import (
    MartingaleKind,
    MartingaleReport,
    MonteCarloEstimate,
    NodeCheck,
    StoppingRule,
    hoeffding_half_width,
    martingale_check,
    reachable_nodes,
    stopped_value_mc,
)

__all__ = [
    "chain_values",
    "check_supported",
    "expected_payoff",
    "expected_values",
    "node_values",
    "BestResponse",
    "Certificate",
    "ValueVector",
    "best_response_min",
    "brute_force_value",
    "check_budget",
    "require_both_positional",
    "response_min",
    "value_grid",
    "ActionClassification",
    "ActionFlags",
    "careless_tau",
    "classify_actions",
    "is_locally_optimal",
    "non_preserving_choice",
    "sample_locally_optimal",
    "MartingaleKind",
    "MartingaleReport",
    "MonteCarloEstimate",
    "NodeCheck",
    "StoppingRule",
    "hoeffding_half_width",
    "martingale_check",
    "reachable_nodes",
    "stopped_value_mc",
]

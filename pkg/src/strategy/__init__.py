"""전략: 표현, 파일 형식, 투영, 트리거 전략

곱 아레나(`src.strategy.product`)와 리셋 전략(`src.strategy.reset`)은
`src.solve`에 의존하므로 전체 경로로 import 한다.
"""

from src.strategy.model import (
    FiniteMemoryStrategy,
    PureStationaryStrategy,
    Strategy,
    UpdateRule,
    all_memory_strategies,
    all_pure_stationary,
    count_memory_strategies,
    count_pure_stationary,
    memory_label,
    random_memory_strategy,
    stationary_strategy,
    trivial_strategy,
)
from src.strategy.io import load_strategy, parse_strategy, print_strategy, strategy_document
from src.strategy.projection import (
    PartitionAtState,
    factors,
    play_word,
    project,
    projection_pattern,
)
from src.strategy.trigger import action_law, memory_after, trigger_strategy

__all__ = [
    "FiniteMemoryStrategy",
    "PureStationaryStrategy",
    "Strategy",
    "UpdateRule",
    "all_pure_stationary",
    "count_pure_stationary",
    "stationary_strategy",
    "trivial_strategy",
    "all_memory_strategies",
    "count_memory_strategies",
    "memory_label",
    "random_memory_strategy",
    "load_strategy",
    "parse_strategy",
    "print_strategy",
    "strategy_document",
    "PartitionAtState",
    "factors",
    "play_word",
    "project",
    "projection_pattern",
    "action_law",
    "memory_after",
    "trigger_strategy",
]

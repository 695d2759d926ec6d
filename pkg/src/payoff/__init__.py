"""페이오프: 색상 토큰, 카탈로그, lasso 평가, 셔플, 성질 검사"""

from src.payoff.colours import (
    BuchiReward,
    Colour,
    ColourKind,
    DiscountedReward,
    Increment,
    Letter,
    Priority,
    Reward,
    RewardVector,
    colour_to_json,
    describe_colour,
    parse_colour,
)
from src.payoff.specs import (
    BOTH_POSITIONAL,
    CATALOG,
    CounterLiminfNegInf,
    CounterLimsupPosInf,
    Discounted,
    GeneralizedMean,
    GeometricFirstOne,
    Limsup,
    Liminf,
    Mean,
    MeanCoBuchi,
    OptimisticGeneralizedMean,
    Parity,
    PayoffSpec,
    PositiveAverage,
    SuffixTarget,
    format_payoff,
    parse_payoff,
)
from src.payoff.words import LassoWord, word
from src.payoff.evaluation import colour_word, evaluate_lasso, evaluate_prefix
from src.payoff.classes import class_value
from src.payoff.shuffle import ShufflePattern, shuffle
from src.payoff.properties import (
    ShiftWitness,
    SubmixingWitness,
    check_shift_invariance,
    check_submixing,
)

__all__ = [
    "BuchiReward",
    "Colour",
    "ColourKind",
    "DiscountedReward",
    "Increment",
    "Letter",
    "Priority",
    "Reward",
    "RewardVector",
    "colour_to_json",
    "describe_colour",
    "parse_colour",
    "BOTH_POSITIONAL",
    "CATALOG",
    "CounterLiminfNegInf",
    "CounterLimsupPosInf",
    "Discounted",
    "GeneralizedMean",
    "GeometricFirstOne",
    "Limsup",
    "Liminf",
    "Mean",
    "MeanCoBuchi",
    "OptimisticGeneralizedMean",
    "Parity",
    "PayoffSpec",
    "PositiveAverage",
    "SuffixTarget",
    "format_payoff",
    "parse_payoff",
    "LassoWord",
    "word",
    "colour_word",
    "evaluate_lasso",
    "evaluate_prefix",
    "class_value",
    "ShufflePattern",
    "shuffle",
    "ShiftWitness",
    "SubmixingWitness",
    "check_shift_invariance",
    "check_submixing",
]

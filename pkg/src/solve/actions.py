"""값 보존/안정 액션 분류와 국소 최적 전략"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Optional, Union

import numpy as np

from src.arena.model import Arena, Player
from src.core.rational import format_rational
from src.solve.enumeration import ValueVector
from src.strategy.model import PureStationaryStrategy, Strategy


@dataclass(frozen=True)
class ActionFlags:
    """(상태, 액션) 하나의 분류

    Attributes:
        expectation: Σ_t p(s,a)(t) · val(t)
        successor_values: 양의 확률 후속 상태들의 값
        value_preserving: expectation == val(s)
        stable: 모든 후속 상태 값 == val(s)
    """
    state: str
    action: str
    expectation: Fraction
    successor_values: frozenset
    value_preserving: bool
    stable: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "state": self.state,
            "action": self.action,
            "expectation": format_rational(self.expectation),
            "successor_values": sorted(format_rational(v) for v in self.successor_values),
            "value_preserving": self.value_preserving,
            "stable": self.stable,
        }


@dataclass
class ActionClassification:
    """주어진 값 벡터에 대한 액션 분류"""
    values: dict[str, Fraction]
    flags: dict[tuple[str, str], ActionFlags]
    all_preserving: dict[str, bool]

    def preserving_actions(self, state: str) -> tuple[str, ...]:
        return tuple(a for (s, a), f in self.flags.items() if s == state and f.value_preserving)

    def is_preserving(self, state: str, action: str) -> bool:
        return self.flags[(state, action)].value_preserving

    def to_dict(self) -> dict[str, Any]:
        return {
            "values": {s: format_rational(v) for s, v in self.values.items()},
            "actions": [f.to_dict() for f in self.flags.values()],
            "all_preserving": dict(self.all_preserving),
        }


def _as_values(values: Union[ValueVector, Mapping[str, Fraction]]) -> dict[str, Fraction]:
    if isinstance(values, ValueVector):
        return dict(values.values)
    return dict(values)


def classify_actions(
    arena: Arena,
    values: Union[ValueVector, Mapping[str, Fraction]],
) -> ActionClassification:
    """모든 (상태, 액션)의 값 보존/안정 여부

    Raises:
        KeyError: 값이 없는 상태
    """
    val = _as_values(values)
    missing = [s for s in arena.states if s not in val]
    if missing:
        raise KeyError(f"값이 없는 상태: {missing}")

    flags: dict[tuple[str, str], ActionFlags] = {}
    for s, a in arena.pairs():
        successors = arena.successors(s, a)
        expectation = sum((p * val[t] for t, p in successors.items()), Fraction(0))
        successor_values = frozenset(val[t] for t in successors)
        preserving = expectation == val[s]
        stable = successor_values == {val[s]}
        assert preserving or not stable
        flags[(s, a)] = ActionFlags(s, a, expectation, successor_values, preserving, stable)

    all_preserving = {
        s: all(flags[(s, a)].value_preserving for a in arena.available[s]) for s in arena.states
    }
    return ActionClassification(val, flags, all_preserving)


def non_preserving_choice(
    arena: Arena,
    classification: ActionClassification,
    strategy: Strategy,
) -> Optional[tuple[str, str, str]]:
    """전략이 값 보존이 아닌 액션을 양의 확률로 고르는 첫 (메모리, 상태, 액션)"""
    for m in strategy.memory_states:
        for s in arena.states_of(strategy.player):
            for a in strategy.choice(m, s):
                if not classification.is_preserving(s, a):
                    return m, s, a
    return None


def is_locally_optimal(arena: Arena, classification: ActionClassification, strategy: Strategy) -> bool:
    return non_preserving_choice(arena, classification, strategy) is None


def sample_locally_optimal(
    arena: Arena,
    classification: ActionClassification,
    player: Player,
    rng: np.random.Generator,
) -> PureStationaryStrategy:
    """각 상태에서 값 보존 액션 하나를 무작위로 고른 순수 정상 전략

    값 보존 액션이 없는 상태는 (값 벡터가 정확하면 생기지 않음) 첫 액션을 쓴다.
    """
    choices = {}
    for s in arena.states_of(player):
        preserving = classification.preserving_actions(s) or arena.available[s][:1]
        choices[s] = preserving[int(rng.integers(len(preserving)))]
    return PureStationaryStrategy(player, choices)


def careless_tau(arena: Arena, classification: ActionClassification) -> PureStationaryStrategy:
    """각 P2 상태에서 Σ p·val 이 가장 큰 액션 (동률이면 선언 순서)

    P2가 값을 지키지 않는 액션을 고르므로 val(S_n)은 엄격한 submartingale 구간을 갖는다.
    """
    choices = {}
    for s in arena.states_of(Player.P2):
        choices[s] = max(arena.available[s], key=lambda a: classification.flags[(s, a)].expectation)
    return PureStationaryStrategy(Player.P2, choices)

"""약점 집합과 리셋 전략

σ[h]가 2ε-최적이 아닐 때 h를 약점이라 한다. 유한 메모리와 시프트 불변성
아래에서 σ[h]는 (메모리, 상태)로 결정되므로 약점도 (메모리, 상태) 집합이다.
리셋 전략은 갱신된 (메모리, 다음 상태)가 약점이면 메모리를 초기값으로 되돌린다.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from src.arena.model import Arena
from src.core.exceptions import PreconditionError
from src.core.logger import get_logger
from src.core.rational import format_rational
from src.payoff.specs import PayoffSpec
from src.solve.enumeration import ValueVector, brute_force_value
from src.strategy.model import FiniteMemoryStrategy, PureStationaryStrategy, UpdateRule
from src.strategy.product import ProductValues, product_values

logger = get_logger(__name__)

AnyStrategy = Union[PureStationaryStrategy, FiniteMemoryStrategy]


@dataclass(frozen=True)
class WeaknessSet:
    """σ의 약점 (메모리, 상태) 쌍

    Attributes:
        arena: 약점을 계산한 아레나
        epsilon: 허용 오차 (약점 기준은 val − 2ε)
        pairs: 약점 쌍
        guaranteed: 약점 쌍별 보장값
        values: 상태별 게임 값
    """
    arena: Arena = field(compare=False)
    epsilon: Fraction
    pairs: frozenset
    guaranteed: dict = field(default_factory=dict, compare=False)
    values: dict = field(default_factory=dict, compare=False)

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def to_dict(self) -> dict[str, Any]:
        return {
            "epsilon": format_rational(self.epsilon),
            "weak": [
                {
                    "memory": m,
                    "state": s,
                    "guaranteed": format_rational(self.guaranteed[(m, s)]),
                    "threshold": format_rational(self.values[s] - 2 * self.epsilon),
                }
                for m, s in sorted(self.pairs)
            ],
        }


def weak_pairs(
    guaranteed: ProductValues,
    values: dict[str, Fraction],
    epsilon: Fraction,
) -> dict[tuple[str, str], Fraction]:
    """보장값 < val − 2ε 인 쌍과 그 보장값"""
    return {
        (m, s): v
        for (m, s), v in guaranteed.values.items()
        if v < values[s] - 2 * epsilon
    }


def weakness_set(
    arena: Arena,
    spec: PayoffSpec,
    sigma: AnyStrategy,
    epsilon: Fraction,
    values: Optional[ValueVector] = None,
    budget: Optional[int] = None,
) -> WeaknessSet:
    """σ의 약점 집합

    Args:
        values: 게임 값 (None이면 brute_force_value로 계산)

    Raises:
        PreconditionError: ε < 0
    """
    epsilon = Fraction(epsilon)
    if epsilon < 0:
        raise PreconditionError(f"ε는 0 이상이어야 합니다: {format_rational(epsilon)}")
    if values is None:
        values = brute_force_value(arena, spec, budget)

    guaranteed = product_values(arena, spec, sigma, budget)
    weak = weak_pairs(guaranteed, values.values, epsilon)
    logger.debug(f"{arena.name}: ε={format_rational(epsilon)}에서 약점 {len(weak)}개")
    return WeaknessSet(arena, epsilon, frozenset(weak), weak, dict(values.values))


def reset_strategy(sigma: AnyStrategy, weak: WeaknessSet) -> FiniteMemoryStrategy:
    """약점에 들어가면 메모리를 초기값으로 되돌리는 전략

    리셋은 스텝마다 한 번만 적용한다. (m₀, t)가 다시 약점이어도 그대로 m₀에 머문다.
    갱신은 확률 0인 다음 상태까지 모든 상태에 대해 정한다.
    """
    base = sigma.as_finite_memory() if isinstance(sigma, PureStationaryStrategy) else sigma
    arena = weak.arena
    m0 = base.initial

    rules = []
    for m in base.memory_states:
        for s, a in arena.pairs():
            for t in arena.states:
                nxt = base.update(m, s, a, t)
                if (nxt, t) in weak:
                    nxt = m0
                if nxt != m:
                    rules.append(UpdateRule(m, s, a, t, nxt))

    return FiniteMemoryStrategy(
        player=base.player,
        memory_states=base.memory_states,
        initial=m0,
        rules=tuple(rules),
        choices=dict(base.choices),
        name=f"{base.name}-reset",
    )

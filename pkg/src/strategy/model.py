"""전략 표현

순수 정상 전략과 유한 메모리 전략 (Mealy 스타일 메모리 오토마톤).
두 표현 모두 같은 인터페이스를 따른다:

    memory_states, initial, update(m, s, a, t), choice(m, s)

메모리는 플레이의 매 스텝마다 (누가 움직였든) 갱신된다.
"""

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Protocol

import numpy as np

from src.arena.model import Arena, Player
from src.core.exceptions import MemoryAutomatonError, StrategyError
from src.core.rational import format_rational

WILDCARD = "*"
STATIONARY_MEMORY = "m0"


class Strategy(Protocol):
    """유한 메모리 전략 프로토콜"""
    player: Player

    @property
    def memory_states(self) -> tuple[str, ...]: ...

    @property
    def initial(self) -> str: ...

    def update(self, memory: str, state: str, action: str, target: str) -> str: ...

    def choice(self, memory: str, state: str) -> dict[str, Fraction]: ...


@dataclass(frozen=True)
class PureStationaryStrategy:
    """현재 상태만 보고 액션 하나를 고르는 전략"""
    player: Player
    choices: Mapping[str, str]

    @property
    def memory_states(self) -> tuple[str, ...]:
        return (STATIONARY_MEMORY,)

    @property
    def initial(self) -> str:
        return STATIONARY_MEMORY

    def update(self, memory: str, state: str, action: str, target: str) -> str:
        return STATIONARY_MEMORY

    def choice(self, memory: str, state: str) -> dict[str, Fraction]:
        if state not in self.choices:
            raise MemoryAutomatonError(f"순수 정상 전략이 상태 {state}에서 정의되지 않았습니다")
        return {self.choices[state]: Fraction(1)}

    def action(self, state: str) -> str:
        return self.choices[state]

    def validate(self, arena: Arena) -> None:
        """소유 상태 전체에서 정의되고 가용 액션만 고르는지 검사"""
        for s in arena.states_of(self.player):
            if s not in self.choices:
                raise StrategyError(f"{self.player.value} 전략이 상태 {s}에서 정의되지 않았습니다")
            if self.choices[s] not in arena.available[s]:
                raise StrategyError(f"액션 {self.choices[s]}는 상태 {s}에서 사용할 수 없습니다")

    def as_finite_memory(self) -> "FiniteMemoryStrategy":
        return FiniteMemoryStrategy(
            player=self.player,
            memory_states=(STATIONARY_MEMORY,),
            initial=STATIONARY_MEMORY,
            rules=(),
            choices={(STATIONARY_MEMORY, s): {a: Fraction(1)} for s, a in self.choices.items()},
        )

    def __str__(self) -> str:
        return "{" + ", ".join(f"{s}→{a}" for s, a in self.choices.items()) + "}"


@dataclass(frozen=True)
class UpdateRule:
    """메모리 갱신 규칙 (필드마다 "*" 와일드카드 허용, 먼저 맞는 규칙 적용)"""
    memory: str
    state: str
    action: str
    target: str
    next_memory: str

    def matches(self, memory: str, state: str, action: str, target: str) -> bool:
        return all(
            pattern == WILDCARD or pattern == value
            for pattern, value in (
                (self.memory, memory),
                (self.state, state),
                (self.action, action),
                (self.target, target),
            )
        )


@dataclass(frozen=True)
class FiniteMemoryStrategy:
    """유한 메모리 전략

    Attributes:
        player: 전략의 주인
        memory_states: 메모리 상태 집합 (선언 순서)
        initial: 초기 메모리
        rules: 갱신 규칙 목록. 맞는 규칙이 없으면 메모리 유지
        choices: (메모리, 소유 상태) → 액션 분포
    """
    player: Player
    memory_states: tuple[str, ...]
    initial: str
    rules: tuple[UpdateRule, ...] = ()
    choices: Mapping[tuple[str, str], Mapping[str, Fraction]] = field(default_factory=dict)
    name: str = field(default="sigma", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "memory_states", tuple(self.memory_states))
        object.__setattr__(self, "rules", tuple(self.rules))
        if not self.memory_states:
            raise MemoryAutomatonError("메모리 상태가 하나 이상 필요합니다")
        if self.initial not in self.memory_states:
            raise MemoryAutomatonError(f"초기 메모리 {self.initial}가 메모리 집합에 없습니다")
        for rule in self.rules:
            if rule.next_memory not in self.memory_states:
                raise MemoryAutomatonError(f"갱신 규칙의 다음 메모리 {rule.next_memory}가 메모리 집합에 없습니다")
            if rule.memory != WILDCARD and rule.memory not in self.memory_states:
                raise MemoryAutomatonError(f"갱신 규칙의 메모리 {rule.memory}가 메모리 집합에 없습니다")

    def update(self, memory: str, state: str, action: str, target: str) -> str:
        for rule in self.rules:
            if rule.matches(memory, state, action, target):
                return rule.next_memory
        return memory

    def choice(self, memory: str, state: str) -> dict[str, Fraction]:
        try:
            dist = self.choices[(memory, state)]
        except KeyError:
            raise MemoryAutomatonError(
                f"{self.name}: (메모리 {memory}, 상태 {state})의 선택이 정의되지 않았습니다"
            )
        return {a: w for a, w in dist.items() if w > 0}

    def validate(self, arena: Arena) -> None:
        """choice가 모든 (메모리, 소유 상태)에서 정의된 분포인지 검사

        Raises:
            MemoryAutomatonError: 정의되지 않은 항목, 합이 1이 아닌 분포, 가용하지 않은 액션
        """
        for m in self.memory_states:
            for s in arena.states_of(self.player):
                dist = self.choices.get((m, s))
                if dist is None:
                    raise MemoryAutomatonError(
                        f"{self.name}: (메모리 {m}, 상태 {s})의 선택이 정의되지 않았습니다"
                    )
                total = sum(dist.values(), Fraction(0))
                if total != 1:
                    raise MemoryAutomatonError(
                        f"{self.name}: (메모리 {m}, 상태 {s}) 선택 분포의 합이 {format_rational(total)}입니다"
                    )
                for a, w in dist.items():
                    if w < 0:
                        raise MemoryAutomatonError(f"{self.name}: 음수 가중치 ({m}, {s}, {a})")
                    if w > 0 and a not in arena.available[s]:
                        raise MemoryAutomatonError(
                            f"{self.name}: 액션 {a}는 상태 {s}에서 사용할 수 없습니다"
                        )

    def is_pure(self) -> bool:
        return all(
            sum(1 for w in dist.values() if w > 0) == 1 for dist in self.choices.values()
        )

    def __str__(self) -> str:
        return f"<FiniteMemoryStrategy({self.name}, {self.player.value}, |M|={len(self.memory_states)})>"


def stationary_strategy(
    player: Player,
    distributions: Mapping[str, Mapping[str, Fraction]],
    name: str = "stationary",
) -> FiniteMemoryStrategy:
    """(무작위화 가능한) 정상 전략"""
    return FiniteMemoryStrategy(
        player=player,
        memory_states=(STATIONARY_MEMORY,),
        initial=STATIONARY_MEMORY,
        choices={
            (STATIONARY_MEMORY, s): {a: Fraction(w) for a, w in dist.items()}
            for s, dist in distributions.items()
        },
        name=name,
    )


def trivial_strategy(arena: Arena, player: Player) -> Optional[PureStationaryStrategy]:
    """선택지가 없는 플레이어의 유일한 전략 (선택지가 있으면 None)"""
    owned = arena.states_of(player)
    if any(len(arena.available[s]) > 1 for s in owned):
        return None
    return PureStationaryStrategy(player, {s: arena.available[s][0] for s in owned})


def count_pure_stationary(arena: Arena, player: Player) -> int:
    return math.prod(len(arena.available[s]) for s in arena.states_of(player))


def all_pure_stationary(arena: Arena, player: Player) -> Iterator[PureStationaryStrategy]:
    """순수 정상 전략 전체 (아레나 선언 순서의 사전식)"""
    owned = arena.states_of(player)
    for combo in itertools.product(*(arena.available[s] for s in owned)):
        yield PureStationaryStrategy(player, dict(zip(owned, combo)))


def memory_label(j: int) -> str:
    return f"k{j}"


def _own_move_strategy(
    player: Player,
    k: int,
    table: Mapping[tuple[int, str], tuple[str, int]],
    name: str,
) -> FiniteMemoryStrategy:
    rules = []
    choices = {}
    for (j, s), (a, nxt) in table.items():
        choices[(memory_label(j), s)] = {a: Fraction(1)}
        if nxt != j:
            rules.append(UpdateRule(memory_label(j), s, a, WILDCARD, memory_label(nxt)))
    return FiniteMemoryStrategy(
        player=player,
        memory_states=tuple(memory_label(j) for j in range(k)),
        initial=memory_label(0),
        rules=tuple(rules),
        choices=choices,
        name=name,
    )


def count_memory_strategies(arena: Arena, player: Player, k: int) -> int:
    """자기 차례에만 메모리를 바꾸는 k-메모리 결정적 전략의 수"""
    return math.prod((len(arena.available[s]) * k) ** k for s in arena.states_of(player))


def all_memory_strategies(arena: Arena, player: Player, k: int) -> Iterator[FiniteMemoryStrategy]:
    """자기 차례에만 메모리를 바꾸는 k-메모리 결정적 전략 전체

    (메모리 j, 소유 상태 s)마다 (액션, 다음 메모리)를 고른다. 다른 플레이어의
    스텝에서는 메모리가 유지된다. k = 1이면 순수 정상 전략과 같다.
    """
    cells = [(j, s) for j in range(k) for s in arena.states_of(player)]
    options = [[(a, nxt) for a in arena.available[s] for nxt in range(k)] for _, s in cells]
    for n, combo in enumerate(itertools.product(*options)):
        yield _own_move_strategy(player, k, dict(zip(cells, combo)), name=f"{player.value}-k{k}-{n}")


def random_memory_strategy(
    arena: Arena,
    player: Player,
    k: int,
    rng: np.random.Generator,
    name: str = "sampled",
) -> FiniteMemoryStrategy:
    """all_memory_strategies 집합에서 균등하게 하나"""
    table = {}
    for j in range(k):
        for s in arena.states_of(player):
            acts = arena.available[s]
            table[(j, s)] = (acts[int(rng.integers(len(acts)))], int(rng.integers(k)))
    return _own_move_strategy(player, k, table, name)

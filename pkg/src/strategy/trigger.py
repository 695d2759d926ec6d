"""트리거 전략

P2가 부분 아레나 G₀, G₁의 전략 τ₀, τ₁을 섞는다. 피벗에서 마지막으로 고른
액션이 A_j에 속하면 τ_j로 움직이고, τ_j에는 투영된 히스토리 π_j(h)를 먹인다.
유한 메모리에서는 활성 쪽 오토마톤만 전진시키는 것으로 구현된다.

메모리 이름은 "플래그|τ₀ 메모리|τ₁ 메모리" 형식이다. 피벗을 처음 방문하기
전의 스텝은 τ₀가 읽는다.
"""

from fractions import Fraction
from typing import Union

from src.arena.model import Arena, FinitePlay, Player
from src.core.exceptions import StrategyError
from src.core.logger import get_logger
from src.strategy.model import FiniteMemoryStrategy, PureStationaryStrategy, Strategy, UpdateRule
from src.strategy.projection import PartitionAtState

logger = get_logger(__name__)

AnyStrategy = Union[PureStationaryStrategy, FiniteMemoryStrategy]


def memory_after(strategy: Strategy, play: FinitePlay) -> str:
    """play를 따라 갱신한 뒤의 메모리"""
    memory = strategy.initial
    for (s, a), t in zip(play.steps(), play.states[1:]):
        memory = strategy.update(memory, s, a, t)
    return memory


def action_law(strategy: Strategy, play: FinitePlay) -> dict[str, Fraction]:
    """play 끝 상태에서 전략의 액션 분포 (메모리를 처음부터 재생)"""
    return strategy.choice(memory_after(strategy, play), play.target)


def _memory_name(flag: int, m0: str, m1: str) -> str:
    return f"{flag}|{m0}|{m1}"


def _check_sub_strategy(arena: Arena, tau: AnyStrategy, split: PartitionAtState, side: int) -> None:
    removed = split.side1 if side == 0 else split.side0
    for m in tau.memory_states:
        for s in arena.states_of(Player.P2):
            for a in tau.choice(m, s):
                if s == split.state and a in removed:
                    raise StrategyError(f"τ{side}가 G{side}에서 제거된 액션 {a}를 {s}에서 고릅니다")
                if a not in arena.available[s]:
                    raise StrategyError(f"τ{side}가 {s}에서 사용 불가능한 액션 {a}를 고릅니다")


def trigger_strategy(
    arena: Arena,
    tau0: AnyStrategy,
    tau1: AnyStrategy,
    split: PartitionAtState,
) -> FiniteMemoryStrategy:
    """τ₀, τ₁을 피벗의 마지막 액션에 따라 전환하는 P2 전략

    Args:
        arena: 원래 아레나 G
        tau0: G₀의 P2 전략
        tau1: G₁의 P2 전략
        split: 피벗의 액션 분할

    Raises:
        StrategyError: P2 전략이 아니거나 제거된 액션을 고름
    """
    split.validate(arena)
    if tau0.player is not Player.P2 or tau1.player is not Player.P2:
        raise StrategyError("트리거 전략은 P2 전략 두 개로 만듭니다")
    _check_sub_strategy(arena, tau0, split, 0)
    _check_sub_strategy(arena, tau1, split, 1)

    sides = (tau0, tau1)
    memories = [
        (flag, m0, m1)
        for flag in (0, 1)
        for m0 in tau0.memory_states
        for m1 in tau1.memory_states
    ]

    rules = []
    choices = {}
    for flag, m0, m1 in memories:
        current = _memory_name(flag, m0, m1)
        for s, a in arena.pairs():
            active = split.side_of(a) if s == split.state else flag
            for t in arena.states:
                inner = [m0, m1]
                inner[active] = sides[active].update(inner[active], s, a, t)
                nxt = _memory_name(active, *inner)
                if nxt != current:
                    rules.append(UpdateRule(current, s, a, t, nxt))
        inner = (m0, m1)
        for s in arena.states_of(Player.P2):
            choices[(current, s)] = sides[flag].choice(inner[flag], s)

    strategy = FiniteMemoryStrategy(
        player=Player.P2,
        memory_states=tuple(_memory_name(*m) for m in memories),
        initial=_memory_name(0, tau0.initial, tau1.initial),
        rules=tuple(rules),
        choices=choices,
        name="trigger",
    )
    logger.debug(f"트리거 전략 생성: 피벗 {split.state}, 메모리 {len(memories)}개")
    return strategy

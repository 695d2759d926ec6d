"""플레이 샘플링

전략 쌍이 유도하는 확률 측도에서 유한 플레이를 뽑는다. 정확한 유리수
분포에서 뽑기 위해 공통 분모 위의 정수 난수를 쓴다.
"""

from fractions import Fraction
from typing import TYPE_CHECKING, Mapping, TypeVar

import numpy as np

from src.arena.model import Arena, FinitePlay, Player
from src.core.exceptions import ArenaValidationError
from src.core.rational import common_denominator

if TYPE_CHECKING:
    from src.strategy.model import Strategy

T = TypeVar("T")


def draw(dist: Mapping[T, Fraction], rng: np.random.Generator) -> T:
    """유리수 분포에서 하나를 정확히 뽑기

    support가 하나면 난수를 소비하지 않는다.
    """
    support = [(x, p) for x, p in dist.items() if p > 0]
    if len(support) == 1:
        return support[0][0]
    denominator = common_denominator(p for _, p in support)
    ticket = int(rng.integers(denominator))
    for x, p in support:
        share = p.numerator * (denominator // p.denominator)
        if ticket < share:
            return x
        ticket -= share
    return support[-1][0]


def sample_play(
    arena: Arena,
    sigma: "Strategy",
    tau: "Strategy",
    source: str,
    horizon: int,
    rng: np.random.Generator,
) -> FinitePlay:
    """정확히 horizon 스텝의 플레이 샘플

    Args:
        arena: 아레나
        sigma: P1 전략
        tau: P2 전략
        source: 시작 상태
        horizon: 스텝 수
        rng: 명시적 난수 스트림

    Returns:
        FinitePlay
    """
    if source not in arena.controller:
        raise ArenaValidationError(f"시작 상태 {source}가 아레나에 없습니다")

    memory = {Player.P1: sigma.initial, Player.P2: tau.initial}
    strategies = {Player.P1: sigma, Player.P2: tau}

    states = [source]
    actions = []
    state = source
    for _ in range(horizon):
        owner = arena.owner(state)
        action = draw(strategies[owner].choice(memory[owner], state), rng)
        target = draw(arena.successors(state, action), rng)
        memory = {
            player: strategies[player].update(memory[player], state, action, target)
            for player in (Player.P1, Player.P2)
        }
        actions.append(action)
        states.append(target)
        state = target

    return FinitePlay(tuple(states), tuple(actions))

"""랜덤 아레나 생성기

구조(컨트롤러·액션·전이)와 색상은 서로 다른 난수 스트림에서 뽑는다.
같은 seed면 색상 종류와 무관하게 같은 그래프가 나온다.
"""

from fractions import Fraction
from typing import Union

import numpy as np

from src.arena.model import Arena, Player
from src.core.logger import get_logger
from src.core.rational import parse_rational
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
)

logger = get_logger(__name__)

SEED_MASK = (1 << 64) - 1
MAX_WEIGHT = 3
LETTERS = ("a", "b")


def _stream(seed: int, purpose: int) -> np.random.Generator:
    return np.random.default_rng([seed & SEED_MASK, purpose])


def _draw_colour(
    rng: np.random.Generator,
    kind: ColourKind,
    low: int,
    high: int,
    dimension: int,
    discount: Fraction,
) -> Colour:
    if kind is ColourKind.REWARD:
        return Reward(int(rng.integers(low, high + 1)))
    if kind is ColourKind.DISCOUNTED:
        return DiscountedReward(int(rng.integers(low, high + 1)), discount)
    if kind is ColourKind.PRIORITY:
        return Priority(int(rng.integers(0, high - low + 1)))
    if kind is ColourKind.VECTOR:
        return RewardVector(tuple(int(v) for v in rng.integers(low, high + 1, size=dimension)))
    if kind is ColourKind.LETTER:
        return Letter(LETTERS[int(rng.integers(len(LETTERS)))])
    if kind is ColourKind.COUNTER:
        return Increment(int(rng.integers(low, high + 1)))
    if kind is ColourKind.BUCHI:
        return BuchiReward(int(rng.integers(low, high + 1)), bool(rng.integers(4) == 0))
    raise ValueError(f"알 수 없는 색상 종류: {kind}")


def random_arena(
    num_states: int,
    max_actions: int,
    colour_range: tuple[int, int] = (-2, 2),
    density: Union[str, Fraction] = "1/2",
    seed: int = 0,
    *,
    kind: ColourKind = ColourKind.REWARD,
    dimension: int = 2,
    discount: Union[str, Fraction] = "1/2",
) -> Arena:
    """시드 고정 랜덤 아레나

    범위를 벗어난 인자는 가장 가까운 유효값으로 보정하고 경고 로그를 남긴다.

    Args:
        num_states: 상태 수 (>= 1)
        max_actions: 상태당 최대 액션 수 (>= 1)
        colour_range: 정수 보상 범위 (양끝 포함). priority는 0..(high-low)
        density: 각 상태가 후속 분포의 support에 들어갈 확률
        seed: 64비트 시드
        kind: 색상 종류
        dimension: 벡터 색상 차원
        discount: 할인 색상의 할인율

    Returns:
        검증된 Arena
    """
    if num_states < 1:
        logger.warning(f"num_states={num_states} → 1로 보정")
        num_states = 1
    if max_actions < 1:
        logger.warning(f"max_actions={max_actions} → 1로 보정")
        max_actions = 1
    low, high = colour_range
    if low > high:
        logger.warning(f"colour_range=({low}, {high}) → ({high}, {low})로 보정")
        low, high = high, low
    density = parse_rational(density)
    if not 0 <= density <= 1:
        clamped = min(max(density, Fraction(0)), Fraction(1))
        logger.warning(f"density={density} → {clamped}로 보정")
        density = clamped
    if dimension < 1:
        logger.warning(f"dimension={dimension} → 1로 보정")
        dimension = 1
    discount = parse_rational(discount)
    if not 0 <= discount < 1:
        logger.warning(f"discount={discount} → 1/2로 보정")
        discount = Fraction(1, 2)

    structure = _stream(seed, 0)
    colours = _stream(seed, 1)

    states = tuple(f"s{i}" for i in range(num_states))
    controller = {s: Player.P1 if structure.integers(2) == 0 else Player.P2 for s in states}

    available: dict[str, tuple[str, ...]] = {}
    transition: dict[tuple[str, str], dict[str, Fraction]] = {}
    colouring: dict[tuple[str, str], Colour] = {}

    for s in states:
        count = int(structure.integers(1, max_actions + 1))
        available[s] = tuple(f"a{j}" for j in range(count))
        for a in available[s]:
            # support: 각 상태를 density 확률로 포함, 비면 하나를 강제로
            support = [
                t for t in states
                if structure.integers(density.denominator) < density.numerator
            ]
            if not support:
                support = [states[int(structure.integers(num_states))]]
            weights = [int(w) for w in structure.integers(1, MAX_WEIGHT + 1, size=len(support))]
            total = sum(weights)
            transition[(s, a)] = {t: Fraction(w, total) for t, w in zip(support, weights)}
            colouring[(s, a)] = _draw_colour(colours, kind, low, high, dimension, discount)

    actions = tuple(f"a{j}" for j in range(max(len(acts) for acts in available.values())))

    return Arena(
        states=states,
        controller=controller,
        actions=actions,
        available=available,
        transition=transition,
        colouring=colouring,
        name=f"random-{seed}-{num_states}x{max_actions}",
    )

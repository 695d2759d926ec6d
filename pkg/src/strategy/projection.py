"""피벗 상태의 액션 분할에 따른 플레이 투영

피벗 s에서 시작하는 플레이를 s 방문마다 자른 조각 h_l로 나누면, 조각의
첫 액션이 A_j에 속하는 것들만 이어붙인 것이 π_j(h)이다. 마지막 조각이
열려 있으면 (아직 s로 돌아오지 않았으면) 그 조각도 포함한다.
"""

from dataclasses import dataclass
from typing import Union

from src.arena.model import Arena, FinitePlay, LassoPlay
from src.core.exceptions import StrategyError
from src.payoff.shuffle import ShufflePattern
from src.payoff.words import LassoWord

Play = Union[FinitePlay, LassoPlay]


@dataclass(frozen=True)
class PartitionAtState:
    """피벗 상태의 액션 분할 (A₀(s), A₁(s))"""
    state: str
    side0: tuple[str, ...]
    side1: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "side0", tuple(self.side0))
        object.__setattr__(self, "side1", tuple(self.side1))
        if not self.side0 or not self.side1:
            raise StrategyError(f"{self.state}의 분할 양쪽이 비어 있지 않아야 합니다")
        if set(self.side0) & set(self.side1):
            raise StrategyError(f"{self.state}의 분할이 서로소가 아닙니다: {sorted(set(self.side0) & set(self.side1))}")

    def validate(self, arena: Arena) -> None:
        """분할이 피벗의 가용 액션을 정확히 덮는지 검사"""
        if self.state not in arena.controller:
            raise StrategyError(f"피벗 상태 {self.state}가 아레나에 없습니다")
        if set(self.side0) | set(self.side1) != set(arena.available[self.state]):
            raise StrategyError(
                f"{self.state}의 분할 {self.side0} / {self.side1}이 가용 액션 "
                f"{arena.available[self.state]}를 정확히 덮지 않습니다"
            )

    def side_of(self, action: str) -> int:
        if action in self.side0:
            return 0
        if action in self.side1:
            return 1
        raise StrategyError(f"액션 {action}은 {self.state}의 분할에 없습니다")

    def sub_arena(self, arena: Arena, side: int) -> Arena:
        """피벗에서 A_side만 남긴 부분 아레나 G_side"""
        allowed = self.side0 if side == 0 else self.side1
        return arena.restrict(self.state, allowed, name=f"{arena.name}|G{side}")


def factors(play: FinitePlay, pivot: str) -> list[FinitePlay]:
    """피벗 방문마다 자른 조각들 (마지막 조각은 열려 있을 수 있음)"""
    if play.source != pivot:
        raise StrategyError(f"투영은 피벗 {pivot}에서 시작하는 플레이에만 정의됩니다 (시작: {play.source})")
    cuts = [i for i, s in enumerate(play.states[:-1]) if s == pivot]
    cuts.append(len(play.states) - 1)
    return [
        FinitePlay(play.states[start : end + 1], play.actions[start:end])
        for start, end in zip(cuts, cuts[1:])
    ]


def _project_finite(play: FinitePlay, split: PartitionAtState, side: int) -> FinitePlay:
    result = FinitePlay((split.state,))
    for factor in factors(play, split.state):
        if split.side_of(factor.actions[0]) == side:
            result = result.concat(factor)
    return result


def _normal_form(lasso: LassoPlay, pivot: str) -> tuple[FinitePlay, FinitePlay]:
    """cycle이 피벗을 지나면 cycle이 피벗에서 시작하도록 회전한 (prefix, cycle)"""
    cycle = lasso.cycle
    if pivot not in cycle.states:
        return lasso.prefix, cycle
    k = cycle.states.index(pivot)
    prefix = lasso.prefix.concat(cycle.prefix(k))
    rotated = FinitePlay(
        cycle.states[k:] + cycle.states[1 : k + 1],
        cycle.actions[k:] + cycle.actions[:k],
    )
    return prefix, rotated


def project(play: Play, split: PartitionAtState, side: int) -> Play:
    """π_side(play)

    Args:
        play: 피벗에서 시작하는 유한 플레이 또는 lasso
        split: 피벗의 액션 분할
        side: 0 또는 1

    Returns:
        유한 플레이, 또는 (투영이 무한이면) lasso

    Raises:
        StrategyError: 피벗에서 시작하지 않는 플레이
    """
    if side not in (0, 1):
        raise ValueError(f"side는 0 또는 1이어야 합니다: {side}")
    if isinstance(play, FinitePlay):
        return _project_finite(play, split, side)

    pivot = split.state
    if play.source != pivot:
        raise StrategyError(f"투영은 피벗 {pivot}에서 시작하는 플레이에만 정의됩니다 (시작: {play.source})")
    prefix, cycle = _normal_form(play, pivot)

    if cycle.source == pivot:
        head = _project_finite(prefix, split, side)
        loop = _project_finite(cycle, split, side)
        if not loop.actions:
            return head
        return LassoPlay(head, loop)

    # cycle이 피벗을 지나지 않음: 마지막 피벗 방문 이후의 조각이 무한히 이어진다
    last = max(i for i, s in enumerate(prefix.states) if s == pivot)
    closed = _project_finite(prefix.prefix(last), split, side)
    if split.side_of(prefix.actions[last]) != side:
        return closed
    tail = FinitePlay(prefix.states[last:], prefix.actions[last:])
    return LassoPlay(closed.concat(tail), cycle)


def play_word(play: LassoPlay) -> LassoWord:
    """(상태, 액션) 스텝의 lasso 단어"""
    return LassoWord(play.prefix.steps(), play.cycle.steps())


def projection_pattern(play: LassoPlay, split: PartitionAtState) -> ShufflePattern:
    """play를 π₀(play)와 π₁(play)의 셔플로 재구성하는 블록 패턴

    조각 하나가 블록 하나가 된다 (A₀ 조각은 (길이, 0), A₁ 조각은 (0, 길이)).
    두 투영이 모두 무한일 때만 정의된다.

    Raises:
        StrategyError: 한쪽 투영이 유한
    """
    pivot = split.state
    prefix, cycle = _normal_form(play, pivot)
    if cycle.source != pivot:
        raise StrategyError("cycle이 피벗을 지나지 않아 한쪽 투영이 유한합니다")

    def blocks(part: FinitePlay) -> tuple[tuple[int, int], ...]:
        out = []
        for factor in factors(part, pivot):
            if split.side_of(factor.actions[0]) == 0:
                out.append((len(factor), 0))
            else:
                out.append((0, len(factor)))
        return tuple(out)

    head = blocks(prefix) if prefix.actions else ()
    loop = blocks(cycle)
    if not any(u for u, _ in loop) or not any(v for _, v in loop):
        raise StrategyError("cycle의 조각이 한쪽에만 속해 한쪽 투영이 유한합니다")
    return ShufflePattern(head, loop)

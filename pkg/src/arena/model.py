"""아레나와 플레이

상태·컨트롤러·액션·전이확률·색상으로 이루어진 유한 게임 그래프.
생성 이후에는 불변으로 취급한다.
"""

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Mapping, Optional

from src.core.exceptions import ArenaValidationError
from src.core.rational import format_rational
from src.payoff.colours import Colour, ColourKind


class Player(str, Enum):
    """플레이어 (P1 = 최대화, P2 = 최소화)"""
    P1 = "P1"
    P2 = "P2"

    @property
    def opponent(self) -> "Player":
        return Player.P2 if self is Player.P1 else Player.P1


@dataclass(frozen=True, eq=True)
class Arena:
    """유한 완전정보 확률 게임 아레나

    Attributes:
        states: 선언 순서의 상태 목록
        controller: 상태 → 플레이어
        actions: 액션 전체 집합 (선언 순서)
        available: 상태 → 사용 가능한 액션 (비어 있지 않음)
        transition: (상태, 액션) → {다음 상태: 확률}
        colouring: (상태, 액션) → 색상 토큰
    """
    states: tuple[str, ...]
    controller: Mapping[str, Player]
    actions: tuple[str, ...]
    available: Mapping[str, tuple[str, ...]]
    transition: Mapping[tuple[str, str], Mapping[str, Fraction]]
    colouring: Mapping[tuple[str, str], Colour]
    name: str = field(default="arena", compare=False)

    def __post_init__(self):
        validate_arena(self)

    # ------------------------------------------------------------------
    # 조회
    # ------------------------------------------------------------------

    def owner(self, state: str) -> Player:
        """상태를 제어하는 플레이어"""
        return self.controller[state]

    def states_of(self, player: Player) -> tuple[str, ...]:
        """플레이어가 제어하는 상태들 (선언 순서)"""
        return tuple(s for s in self.states if self.controller[s] is player)

    def pairs(self) -> Iterator[tuple[str, str]]:
        """(상태, 액션) 쌍을 선언 순서로"""
        for s in self.states:
            for a in self.available[s]:
                yield s, a

    def successors(self, state: str, action: str) -> dict[str, Fraction]:
        """양의 확률을 갖는 다음 상태 분포"""
        return {t: p for t, p in self.transition[(state, action)].items() if p > 0}

    def colour(self, state: str, action: str) -> Colour:
        return self.colouring[(state, action)]

    @property
    def colour_kind(self) -> ColourKind:
        """아레나 색상 종류 (검증에서 균일성 보장)"""
        first = next(iter(self.pairs()))
        return self.colouring[first].kind

    def fingerprint(self) -> str:
        """출력 문서의 SHA-256 (보고서용)"""
        from src.arena.parser import print_arena

        digest = hashlib.sha256(print_arena(self).encode("utf-8")).hexdigest()
        return digest[:16]

    def restrict(self, state: str, allowed: tuple[str, ...], name: Optional[str] = None) -> "Arena":
        """한 상태의 액션을 제한한 부분 아레나"""
        if not allowed or not set(allowed) <= set(self.available[state]):
            raise ArenaValidationError(
                f"{state}의 제한 액션 {allowed}은 사용 가능 집합의 비어 있지 않은 부분집합이어야 합니다"
            )
        kept = tuple(a for a in self.available[state] if a in allowed)
        available = dict(self.available)
        available[state] = kept
        transition = {k: v for k, v in self.transition.items() if k[0] != state or k[1] in kept}
        colouring = {k: v for k, v in self.colouring.items() if k[0] != state or k[1] in kept}
        return Arena(
            states=self.states,
            controller=dict(self.controller),
            actions=self.actions,
            available=available,
            transition=transition,
            colouring=colouring,
            name=name or f"{self.name}|{state}:{','.join(kept)}",
        )

    def __repr__(self) -> str:
        return f"<Arena(name={self.name}, states={len(self.states)})>"


def validate_arena(arena: Arena) -> None:
    """아레나 불변식 검사

    Raises:
        ArenaValidationError: 위반된 불변식을 메시지에 명시
    """
    if not arena.states:
        raise ArenaValidationError("상태가 하나 이상 필요합니다")
    if len(set(arena.states)) != len(arena.states):
        raise ArenaValidationError("상태 이름이 중복됩니다")

    state_set = set(arena.states)
    action_set = set(arena.actions)

    for s in arena.states:
        if s not in arena.controller:
            raise ArenaValidationError(f"상태 {s}의 컨트롤러가 없습니다")
        if not isinstance(arena.controller[s], Player):
            raise ArenaValidationError(f"상태 {s}의 컨트롤러가 P1/P2가 아닙니다")
        acts = arena.available.get(s, ())
        if not acts:
            raise ArenaValidationError(f"상태 {s}에 사용 가능한 액션이 없습니다")
        if len(set(acts)) != len(acts):
            raise ArenaValidationError(f"상태 {s}의 액션이 중복됩니다")
        unknown = set(acts) - action_set
        if unknown:
            raise ArenaValidationError(f"상태 {s}의 액션 {sorted(unknown)}이 액션 집합에 없습니다")

    expected_pairs = {(s, a) for s in arena.states for a in arena.available[s]}

    if set(arena.transition) != expected_pairs:
        extra = sorted(set(arena.transition) - expected_pairs)
        missing = sorted(expected_pairs - set(arena.transition))
        raise ArenaValidationError(
            f"전이는 사용 가능한 (상태, 액션) 쌍에서만 정의되어야 합니다 "
            f"(missing={missing}, extra={extra})"
        )

    if set(arena.colouring) != expected_pairs:
        missing = sorted(expected_pairs - set(arena.colouring))
        extra = sorted(set(arena.colouring) - expected_pairs)
        raise ArenaValidationError(
            f"색상은 (상태, 액션) 쌍에서 total이어야 합니다 (missing={missing}, extra={extra})"
        )

    for (s, a), dist in arena.transition.items():
        unknown = set(dist) - state_set
        if unknown:
            raise ArenaValidationError(f"({s}, {a}) 분포에 알 수 없는 상태 {sorted(unknown)}")
        for t, p in dist.items():
            if not isinstance(p, Fraction):
                raise ArenaValidationError(f"({s}, {a}) → {t} 확률이 유리수가 아닙니다: {p!r}")
            if not 0 <= p <= 1:
                raise ArenaValidationError(
                    f"({s}, {a}) → {t} 확률 {format_rational(p)}이 [0, 1] 밖입니다"
                )
        total = sum(dist.values(), Fraction(0))
        if total != 1:
            raise ArenaValidationError(
                f"distribution at ({s},{a}) sums to {format_rational(total)} (1이어야 함)"
            )

    kinds = {c.kind for c in arena.colouring.values()}
    if len(kinds) > 1:
        raise ArenaValidationError(
            f"색상 종류가 균일하지 않습니다: {sorted(k.value for k in kinds)}"
        )
    dims = {c.dimension for c in arena.colouring.values() if c.kind is ColourKind.VECTOR}
    if len(dims) > 1:
        raise ArenaValidationError(f"보상 벡터 차원이 균일하지 않습니다: {sorted(dims)}")


@dataclass(frozen=True)
class FinitePlay:
    """유한 플레이 s0 a1 s1 ... an sn

    가용성만 요구한다 (확률 0 플레이도 표현 가능).
    """
    states: tuple[str, ...]
    actions: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "actions", tuple(self.actions))
        if len(self.states) != len(self.actions) + 1:
            raise ArenaValidationError(
                f"플레이 길이 불일치: 상태 {len(self.states)}개, 액션 {len(self.actions)}개"
            )

    @property
    def source(self) -> str:
        return self.states[0]

    @property
    def target(self) -> str:
        return self.states[-1]

    def __len__(self) -> int:
        """스텝 수"""
        return len(self.actions)

    def steps(self) -> tuple[tuple[str, str], ...]:
        """(s_i, a_{i+1}) 쌍의 나열"""
        return tuple(zip(self.states, self.actions))

    def extend(self, action: str, state: str) -> "FinitePlay":
        return FinitePlay(self.states + (state,), self.actions + (action,))

    def concat(self, other: "FinitePlay") -> "FinitePlay":
        """target == other.source 인 두 플레이 이어붙이기"""
        if self.target != other.source:
            raise ArenaValidationError(f"이어붙일 수 없음: {self.target} != {other.source}")
        return FinitePlay(self.states + other.states[1:], self.actions + other.actions)

    def prefix(self, n: int) -> "FinitePlay":
        """처음 n 스텝"""
        return FinitePlay(self.states[: n + 1], self.actions[:n])

    def colours(self, arena: Arena) -> tuple[Colour, ...]:
        return tuple(arena.colour(s, a) for s, a in self.steps())

    def check(self, arena: Arena) -> None:
        """가용성 검사"""
        for s in self.states:
            if s not in arena.controller:
                raise ArenaValidationError(f"플레이의 상태 {s}가 아레나에 없습니다")
        for i, (s, a) in enumerate(self.steps()):
            if a not in arena.available[s]:
                raise ArenaValidationError(f"플레이 {i}번째 스텝: {a}는 {s}에서 사용 불가")

    def __str__(self) -> str:
        parts = [self.states[0]]
        for a, s in zip(self.actions, self.states[1:]):
            parts.extend([a, s])
        return " ".join(parts)


@dataclass(frozen=True)
class LassoPlay:
    """prefix · cycle^ω 로 표현한 무한 플레이"""
    prefix: FinitePlay
    cycle: FinitePlay

    def __post_init__(self):
        if not self.cycle.actions:
            raise ArenaValidationError("lasso의 cycle은 비어 있을 수 없습니다")
        if self.cycle.source != self.cycle.target:
            raise ArenaValidationError("lasso의 cycle은 출발 상태로 돌아와야 합니다")
        if self.cycle.source != self.prefix.target:
            raise ArenaValidationError("cycle의 출발 상태는 prefix의 끝과 같아야 합니다")

    @property
    def source(self) -> str:
        return self.prefix.source

    def check(self, arena: Arena) -> None:
        self.prefix.check(arena)
        self.cycle.check(arena)

    def unroll(self, repeats: int) -> FinitePlay:
        """prefix · cycle^repeats"""
        play = self.prefix
        for _ in range(repeats):
            play = play.concat(self.cycle)
        return play

    def __str__(self) -> str:
        return f"{self.prefix} ({self.cycle})^ω"

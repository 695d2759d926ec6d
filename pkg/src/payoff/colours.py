"""색상 토큰

아레나의 (상태, 액션) 쌍에 붙는 색상. 한 아레나 안에서는 한 종류만 쓴다.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, ClassVar, Union

from src.core.rational import format_rational, parse_rational


class ColourKind(str, Enum):
    """색상 종류"""
    REWARD = "reward"
    DISCOUNTED = "discounted"
    PRIORITY = "priority"
    VECTOR = "vector"
    LETTER = "letter"
    COUNTER = "counter"
    BUCHI = "buchi"


@dataclass(frozen=True)
class Reward:
    """즉시 보상"""
    value: Fraction
    kind: ClassVar[ColourKind] = ColourKind.REWARD

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class DiscountedReward:
    """보상-할인율 쌍 (0 <= discount < 1)"""
    reward: Fraction
    discount: Fraction
    kind: ClassVar[ColourKind] = ColourKind.DISCOUNTED

    def __post_init__(self):
        object.__setattr__(self, "reward", Fraction(self.reward))
        object.__setattr__(self, "discount", Fraction(self.discount))
        if not 0 <= self.discount < 1:
            raise ValueError(f"할인율은 [0, 1) 범위여야 합니다: {self.discount}")


@dataclass(frozen=True)
class Priority:
    """패리티 우선순위"""
    value: int
    kind: ClassVar[ColourKind] = ColourKind.PRIORITY

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise ValueError(f"우선순위는 정수여야 합니다: {self.value!r}")
        if self.value < 0:
            raise ValueError(f"우선순위는 0 이상이어야 합니다: {self.value}")


@dataclass(frozen=True)
class RewardVector:
    """k차원 보상 벡터"""
    values: tuple[Fraction, ...]
    kind: ClassVar[ColourKind] = ColourKind.VECTOR

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if not self.values:
            raise ValueError("보상 벡터는 비어 있을 수 없습니다")

    @property
    def dimension(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Letter:
    """유한 알파벳의 글자 ("" 은 빈 글자 ε)"""
    value: str
    kind: ClassVar[ColourKind] = ColourKind.LETTER


@dataclass(frozen=True)
class Increment:
    """카운터 증분"""
    value: int
    kind: ClassVar[ColourKind] = ColourKind.COUNTER

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise ValueError(f"카운터 증분은 정수여야 합니다: {self.value!r}")


@dataclass(frozen=True)
class BuchiReward:
    """보상 + Büchi 플래그"""
    reward: Fraction
    buchi: bool
    kind: ClassVar[ColourKind] = ColourKind.BUCHI

    def __post_init__(self):
        object.__setattr__(self, "reward", Fraction(self.reward))


Colour = Union[Reward, DiscountedReward, Priority, RewardVector, Letter, Increment, BuchiReward]


def _as_int(raw: Any) -> int:
    if isinstance(raw, bool):
        raise ValueError(f"정수가 아닌 값: {raw!r}")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str) and raw.strip().lstrip("+-").isdigit():
        return int(raw)
    raise ValueError(f"정수가 아닌 값: {raw!r}")


def parse_colour(kind: ColourKind, raw: Any) -> Colour:
    """게임 파일의 색상 필드를 토큰으로 변환

    Raises:
        ValueError: 종류에 맞지 않는 값
    """
    kind = ColourKind(kind)

    if kind is ColourKind.REWARD:
        return Reward(parse_rational(raw))
    if kind is ColourKind.DISCOUNTED:
        if not isinstance(raw, dict) or set(raw) != {"reward", "discount"}:
            raise ValueError(f"할인 색상은 {{reward, discount}} 이어야 합니다: {raw!r}")
        return DiscountedReward(parse_rational(raw["reward"]), parse_rational(raw["discount"]))
    if kind is ColourKind.PRIORITY:
        return Priority(_as_int(raw))
    if kind is ColourKind.VECTOR:
        if not isinstance(raw, list):
            raise ValueError(f"벡터 색상은 리스트여야 합니다: {raw!r}")
        return RewardVector(tuple(parse_rational(v) for v in raw))
    if kind is ColourKind.LETTER:
        if not isinstance(raw, str):
            raise ValueError(f"글자 색상은 문자열이어야 합니다: {raw!r}")
        return Letter(raw)
    if kind is ColourKind.COUNTER:
        return Increment(_as_int(raw))
    if kind is ColourKind.BUCHI:
        if not isinstance(raw, dict) or set(raw) != {"reward", "buchi"}:
            raise ValueError(f"Büchi 색상은 {{reward, buchi}} 이어야 합니다: {raw!r}")
        if not isinstance(raw["buchi"], bool):
            raise ValueError(f"buchi 플래그는 bool이어야 합니다: {raw['buchi']!r}")
        return BuchiReward(parse_rational(raw["reward"]), raw["buchi"])

    raise ValueError(f"알 수 없는 색상 종류: {kind}")


def colour_to_json(colour: Colour) -> Any:
    """토큰을 게임 파일 표현으로 (parse_colour의 역)"""
    if isinstance(colour, Reward):
        return format_rational(colour.value)
    if isinstance(colour, DiscountedReward):
        return {
            "reward": format_rational(colour.reward),
            "discount": format_rational(colour.discount),
        }
    if isinstance(colour, (Priority, Increment)):
        return colour.value
    if isinstance(colour, RewardVector):
        return [format_rational(v) for v in colour.values]
    if isinstance(colour, Letter):
        return colour.value
    if isinstance(colour, BuchiReward):
        return {"reward": format_rational(colour.reward), "buchi": colour.buchi}

    raise ValueError(f"알 수 없는 색상: {colour!r}")


def describe_colour(colour: Colour) -> str:
    """사람이 읽는 짧은 표기"""
    if isinstance(colour, Reward):
        return format_rational(colour.value)
    if isinstance(colour, DiscountedReward):
        return f"({format_rational(colour.reward)}, λ={format_rational(colour.discount)})"
    if isinstance(colour, (Priority, Increment)):
        return str(colour.value)
    if isinstance(colour, RewardVector):
        return "(" + ",".join(format_rational(v) for v in colour.values) + ")"
    if isinstance(colour, Letter):
        return colour.value or "ε"
    if isinstance(colour, BuchiReward):
        return f"{format_rational(colour.reward)}{'*' if colour.buchi else ''}"
    return repr(colour)

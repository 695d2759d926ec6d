"""궁극적 주기 단어 (lasso word)

prefix · cycle^ω 로 표현한 무한 단어. 글자는 색상 토큰이든 무엇이든 된다.
"""

import math
from dataclasses import dataclass
from typing import Generic, Iterable, Sequence, TypeVar

from src.core.exceptions import PayoffError

L = TypeVar("L")


@dataclass(frozen=True)
class LassoWord(Generic[L]):
    """prefix · cycle^ω"""
    prefix: tuple[L, ...]
    cycle: tuple[L, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise PayoffError("lasso 단어의 cycle은 비어 있을 수 없습니다")

    @classmethod
    def of(cls, prefix: Iterable[L], cycle: Iterable[L]) -> "LassoWord[L]":
        return cls(tuple(prefix), tuple(cycle))

    def letter(self, i: int) -> L:
        """i번째 글자 (0부터)"""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def unroll(self, n: int) -> list[L]:
        """처음 n 글자"""
        return [self.letter(i) for i in range(n)]

    def suffix(self, k: int) -> "LassoWord[L]":
        """처음 k 글자를 지운 단어"""
        if k <= len(self.prefix):
            return LassoWord(self.prefix[k:], self.cycle)
        shift = (k - len(self.prefix)) % len(self.cycle)
        return LassoWord((), self.cycle[shift:] + self.cycle[:shift])

    def rotate(self, r: int) -> "LassoWord[L]":
        """cycle만 회전 (다른 단어가 된다)"""
        r %= len(self.cycle)
        return LassoWord(self.prefix, self.cycle[r:] + self.cycle[:r])

    def pump(self, times: int = 2) -> "LassoWord[L]":
        """cycle → cycle^times (같은 단어)"""
        if times < 1:
            raise PayoffError(f"pump 횟수는 1 이상이어야 합니다: {times}")
        return LassoWord(self.prefix, self.cycle * times)

    def map(self, fn) -> "LassoWord":
        return LassoWord(tuple(fn(x) for x in self.prefix), tuple(fn(x) for x in self.cycle))

    def letters(self) -> set:
        return set(self.prefix) | set(self.cycle)

    def same_word(self, other: "LassoWord") -> bool:
        """무한 단어로서 같은지"""
        n = max(len(self.prefix), len(other.prefix)) + math.lcm(len(self.cycle), len(other.cycle))
        return self.unroll(n) == other.unroll(n)

    def __str__(self) -> str:
        head = " ".join(str(x) for x in self.prefix)
        loop = " ".join(str(x) for x in self.cycle)
        return f"{head} ({loop})^ω".strip()


def word(prefix: Sequence[L], cycle: Sequence[L]) -> LassoWord[L]:
    return LassoWord(tuple(prefix), tuple(cycle))

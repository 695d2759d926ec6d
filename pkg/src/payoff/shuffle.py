"""두 lasso 단어의 셔플 (u0 v0 u1 v1 ...)"""

import math
from dataclasses import dataclass
from typing import Any

from src.core.exceptions import ShuffleError
from src.payoff.words import LassoWord


@dataclass(frozen=True)
class ShufflePattern:
    """블록 길이 패턴

    prefix_blocks를 한 번 적용한 뒤 cycle_blocks를 무한히 반복한다.
    각 블록은 (u에서 가져올 글자 수, v에서 가져올 글자 수). 길이 0 허용.
    """
    prefix_blocks: tuple[tuple[int, int], ...]
    cycle_blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix_blocks", tuple(tuple(b) for b in self.prefix_blocks))
        object.__setattr__(self, "cycle_blocks", tuple(tuple(b) for b in self.cycle_blocks))
        for block in self.prefix_blocks + self.cycle_blocks:
            if len(block) != 2 or any(n < 0 for n in block):
                raise ShuffleError(f"블록은 음이 아닌 (u 길이, v 길이) 쌍이어야 합니다: {block}")
        if not self.cycle_blocks:
            raise ShuffleError("반복 블록이 비어 있습니다")

    @property
    def u_per_period(self) -> int:
        return sum(b[0] for b in self.cycle_blocks)

    @property
    def v_per_period(self) -> int:
        return sum(b[1] for b in self.cycle_blocks)

    @classmethod
    def alternating(cls, u_len: int = 1, v_len: int = 1) -> "ShufflePattern":
        return cls((), ((u_len, v_len),))

    def to_dict(self) -> dict[str, Any]:
        return {
            "prefix_blocks": [list(b) for b in self.prefix_blocks],
            "cycle_blocks": [list(b) for b in self.cycle_blocks],
        }

    def __str__(self) -> str:
        head = " ".join(f"{a}|{b}" for a, b in self.prefix_blocks)
        loop = " ".join(f"{a}|{b}" for a, b in self.cycle_blocks)
        return f"{head} ({loop})^ω".strip()


def shuffle(u: LassoWord, v: LassoWord, pattern: ShufflePattern) -> LassoWord:
    """패턴에 따라 u와 v를 섞은 lasso 단어

    u와 v의 모든 글자가 순서대로 정확히 한 번씩 나타난다.

    Raises:
        ShuffleError: 한쪽 단어의 글자를 끝내 배치하지 않는 패턴
    """
    per_u, per_v = pattern.u_per_period, pattern.v_per_period
    if per_u == 0:
        raise ShuffleError("패턴의 반복 구간이 u의 글자를 배치하지 않습니다")
    if per_v == 0:
        raise ShuffleError("패턴의 반복 구간이 v의 글자를 배치하지 않습니다")

    letters: list = []
    pos = [0, 0]
    words = (u, v)

    def emit(blocks: tuple[tuple[int, int], ...]) -> None:
        for block in blocks:
            for side in (0, 1):
                for _ in range(block[side]):
                    letters.append(words[side].letter(pos[side]))
                    pos[side] += 1

    emit(pattern.prefix_blocks)

    # 두 단어 모두 cycle 안에 들어갈 때까지 워밍업
    while pos[0] < len(u.prefix) or pos[1] < len(v.prefix):
        emit(pattern.cycle_blocks)
    head = len(letters)

    # 위치(mod cycle 길이)가 처음으로 되돌아오는 주기 수
    periods = math.lcm(
        len(u.cycle) // math.gcd(per_u, len(u.cycle)),
        len(v.cycle) // math.gcd(per_v, len(v.cycle)),
    )
    for _ in range(periods):
        emit(pattern.cycle_blocks)

    return LassoWord(tuple(letters[:head]), tuple(letters[head:]))

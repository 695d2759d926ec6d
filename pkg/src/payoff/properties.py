"""shift-invariance / submixing 반례 검사

둘 다 반박기다. 증인이 없다는 것은 증거일 뿐 증명이 아니다.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from src.core.rational import format_rational
from src.payoff.colours import colour_to_json
from src.payoff.evaluation import evaluate_lasso
from src.payoff.shuffle import ShufflePattern, shuffle
from src.payoff.specs import PayoffSpec
from src.payoff.words import LassoWord


def word_to_dict(word: LassoWord) -> dict[str, Any]:
    return {
        "prefix": [colour_to_json(c) for c in word.prefix],
        "cycle": [colour_to_json(c) for c in word.cycle],
    }


@dataclass(frozen=True)
class ShiftWitness:
    """f(word) != f(word의 shift번째 suffix)"""
    word: LassoWord
    shift: int
    value: Fraction
    shifted_value: Fraction

    def replay(self, spec: PayoffSpec) -> bool:
        return evaluate_lasso(spec, self.word) != evaluate_lasso(spec, self.word.suffix(self.shift))

    def to_dict(self) -> dict[str, Any]:
        return {
            "word": word_to_dict(self.word),
            "shift": self.shift,
            "value": format_rational(self.value),
            "shifted_value": format_rational(self.shifted_value),
        }


@dataclass(frozen=True)
class SubmixingWitness:
    """f(w) > max(f(u), f(v)), w = shuffle(u, v, pattern)"""
    u: LassoWord
    v: LassoWord
    pattern: ShufflePattern
    w: LassoWord
    fu: Fraction
    fv: Fraction
    fw: Fraction

    def replay(self, spec: PayoffSpec) -> bool:
        w = shuffle(self.u, self.v, self.pattern)
        return evaluate_lasso(spec, w) > max(evaluate_lasso(spec, self.u), evaluate_lasso(spec, self.v))

    def to_dict(self) -> dict[str, Any]:
        return {
            "u": word_to_dict(self.u),
            "v": word_to_dict(self.v),
            "pattern": self.pattern.to_dict(),
            "w": word_to_dict(self.w),
            "f_u": format_rational(self.fu),
            "f_v": format_rational(self.fv),
            "f_w": format_rational(self.fw),
        }


def check_shift_invariance(spec: PayoffSpec, word: LassoWord, shifts: int = 1) -> Optional[ShiftWitness]:
    """처음 shifts개의 suffix 중 값이 달라지는 첫 번째를 증인으로"""
    if shifts < 1:
        raise ValueError(f"shifts는 1 이상이어야 합니다: {shifts}")
    value = evaluate_lasso(spec, word)
    for k in range(1, shifts + 1):
        shifted = evaluate_lasso(spec, word.suffix(k))
        if shifted != value:
            return ShiftWitness(word, k, value, shifted)
    return None


def check_submixing(
    spec: PayoffSpec,
    u: LassoWord,
    v: LassoWord,
    pattern: ShufflePattern,
) -> Optional[SubmixingWitness]:
    """f(shuffle(u, v)) > max(f(u), f(v)) 이면 증인

    Raises:
        ShuffleError: shuffle에서 전파
    """
    w = shuffle(u, v, pattern)
    fu, fv, fw = evaluate_lasso(spec, u), evaluate_lasso(spec, v), evaluate_lasso(spec, w)
    if fw > max(fu, fv):
        return SubmixingWitness(u, v, pattern, w, fu, fv, fw)
    return None

"""lasso 단어 위의 정확한 페이오프 평가

모든 값은 Fraction. 카운터 조건과 승패 조건은 0/1 지표로 돌려준다.
"""

from fractions import Fraction
from typing import Any, Iterable, Sequence

from src.core.exceptions import ColourKindError, PayoffError
from src.payoff.colours import (
    BuchiReward,
    Colour,
    ColourKind,
    DiscountedReward,
    Increment,
    Priority,
    Reward,
    RewardVector,
    parse_colour,
)
from src.payoff.specs import (
    CounterLiminfNegInf,
    CounterLimsupPosInf,
    Discounted,
    GeneralizedMean,
    GeometricFirstOne,
    Limsup,
    Liminf,
    Mean,
    MeanCoBuchi,
    OptimisticGeneralizedMean,
    Parity,
    PayoffSpec,
    PositiveAverage,
    SuffixTarget,
)
from src.payoff.words import LassoWord

ONE = Fraction(1)
ZERO = Fraction(0)


def check_colour_kind(spec: PayoffSpec, colours: Iterable[Colour]) -> None:
    """모든 글자가 페이오프가 요구하는 색상 종류인지 검사

    Raises:
        ColourKindError
    """
    for c in colours:
        if c.kind is not spec.colour_kind:
            raise ColourKindError(
                f"{spec}는 {spec.colour_kind.value} 색상을 요구하지만 {c.kind.value} 색상이 주어졌습니다"
            )
        if isinstance(spec, (GeneralizedMean, OptimisticGeneralizedMean)) and c.dimension != spec.k:
            raise ColourKindError(f"{spec}는 {spec.k}차원 벡터를 요구합니다 (실제 {c.dimension})")


def colour_word(kind: ColourKind, prefix: Sequence[Any], cycle: Sequence[Any]) -> LassoWord[Colour]:
    """원시 값으로 색상 단어 만들기 (parse_colour 규칙)"""
    return LassoWord(
        tuple(parse_colour(kind, x) for x in prefix),
        tuple(parse_colour(kind, x) for x in cycle),
    )


def _mean(values: Sequence[Fraction]) -> Fraction:
    return sum(values, ZERO) / len(values)


def _indicator(condition: bool) -> Fraction:
    return ONE if condition else ZERO


def _discounted(word: LassoWord[DiscountedReward]) -> Fraction:
    def series(letters: Sequence[DiscountedReward]) -> tuple[Fraction, Fraction]:
        total, weight = ZERO, ONE
        for c in letters:
            total += weight * c.reward
            weight *= c.discount
        return total, weight

    head, head_weight = series(word.prefix)
    loop, loop_weight = series(word.cycle)
    return head + head_weight * loop / (1 - loop_weight)


def _geometric_first_one(word: LassoWord[Reward]) -> Fraction:
    # 위치 i는 0부터: 첫 글자가 1이면 1 - 2^0 = 0
    for i, c in enumerate(word.prefix + word.cycle):
        if c.value == 1:
            return 1 - Fraction(1, 2 ** i)
    return ZERO


def evaluate_lasso(spec: PayoffSpec, word: LassoWord[Colour]) -> Fraction:
    """lasso 단어의 정확한 페이오프

    Args:
        spec: 페이오프 함수
        word: 색상 lasso 단어

    Returns:
        Fraction 값 (조건형 페이오프는 0/1)

    Raises:
        ColourKindError: 색상 종류 불일치
    """
    check_colour_kind(spec, word.prefix + word.cycle)
    cycle = word.cycle

    if isinstance(spec, Mean):
        return _mean([c.value for c in cycle])
    if isinstance(spec, Discounted):
        return _discounted(word)
    if isinstance(spec, Parity):
        return _indicator(max(c.value for c in cycle) % 2 == 1)
    if isinstance(spec, Limsup):
        return max(c.value for c in cycle)
    if isinstance(spec, Liminf):
        return min(c.value for c in cycle)
    if isinstance(spec, PositiveAverage):
        return _indicator(_mean([c.value for c in cycle]) > 0)
    if isinstance(spec, CounterLimsupPosInf):
        # 합이 0인 cycle은 부분합이 유계
        return _indicator(sum(c.value for c in cycle) > 0)
    if isinstance(spec, CounterLiminfNegInf):
        return _indicator(sum(c.value for c in cycle) < 0)
    if isinstance(spec, GeneralizedMean):
        means = [_mean([c.values[i] for c in cycle]) for i in range(spec.k)]
        return _indicator(all(m > 0 for m in means))
    if isinstance(spec, OptimisticGeneralizedMean):
        means = [_mean([c.values[i] for c in cycle]) for i in range(spec.k)]
        return _indicator(any(m >= 0 for m in means))
    if isinstance(spec, MeanCoBuchi):
        if any(c.buchi for c in cycle):
            return -spec.penalty
        return _mean([c.reward for c in cycle])
    if isinstance(spec, SuffixTarget):
        # p·a b² a b⁴ ··· 는 궁극적 주기가 아니므로 어떤 lasso와도 suffix를 공유하지 않는다
        return ONE
    if isinstance(spec, GeometricFirstOne):
        return _geometric_first_one(word)

    raise PayoffError(f"평가할 수 없는 페이오프: {spec!r}")


def evaluate_prefix(
    spec: PayoffSpec,
    letters: Sequence[Colour],
    margin: Fraction = Fraction(1, 20),
) -> float:
    """유한 접두어 위에서 정의식을 직접 계산 (lasso 평가의 교차 검증용)

    Mean은 Cesàro 평균, Limsup/Liminf은 뒤쪽 절반의 최대/최소,
    Parity는 뒤쪽 절반의 최대 우선순위 홀짝, PositiveAverage는 Cesàro 평균 > margin.
    margin은 유한 구간의 편향(O(1/n))보다 크고 0이 아닌 cycle 평균보다 작아야 한다.
    """
    check_colour_kind(spec, letters)
    tail = letters[len(letters) // 2:]

    if isinstance(spec, Mean):
        return float(sum((c.value for c in letters), ZERO) / len(letters))
    if isinstance(spec, Limsup):
        return float(max(c.value for c in tail))
    if isinstance(spec, Liminf):
        return float(min(c.value for c in tail))
    if isinstance(spec, Parity):
        return float(max(c.value for c in tail) % 2)
    if isinstance(spec, PositiveAverage):
        return float(sum((c.value for c in letters), ZERO) / len(letters) > margin)
    if isinstance(spec, Discounted):
        total, weight = 0.0, 1.0
        for c in letters:
            total += weight * float(c.reward)
            weight *= float(c.discount)
        return total

    raise PayoffError(f"접두어 평가를 지원하지 않는 페이오프: {spec}")
